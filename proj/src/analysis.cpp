#include "gplab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gplab/phase_amplitude.hpp"
#include "gplab/schrodinger.hpp"

namespace gplab::analysis {

namespace {

enum class WavePart { value, velocity };

Field wave_eval(const Field& theta0, const Field& vel0, const Field* source, double t,
                WavePart part) {
    require_same_grid(theta0, vel0);
    if (source) require_same_grid(theta0, *source);
    const Grid& g = theta0.grid();

    const auto c0 = spectral::to_coeffs(theta0);
    const auto v0 = spectral::to_coeffs(vel0);
    kernels::aligned_vector<cplx> sc;
    if (source) sc = spectral::to_coeffs(*source);

    kernels::aligned_vector<cplx> out(g.size());
    auto mode = [&](std::size_t idx, double k2) {
        const cplx s = source ? sc[idx] : cplx(0.0);
        if (k2 > 0.0) {
            const double k = std::sqrt(k2);
            const double c = std::cos(k * t), sn = std::sin(k * t);
            if (part == WavePart::value)
                out[idx] = c0[idx] * c + v0[idx] * (sn / k) + s * ((1.0 - c) / k2);
            else
                out[idx] = -c0[idx] * (k * sn) + v0[idx] * c + s * (sn / k);
        } else {
            if (part == WavePart::value)
                out[idx] = c0[idx] + v0[idx] * t + s * (0.5 * t * t);
            else
                out[idx] = v0[idx] + s * t;
        }
    };
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            const double k = g.wavenumber(i);
            mode(std::size_t(i), k * k);
        }
    } else {
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = g.wavenumber(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double kx = g.wavenumber(ix);
                mode(g.index(ix, iy), kx * kx + ky * ky);
            }
        }
    }
    return spectral::from_coeffs(g, out).take_real(1e-9);
}

}  // namespace

Field wave_solve(const Field& theta0, const Field& vel0, const Field* source, double t) {
    return wave_eval(theta0, vel0, source, t, WavePart::value);
}

Field wave_velocity(const Field& theta0, const Field& vel0, const Field* source, double t) {
    return wave_eval(theta0, vel0, source, t, WavePart::velocity);
}

std::vector<double> error_norms(const Field& u, const Field& ref,
                                const std::vector<spectral::NormKind>& kinds) {
    require_same_grid(u, ref);
    Field diff = u;
    diff -= ref;
    std::vector<double> out;
    out.reserve(kinds.size());
    for (const auto& k : kinds) out.push_back(spectral::norm(diff, k));
    return out;
}

SlopeFit fit_slope(const std::vector<double>& eps, const std::vector<double>& err) {
    if (eps.size() != err.size()) throw InvalidArgumentError("eps/err size mismatch");
    if (eps.size() < 3) throw InvalidArgumentError("slope fit needs at least 3 points");
    for (double e : eps)
        if (!(e > 0.0)) throw InvalidArgumentError("eps must be positive");
    for (double v : err) {
        if (v < 0.0 || !std::isfinite(v)) throw InvalidArgumentError("errors must be finite and >= 0");
        if (v == 0.0) return SlopeFit{0.0, 0.0, true};
    }

    const auto n = double(eps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double x = std::log(eps[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14) throw InvalidArgumentError("degenerate eps list");
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    const double icpt = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double r = std::log(err[i]) - (icpt + fit.slope * std::log(eps[i]));
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

void ConvergenceReport::validate() const {
    if (epsilons.size() < 2) throw InvalidArgumentError("report needs >= 2 epsilons");
    for (std::size_t i = 1; i < epsilons.size(); ++i)
        if (!(epsilons[i] < epsilons[i - 1]))
            throw InvalidArgumentError("epsilons must be strictly decreasing");
    if (errors.size() != epsilons.size()) throw InvalidArgumentError("error row count mismatch");
    for (const auto& row : errors) {
        if (row.size() != norms.size()) throw InvalidArgumentError("error column count mismatch");
        for (double v : row)
            if (!(v > 0.0)) throw InvalidArgumentError("errors must be positive");
    }
}

ConvergenceReport make_report(std::vector<double> epsilons, std::vector<std::string> norms,
                              std::vector<std::vector<double>> errors) {
    ConvergenceReport rep;
    rep.epsilons = std::move(epsilons);
    rep.norms = std::move(norms);
    rep.errors = std::move(errors);
    rep.validate();
    for (std::size_t j = 0; j < rep.norms.size(); ++j) {
        std::vector<double> col;
        col.reserve(rep.epsilons.size());
        for (const auto& row : rep.errors) col.push_back(row[j]);
        rep.fits.push_back(fit_slope(rep.epsilons, col));
    }
    return rep;
}

void write_report_csv(const ConvergenceReport& rep, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path);
    os << "epsilon";
    for (const auto& n : rep.norms) os << "," << n;
    os << "\n";
    char buf[64];
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", rep.epsilons[i]);
        os << buf;
        for (double v : rep.errors[i]) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            os << buf;
        }
        os << "\n";
    }
    os << "slope";
    for (const auto& f : rep.fits) {
        std::snprintf(buf, sizeof buf, ",%.17g", f.slope);
        os << buf;
    }
    os << "\nresidual";
    for (const auto& f : rep.fits) {
        std::snprintf(buf, sizeof buf, ",%.17g", f.residual);
        os << buf;
    }
    os << "\n";
    if (!os) throw IoError("write failed: " + path);
}

InstabilityRecord instability_experiment(const Field& a0, const Field& a1, const Field& phi0,
                                         const Nonlinearity& nl, double alpha,
                                         const std::vector<double>& eps_list,
                                         const InstabilityOptions& opt) {
    require_same_grid(a0, a1);
    require_same_grid(a0, phi0);
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw InvalidArgumentError("alpha must lie in (0,1)");
    if (eps_list.empty()) throw InvalidArgumentError("eps list is empty");
    const Grid& g = a0.grid();

    InstabilityRecord rec;
    rec.alpha = alpha;
    for (double eps : eps_list) {
        if (!(eps > 0.0) || eps > 1.0) throw InvalidArgumentError("eps must lie in (0, 1]");
        InstabilityPoint pt;
        pt.eps = eps;
        pt.delta = std::pow(eps, alpha);
        pt.t_eps = std::pow(eps, 1.0 - alpha);
        pt.initial_dist = pt.delta * std::sqrt(kernels::max_abs2(a1.data(), a1.size()));

        Field pert = a1;
        pert *= pt.delta;
        Field b0 = a0;
        b0 += pert;
        const Field u0 = phase_amplitude::reconstruct(a0, phi0, eps);
        const Field v0 = phase_amplitude::reconstruct(b0, phi0, eps);

        schrodinger::EpsProblem prob;
        prob.grid = g;
        prob.eps = eps;
        prob.nl = nl;
        schrodinger::SimOptions sim;
        sim.t_end = pt.t_eps;
        sim.dt = eps * opt.dt0;
        sim.sample_every = 0;
        const Field u = schrodinger::simulate(u0, prob, sim);
        const Field v = schrodinger::simulate(v0, prob, sim);

        Field diff = u;
        diff -= v;
        pt.final_dist = spectral::norm(diff, spectral::NormKind::linf());
        pt.ratio = pt.final_dist / pt.initial_dist;

        // leading-order mechanism: v ~ u exp(-2 i t delta Re(conj(a0) a1)/eps)
        Field shift = Field::zeros(g, FieldKind::real_valued);
        const double amp = -2.0 * pt.t_eps * pt.delta / eps;
        for (std::size_t i = 0; i < a0.size(); ++i) {
            const cplx p = std::conj(a0[i]) * a1[i];
            shift[i] = amp * p.real();
        }
        Field predicted = u;
        const std::size_t n = predicted.size();
        kernels::aligned_vector<double> ph(n);
        kernels::aligned_vector<cplx> factor(n);
        for (std::size_t i = 0; i < n; ++i) ph[i] = shift[i].real();
        kernels::expi(factor.data(), ph.data(), n);
        kernels::cmul(predicted.data(), factor.data(), n);
        Field resid = v;
        resid -= predicted;
        pt.factor_residual = spectral::norm(resid, spectral::NormKind::linf());

        rec.points.push_back(pt);
    }
    return rec;
}

void write_instability_csv(const InstabilityRecord& rec, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path);
    os << "eps,delta,t_eps,initial_dist,final_dist,ratio,factor_residual\n";
    char line[192];
    for (const auto& p : rec.points) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", p.eps,
                      p.delta, p.t_eps, p.initial_dist, p.final_dist, p.ratio, p.factor_residual);
        os << line << "\n";
    }
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace gplab::analysis
