#include "gplab/hydro.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gplab/spectral.hpp"

namespace gplab::hydro {

Observables observables(const Field& u, double eps) {
    const Grid& g = u.grid();
    Observables obs;
    obs.density = Field::zeros(g, FieldKind::real_valued);
    kernels::aligned_vector<double> rho(u.size());
    kernels::abs2(rho.data(), u.data(), u.size());
    for (std::size_t i = 0; i < u.size(); ++i) obs.density[i] = rho[i];

    for (int ax = 0; ax < g.dim; ++ax) {
        const Field du = spectral::gradient_axis(u, ax);
        Field j = Field::zeros(g, FieldKind::real_valued);
        const cplx* up = u.data();
        const cplx* dp = du.data();
        for (std::size_t i = 0; i < u.size(); ++i)
            j[i] = eps * (up[i].real() * dp[i].imag() - up[i].imag() * dp[i].real());
        obs.momentum.push_back(std::move(j));
    }
    return obs;
}

double modulated_energy(const Field& u, const Field& rho, const Field& phi, double eps) {
    require_same_grid(u, rho);
    require_same_grid(u, phi);
    if (!(eps > 0.0)) throw InvalidArgumentError("modulated energy needs eps > 0");
    const Grid& g = u.grid();

    double acc = 0.0;
    for (int ax = 0; ax < g.dim; ++ax) {
        const Field du = spectral::gradient_axis(u, ax);
        const Field dphi = spectral::gradient_axis(phi, ax);
        const cplx* up = u.data();
        const cplx* dp = du.data();
        const cplx* pp = dphi.data();
        for (std::size_t i = 0; i < u.size(); ++i) {
            const cplx r = eps * dp[i] - cplx(0.0, 1.0) * up[i] * pp[i].real();
            acc += std::norm(r);
        }
    }
    const cplx* up = u.data();
    const cplx* rp = rho.data();
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = std::norm(up[i]) - rp[i].real();
        acc += d * d;
    }
    return acc * g.cell_volume() / (eps * eps);
}

namespace {

HydroSample measure(double t, const Field& u, const phase_amplitude::Trajectory& limit,
                    double eps) {
    const Grid& g = u.grid();
    const Field phi = limit.phi(t);
    const Field a = limit.a(t);

    Field rho = Field::zeros(g, FieldKind::real_valued);
    for (std::size_t i = 0; i < a.size(); ++i) rho[i] = std::norm(a[i]);

    HydroSample s;
    s.t = t;
    s.menergy = modulated_energy(u, rho, phi, eps);

    const Observables obs = observables(u, eps);
    double dacc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = obs.density[i].real() - rho[i].real();
        dacc += d * d;
    }
    s.density_err_l2 = std::sqrt(g.cell_volume() * dacc);

    std::vector<Field> jlim;
    for (int ax = 0; ax < g.dim; ++ax) jlim.push_back(spectral::gradient_axis(phi, ax));
    double macc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double sq = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) {
            const auto axi = std::size_t(ax);
            const double d =
                obs.momentum[axi][i].real() - rho[i].real() * jlim[axi][i].real();
            sq += d * d;
        }
        macc += std::sqrt(sq);
    }
    s.momentum_err_l1 = g.cell_volume() * macc;
    return s;
}

}  // namespace

HydroRecord track_hydro_limit(const Field& u0, const schrodinger::EpsProblem& prob,
                              const phase_amplitude::Trajectory& limit, double t_end, double dt,
                              int n_samples) {
    if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
    if (limit.eps() != 0.0)
        throw InvalidArgumentError("hydro tracking expects the eps = 0 limit trajectory");
    if (t_end > limit.t_end() + 1e-9 * std::max(1.0, limit.t_end()))
        throw InvalidArgumentError("t_end exceeds the stored limit trajectory");

    // steps divisible by n_samples so observer times hit samples exactly
    const double h0 = schrodinger::resolve_dt(t_end, dt);
    auto steps = std::llround(t_end / h0);
    steps = ((steps + n_samples - 1) / n_samples) * n_samples;
    const double h = t_end / double(steps);
    const auto cadence = int(steps / n_samples);

    HydroRecord rec;
    rec.eps = prob.eps;
    schrodinger::SimOptions opt;
    opt.t_end = t_end;
    opt.dt = h;
    opt.sample_every = cadence;
    opt.observer = [&](double t, const Field& u) {
        rec.samples.push_back(measure(t, u, limit, prob.eps));
    };
    schrodinger::simulate(u0, prob, opt);
    return rec;
}

double gronwall_rate(const HydroRecord& rec, double bound_factor) {
    if (rec.samples.empty()) throw InvalidArgumentError("empty hydro record");
    const double base = bound_factor * (rec.samples.front().menergy + 1.0);
    double c = 0.0;
    for (const auto& s : rec.samples) {
        if (s.t <= 0.0) continue;
        if (s.menergy > base) c = std::max(c, std::log(s.menergy / base) / s.t);
    }
    return c;
}

bool gronwall_holds(const HydroRecord& rec, double C, double bound_factor) {
    if (rec.samples.empty()) throw InvalidArgumentError("empty hydro record");
    const double base = bound_factor * (rec.samples.front().menergy + 1.0);
    for (const auto& s : rec.samples)
        if (s.menergy > base * std::exp(C * s.t) * (1.0 + 1e-9)) return false;
    return true;
}

void write_record_csv(const HydroRecord& rec, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path);
    os << "t,E_eps,density_err_L2,momentum_err_L1\n";
    char line[128];
    for (const auto& s : rec.samples) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g", s.t, s.menergy,
                      s.density_err_l2, s.momentum_err_l1);
        os << line << "\n";
    }
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace gplab::hydro
