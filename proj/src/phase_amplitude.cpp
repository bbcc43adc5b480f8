#include "gplab/phase_amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "gplab/spectral.hpp"

namespace gplab::phase_amplitude {

namespace {

struct PAState {
    Field phi, a;
};

PAState lin_comb(const PAState& s, const PAState& k, double h) {
    PAState out = s;
    Field tmp = k.phi;
    tmp *= h;
    out.phi += tmp;
    tmp = k.a;
    tmp *= h;
    out.a += tmp;
    return out;
}

// Nonlinear right side; eps == 0 integrates the limit system and skips the
// dispersive transform entirely.
PAState grenier_rhs(const PAState& s, double eps, const Nonlinearity& nl, const Field* V) {
    const Grid& g = s.phi.grid();
    const auto gphi = spectral::gradient(s.phi);
    const Field lap_phi = spectral::laplacian(s.phi);
    const auto ga = spectral::gradient(s.a);
    const bool dispersive = eps != 0.0;
    Field lap_a = dispersive ? spectral::laplacian(s.a) : Field();

    PAState d{Field::zeros(g, FieldKind::real_valued), Field::zeros(g, FieldKind::complex_valued)};
    const std::size_t n = s.phi.size();
    const cplx* ap = s.a.data();
    const cplx* lp = lap_phi.data();
    const cplx* vp = V ? V->data() : nullptr;
    for (std::size_t i = 0; i < n; ++i) {
        double grad2 = 0.0;
        cplx adv = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) {
            const double gp = gphi[std::size_t(ax)][i].real();
            grad2 += gp * gp;
            adv += gp * ga[std::size_t(ax)][i];
        }
        double dphi = -(0.5 * grad2 + nl.f(std::norm(ap[i])));
        if (vp) dphi -= vp[i].real();
        d.phi[i] = dphi;
        cplx da = -adv - 0.5 * ap[i] * lp[i].real();
        if (dispersive) da += cplx(0.0, 0.5 * eps) * lap_a[i];
        d.a[i] = da;
    }
    return d;
}

double max_grad_abs(const Field& phi) {
    double m = 0.0;
    for (const Field& gax : spectral::gradient(phi))
        m = std::max(m, std::sqrt(kernels::max_abs2(gax.data(), gax.size())));
    return m;
}

// Spatial jet of the limit trajectory reused across the two midpoint stages.
struct Jet {
    Field phi, a, lap_phi, lap_a;
    std::vector<Field> gphi, ga;
};

struct JetCache {
    const Trajectory* lim = nullptr;
    double t = std::numeric_limits<double>::quiet_NaN();
    Jet jet;

    const Jet& at(double tt) {
        if (!(tt == t)) {
            jet.phi = lim->phi(tt);
            jet.a = lim->a(tt);
            jet.gphi = spectral::gradient(jet.phi);
            jet.lap_phi = spectral::laplacian(jet.phi);
            jet.ga = spectral::gradient(jet.a);
            jet.lap_a = spectral::laplacian(jet.a);
            t = tt;
        }
        return jet;
    }
};

PAState corrector_rhs(const Jet& j, const PAState& s, const Nonlinearity& nl) {
    const Grid& g = s.phi.grid();
    const auto gphi1 = spectral::gradient(s.phi);
    const Field lap_phi1 = spectral::laplacian(s.phi);
    const auto ga1 = spectral::gradient(s.a);

    PAState d{Field::zeros(g, FieldKind::real_valued), Field::zeros(g, FieldKind::complex_valued)};
    const std::size_t n = s.phi.size();
    const cplx* ap = j.a.data();
    const cplx* a1p = s.a.data();
    for (std::size_t i = 0; i < n; ++i) {
        double adv_phi = 0.0;
        cplx adv_a = 0.0;
        for (int ax = 0; ax < g.dim; ++ax) {
            const auto axi = std::size_t(ax);
            const double gp = j.gphi[axi][i].real();
            const double gp1 = gphi1[axi][i].real();
            adv_phi += gp * gp1;
            adv_a += gp * ga1[axi][i] + gp1 * j.ga[axi][i];
        }
        const double rho = std::norm(ap[i]);
        const double coupling = 2.0 * nl.fprime(rho) * (ap[i].real() * a1p[i].real() + ap[i].imag() * a1p[i].imag());
        d.phi[i] = -(adv_phi + coupling);
        d.a[i] = -adv_a - 0.5 * a1p[i] * j.lap_phi[i].real() - 0.5 * ap[i] * lap_phi1[i].real() +
                 cplx(0.0, 0.5) * j.lap_a[i];
    }
    return d;
}

void check_params(const PhaseAmpParams& p) {
    if (!(p.t_end > 0.0) || !(p.dt > 0.0)) throw ConfigError("t_end and dt must be positive");
    if (p.store_every < 1) throw ConfigError("store_every must be >= 1");
    if (!(p.delta_min > 0.0)) throw ConfigError("delta_min must be positive");
    if (!(p.blowup_factor > 1.0)) throw ConfigError("blowup_factor must exceed 1");
}

}  // namespace

double hyperbolicity_margin(const Field& a, const Nonlinearity& nl) {
    if (nl.kind == Nonlinearity::Kind::cubic) return 1.0;
    kernels::aligned_vector<double> rho(a.size());
    kernels::abs2(rho.data(), a.data(), a.size());
    // f' is increasing in rho for the cubic-quintic law, so the minimum sits
    // at the minimum density.
    return nl.fprime(kernels::min_value(rho.data(), rho.size()));
}

double suggested_dt(const Grid& g, double eps, double speed_bound) {
    const double kmax = M_PI * double(g.n) / g.period;
    const double scale = 0.5 * eps * kmax * kmax + std::abs(speed_bound) * kmax;
    return 2.5 / std::max(scale, 1e-12);
}

std::size_t Trajectory::segment(double t) const {
    const double tol = 1e-9 * std::max(1.0, t_end());
    if (t < -tol || t > t_end() + tol) {
        std::ostringstream os;
        os << "time " << t << " outside stored range [0, " << t_end() << "]";
        throw TimeNotSampledError(os.str());
    }
    const double tc = std::clamp(t, 0.0, t_end());
    auto it = std::upper_bound(times_.begin(), times_.end(), tc);
    auto i = std::size_t(std::distance(times_.begin(), it));
    i = (i == 0) ? 0 : i - 1;
    if (i + 1 >= times_.size()) i = times_.size() - 2;
    return i;
}

Field Trajectory::interp(const std::vector<Field>& y, const std::vector<Field>& d, double t) const {
    if (times_.size() == 1) return y.front();
    const std::size_t i = segment(t);
    const double h = times_[i + 1] - times_[i];
    const double th = std::clamp((t - times_[i]) / h, 0.0, 1.0);
    const double th2 = th * th, th3 = th2 * th;
    const double c0 = 2 * th3 - 3 * th2 + 1;
    const double c1 = (th3 - 2 * th2 + th) * h;
    const double c2 = -2 * th3 + 3 * th2;
    const double c3 = (th3 - th2) * h;

    Field out = y[i];
    out *= c0;
    Field tmp = d[i];
    tmp *= c1;
    out += tmp;
    tmp = y[i + 1];
    tmp *= c2;
    out += tmp;
    tmp = d[i + 1];
    tmp *= c3;
    out += tmp;
    return out;
}

Field Trajectory::phi(double t) const { return interp(phi_, dphi_, t); }
Field Trajectory::a(double t) const { return interp(a_, da_, t); }

namespace {

// Shared RK4 driver. rhs(t, state) -> state derivative; guard(t, state) may
// throw; push(t, state, deriv) stores a trajectory node. Node states keep
// their derivative for Hermite dense output; the node derivative doubles as
// the next step's first stage.
template <class Rhs, class Guard, class Push>
void integrate(PAState s, const PhaseAmpParams& p, Rhs&& rhs, Guard&& guard, Push&& push) {
    const auto steps = std::max<long long>(1, std::llround(std::ceil(p.t_end / p.dt - 1e-12)));
    const double h = p.t_end / double(steps);

    PAState d0 = rhs(0.0, s);
    push(0.0, s, d0);

    bool have_k1 = true;
    PAState k1 = std::move(d0);
    for (long long i = 0; i < steps; ++i) {
        const double t0 = double(i) * h;
        const double t1 = double(i + 1) * h;
        if (!have_k1) k1 = rhs(t0, s);
        const PAState k2 = rhs(t0 + 0.5 * h, lin_comb(s, k1, 0.5 * h));
        const PAState k3 = rhs(t0 + 0.5 * h, lin_comb(s, k2, 0.5 * h));
        const PAState k4 = rhs(t1, lin_comb(s, k3, h));

        Field acc = k1.phi;
        acc += k4.phi;
        Field two = k2.phi;
        two += k3.phi;
        two *= 2.0;
        acc += two;
        acc *= h / 6.0;
        s.phi += acc;

        acc = k1.a;
        acc += k4.a;
        two = k2.a;
        two += k3.a;
        two *= 2.0;
        acc += two;
        acc *= h / 6.0;
        s.a += acc;

        guard(t1, s);

        const bool is_node = ((i + 1) % p.store_every == 0) || (i + 1 == steps);
        if (is_node) {
            k1 = rhs(t1, s);
            push(t1, s, k1);
            have_k1 = true;
        } else {
            have_k1 = false;
        }
    }
}

}  // namespace

Trajectory solve_grenier(const GrenierInput& in, const PhaseAmpParams& p) {
    check_params(p);
    require_same_grid(in.a0, in.phi0);
    if (in.phi0.kind() != FieldKind::real_valued)
        throw InvalidArgumentError("phi0 must be real-valued");
    if (in.eps < 0.0) throw InvalidArgumentError("eps must be >= 0");

    const Field* V = nullptr;
    if (in.potential.size() > 0) {
        require_same_grid(in.potential, in.a0);
        if (in.potential.kind() != FieldKind::real_valued)
            throw InvalidArgumentError("potential must be real-valued");
        V = &in.potential;
    }

    const double margin0 = hyperbolicity_margin(in.a0, in.nl);
    if (margin0 < p.delta_min) {
        std::ostringstream os;
        os << "initial data outside the hyperbolic region: min f'(|a0|^2) = " << margin0
           << " < delta_min = " << p.delta_min;
        if (in.nl.kind == Nonlinearity::Kind::cubic_quintic && in.nl.lambda < 0.0) {
            kernels::aligned_vector<double> rho(in.a0.size());
            kernels::abs2(rho.data(), in.a0.data(), in.a0.size());
            const double rmin = kernels::min_value(rho.data(), rho.size());
            os << "; lambda = " << in.nl.lambda << " requires min |a0|^2 >= (delta_min + |lambda|)/2 = "
               << 0.5 * (p.delta_min - in.nl.lambda) << ", got min |a0|^2 = " << rmin;
        }
        throw EllipticRegionError(os.str());
    }

    Trajectory out;
    out.grid_ = in.a0.grid();
    out.eps_ = in.eps;
    out.nl_ = in.nl;
    out.min_margin_ = margin0;

    // Smooth-window proxy: |a| or |grad phi| growing past blowup_factor times
    // the initial scale means the classical solution is no longer trusted.
    const double scale0 = std::max({1.0, std::sqrt(kernels::max_abs2(in.a0.data(), in.a0.size())),
                                    max_grad_abs(in.phi0)});
    const double cap = p.blowup_factor * scale0;
    auto guard = [&](double t, const PAState& s) {
        if (!s.phi.is_finite() || !s.a.is_finite())
            throw NonFiniteFieldError("phase-amplitude state became non-finite", t);
        if (std::sqrt(kernels::max_abs2(s.a.data(), s.a.size())) > cap ||
            max_grad_abs(s.phi) > cap)
            throw SmoothWindowError("amplitude or velocity exceeded the smooth-window cap", t);
        const double m = hyperbolicity_margin(s.a, out.nl_);
        out.min_margin_ = std::min(out.min_margin_, m);
        if (m < 0.5 * p.delta_min) {
            std::ostringstream os;
            os << "hyperbolicity margin " << m << " fell below delta_min/2 = " << 0.5 * p.delta_min
               << " at t = " << t;
            throw EllipticRegionError(os.str());
        }
    };
    auto rhs = [&](double, const PAState& s) { return grenier_rhs(s, in.eps, in.nl, V); };

    auto push = [&out](double t, const PAState& s, const PAState& d) {
        out.times_.push_back(t);
        out.phi_.push_back(s.phi);
        out.a_.push_back(s.a);
        out.dphi_.push_back(d.phi);
        out.da_.push_back(d.a);
    };

    Field phi0 = in.phi0;
    Field a0 = in.a0;
    a0.mark_complex();
    integrate(PAState{std::move(phi0), std::move(a0)}, p, rhs, guard, push);
    return out;
}

Trajectory solve_corrector(const Trajectory& limit, const Field& a1_init, const PhaseAmpParams& p) {
    check_params(p);
    if (limit.eps() != 0.0)
        throw InvalidArgumentError("corrector expects the eps = 0 limit trajectory");
    if (a1_init.grid() != limit.grid()) throw GridMismatchError("a1 grid mismatch");
    if (p.t_end > limit.t_end() + 1e-9 * std::max(1.0, limit.t_end()))
        throw InvalidArgumentError("corrector horizon exceeds limit trajectory");

    Trajectory out;
    out.grid_ = limit.grid();
    out.eps_ = 0.0;
    out.nl_ = limit.nonlinearity();
    out.min_margin_ = limit.min_margin();

    JetCache cache;
    cache.lim = &limit;
    auto rhs = [&](double t, const PAState& s) {
        return corrector_rhs(cache.at(t), s, out.nl_);
    };
    auto guard = [&](double t, const PAState& s) {
        if (!s.phi.is_finite() || !s.a.is_finite())
            throw NonFiniteFieldError("corrector state became non-finite", t);
    };
    auto push = [&out](double t, const PAState& s, const PAState& d) {
        out.times_.push_back(t);
        out.phi_.push_back(s.phi);
        out.a_.push_back(s.a);
        out.dphi_.push_back(d.phi);
        out.da_.push_back(d.a);
    };

    Field phi1 = Field::zeros(limit.grid(), FieldKind::real_valued);
    Field a1 = a1_init;
    a1.mark_complex();
    integrate(PAState{std::move(phi1), std::move(a1)}, p, rhs, guard, push);
    return out;
}

namespace {

// a * exp(i (phase_a + phase_b / eps)); phase_b may be null.
Field modulate(Field a, const Field* phase_slow, const Field* phase_fast, double eps) {
    const std::size_t n = a.size();
    kernels::aligned_vector<double> ph(n);
    kernels::aligned_vector<cplx> factor(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = phase_slow ? (*phase_slow)[i].real() : 0.0;
        if (phase_fast) v += (*phase_fast)[i].real() / eps;
        ph[i] = v;
    }
    kernels::expi(factor.data(), ph.data(), n);
    kernels::cmul(a.data(), factor.data(), n);
    a.mark_complex();
    return a;
}

}  // namespace

Field reconstruct(const Field& a, const Field& phase, double eps) {
    require_same_grid(a, phase);
    if (!(eps > 0.0)) throw InvalidArgumentError("reconstruct needs eps > 0");
    return modulate(a, nullptr, &phase, eps);
}

Field reconstruct(const Trajectory& traj, double t) {
    if (!(traj.eps() > 0.0)) throw InvalidArgumentError("reconstruct needs eps > 0");
    const Field phi = traj.phi(t);
    return modulate(traj.a(t), nullptr, &phi, traj.eps());
}

Field WkbBundle::approx(double eps, double t) const {
    if (!(eps > 0.0)) throw InvalidArgumentError("approx needs eps > 0");
    const Field phi = limit.phi(t);
    const Field phi1 = corrector.phi(t);
    return modulate(limit.a(t), &phi1, &phi, eps);
}

Field WkbBundle::leading(double eps, double t) const {
    if (!(eps > 0.0)) throw InvalidArgumentError("leading needs eps > 0");
    const Field phi = limit.phi(t);
    return modulate(limit.a(t), nullptr, &phi, eps);
}

Field wkb_approx(const WkbBundle& bundle, double t, double eps) { return bundle.approx(eps, t); }

WkbBundle build_bundle(const GrenierInput& limit_data, const Field& a1_init,
                       const PhaseAmpParams& p) {
    GrenierInput lim = limit_data;
    lim.eps = 0.0;
    WkbBundle b{solve_grenier(lim, p), Trajectory{}};
    b.corrector = solve_corrector(b.limit, a1_init, p);
    return b;
}

void export_bundle_csv(const WkbBundle& bundle, double t, const std::string& path) {
    const Grid& g = bundle.limit.grid();
    if (g.dim != 1) throw InvalidArgumentError("bundle export is 1-D only");
    const Field a = bundle.limit.a(t);
    const Field phi = bundle.limit.phi(t);
    const Field a1 = bundle.corrector.a(t);
    const Field phi1 = bundle.corrector.phi(t);

    std::ofstream os(path);
    if (!os) throw IoError("cannot open " + path);
    os << "x,abs_a,phi,re_a1,im_a1,phi1\n";
    char line[192];
    for (int i = 0; i < g.n; ++i) {
        const auto k = std::size_t(i);
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", g.coord(i),
                      std::abs(a[k]), phi[k].real(), a1[k].real(), a1[k].imag(), phi1[k].real());
        os << line << "\n";
    }
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace gplab::phase_amplitude
