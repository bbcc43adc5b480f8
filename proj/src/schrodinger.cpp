#include "gplab/schrodinger.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gplab/spectral.hpp"

namespace gplab::schrodinger {

void EpsProblem::validate() const {
    grid.validate();
    if (!(eps > 0.0) || eps > 1.0) throw ConfigError("eps must lie in (0, 1]");
    if (has_potential()) {
        if (potential.grid() != grid) throw GridMismatchError("potential grid mismatch");
        if (potential.kind() != FieldKind::real_valued)
            throw ConfigError("potential must be real-valued");
    }
}

StrangPropagator::StrangPropagator(const EpsProblem& prob, double dt) : prob_(prob), dt_(dt) {
    prob_.validate();
    // negative dt gives the inverse map (time-reversibility tests rely on it)
    if (dt == 0.0 || !std::isfinite(dt)) throw ConfigError("dt must be nonzero and finite");
    const Grid& g = prob_.grid;
    const std::size_t size = g.size();
    half_kin_.resize(size);
    coeff_.resize(size);
    phase_factor_.resize(size);
    rho_.resize(size);

    const double inv = 1.0 / double(size);
    full_kin_.resize(size);
    kernels::aligned_vector<double> ph(size);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            const double k = g.wavenumber(i);
            ph[std::size_t(i)] = -prob_.eps * k * k * dt_ * 0.25;
        }
    } else {
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = g.wavenumber(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double kx = g.wavenumber(ix);
                ph[g.index(ix, iy)] = -prob_.eps * (kx * kx + ky * ky) * dt_ * 0.25;
            }
        }
    }
    kernels::expi(half_kin_.data(), ph.data(), size);
    kernels::scale(half_kin_.data(), inv, size);
    for (std::size_t i = 0; i < size; ++i) ph[i] *= 2.0;
    kernels::expi(full_kin_.data(), ph.data(), size);
    kernels::scale(full_kin_.data(), inv, size);
}

void StrangPropagator::kinetic(Field& u, const cplx* mult) {
    spectral::dft(prob_.grid, u.data(), coeff_.data(), -1);
    kernels::cmul(coeff_.data(), mult, coeff_.size());
    spectral::dft(prob_.grid, coeff_.data(), u.data(), +1);
}

void StrangPropagator::potential_step(Field& u) {
    const std::size_t size = u.size();
    kernels::abs2(rho_.data(), u.data(), size);
    const double scale = -dt_ / prob_.eps;
    if (prob_.has_potential()) {
        const cplx* vp = prob_.potential.data();
        for (std::size_t i = 0; i < size; ++i)
            rho_[i] = scale * (vp[i].real() + prob_.nl.f(rho_[i]));
    } else {
        for (std::size_t i = 0; i < size; ++i) rho_[i] = scale * prob_.nl.f(rho_[i]);
    }
    kernels::expi(phase_factor_.data(), rho_.data(), size);
    kernels::cmul(u.data(), phase_factor_.data(), size);
}

void StrangPropagator::step(Field& u) {
    require_same_grid(u, prob_.grid);
    half_kinetic(u);
    potential_step(u);
    half_kinetic(u);
    u.mark_complex();
}

double resolve_dt(double t_end, double dt_request) {
    if (!(t_end > 0.0) || !(dt_request > 0.0))
        throw ConfigError("t_end and dt must be positive");
    const auto steps = std::max<long long>(1, std::llround(std::ceil(t_end / dt_request - 1e-12)));
    return t_end / double(steps);
}

Field simulate(const Field& u0, const EpsProblem& prob, const SimOptions& opt) {
    require_same_grid(u0, prob.grid);
    if (!u0.is_finite()) throw NonFiniteFieldError("initial state is non-finite", 0.0);
    const double h = resolve_dt(opt.t_end, opt.dt);
    const auto steps = std::size_t(std::llround(opt.t_end / h));
    StrangPropagator prop(prob, h);

    Field u = u0;
    u.mark_complex();
    if (opt.observer) opt.observer(0.0, u);
    // Adjacent kinetic half-steps are fused into a full multiplier between
    // samples; the exact node state is only materialized where it is needed.
    prop.half_kinetic(u);
    for (std::size_t i = 1; i <= steps; ++i) {
        prop.potential_step(u);
        const double t = double(i) * h;
        const bool sample = (i == steps) || (opt.sample_every > 0 && i % std::size_t(opt.sample_every) == 0);
        if (!sample) {
            prop.full_kinetic(u);
            continue;
        }
        prop.half_kinetic(u);
        u.mark_complex();
        if (!u.is_finite()) throw NonFiniteFieldError("solution became non-finite", t);
        if (opt.observer) opt.observer(t, u);
        if (i < steps) prop.half_kinetic(u);
    }
    return u;
}

double mass(const Field& u) {
    return u.grid().cell_volume() * kernels::sum_abs2(u.data(), u.size());
}

double hamiltonian(const Field& u, const EpsProblem& prob) {
    require_same_grid(u, prob.grid);
    const Grid& g = u.grid();
    auto c = spectral::to_coeffs(u);
    const double vol = std::pow(g.period, g.dim);
    double kin = 0.0;
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            const double k = g.wavenumber(i);
            kin += k * k * std::norm(c[std::size_t(i)]);
        }
    } else {
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = g.wavenumber(iy);
            for (int ix = 0; ix < g.n; ++ix) {
                const double kx = g.wavenumber(ix);
                kin += (kx * kx + ky * ky) * std::norm(c[g.index(ix, iy)]);
            }
        }
    }
    kin *= 0.5 * prob.eps * prob.eps * vol;

    double pot = 0.0;
    const cplx* up = u.data();
    if (prob.has_potential()) {
        const cplx* vp = prob.potential.data();
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double rho = std::norm(up[i]);
            pot += vp[i].real() * rho + prob.nl.F(rho);
        }
    } else {
        for (std::size_t i = 0; i < u.size(); ++i) pot += prob.nl.F(std::norm(up[i]));
    }
    pot *= g.cell_volume();
    return kin + pot;
}

namespace {

constexpr char kCsvHeader[] = "x,re,im";

void write_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
std::uint64_t read_u64(std::istream& is) {
    std::uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& f) {
    const Grid& g = f.grid();
    if (g.dim == 1) {
        std::ofstream os(path);
        if (!os) throw IoError("cannot open " + path);
        os << kCsvHeader << "\n";
        char line[96];
        for (int i = 0; i < g.n; ++i) {
            const cplx v = f[std::size_t(i)];
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g", g.coord(i), v.real(), v.imag());
            os << line << "\n";
        }
        if (!os) throw IoError("write failed: " + path);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path);
    write_u64(os, std::uint64_t(g.dim));
    write_u64(os, std::uint64_t(g.n));
    write_f64(os, g.period);
    for (std::size_t i = 0; i < f.size(); ++i) {
        write_f64(os, f[i].real());
        write_f64(os, f[i].imag());
    }
    if (!os) throw IoError("write failed: " + path);
}

Field read_snapshot(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError("cannot open " + path);
    char head[8] = {};
    probe.read(head, sizeof head);
    probe.close();

    if (std::string(head, 1) == "x") {  // CSV
        std::ifstream is(path);
        std::string line;
        if (!std::getline(is, line) || line.rfind(kCsvHeader, 0) != 0)
            throw IoError("bad snapshot header in " + path);
        std::vector<cplx> vals;
        double x0 = 0.0, x1 = 0.0;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            double x, re, im;
            if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
                throw IoError("bad snapshot row in " + path);
            if (vals.empty()) x0 = x;
            if (vals.size() == 1) x1 = x;
            vals.emplace_back(re, im);
        }
        const int n = int(vals.size());
        if (n < 8 || (n & (n - 1)) != 0) throw IoError("snapshot length is not a power of two");
        const double period = (x1 - x0) * n;
        Grid g{1, n, period};
        g.validate();
        Field out = Field::zeros(g, FieldKind::complex_valued);
        for (int i = 0; i < n; ++i) out[std::size_t(i)] = vals[std::size_t(i)];
        return out;
    }

    std::ifstream is(path, std::ios::binary);
    const auto dim = read_u64(is);
    const auto n = read_u64(is);
    const double period = read_f64(is);
    if (!is || dim != 2 || n < 8 || n > (1u << 20)) throw IoError("bad snapshot header in " + path);
    Grid g{int(dim), int(n), period};
    g.validate();
    Field out = Field::zeros(g, FieldKind::complex_valued);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double re = read_f64(is);
        const double im = read_f64(is);
        out[i] = {re, im};
    }
    if (!is) throw IoError("truncated snapshot " + path);
    return out;
}

}  // namespace gplab::schrodinger
