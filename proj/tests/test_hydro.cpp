#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "gplab/hydro.hpp"
#include "gplab/spectral.hpp"

using namespace gplab;
using namespace gplab::hydro;

namespace {

const Grid g128{1, 128, 2.0 * M_PI};

Field real_field(const Grid& g, double (*f)(double)) {
    return Field::sample_real(g, [f](double x, double) { return f(x); });
}

}  // namespace

// ==== quadratic observables =================================================

TEST_CASE("constants carry unit density and no momentum") {
    const Field u = Field::constant(g128, 1.0).mark_complex();
    const Observables obs = observables(u, 0.25);
    REQUIRE(obs.momentum.size() == 1);
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(obs.density[i].real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(obs.momentum[0][i].real() == 0.0);
    }
}

TEST_CASE("an oscillating phase carries momentum cos x at unit density") {
    // u = exp(i sin x / eps): density 1, momentum eps Im(conj(u) u') = cos x.
    const double eps = 0.25;
    const Field u = Field::sample(g128, [eps](double x, double) {
        const double th = std::sin(x) / eps;
        return cplx(std::cos(th), std::sin(th));
    });
    const Observables obs = observables(u, eps);
    double worst_rho = 0.0, worst_j = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = g128.coord(int(i));
        worst_rho = std::max(worst_rho, std::abs(obs.density[i].real() - 1.0));
        worst_j = std::max(worst_j, std::abs(obs.momentum[0][i].real() - std::cos(x)));
    }
    CHECK(worst_rho < 1e-12);
    CHECK(worst_j < 1e-10);
}

TEST_CASE("real wave functions carry no momentum") {
    const Field u = real_field(g128, [](double x) { return 1.0 + 0.3 * std::cos(x); });
    const Observables obs = observables(u, 0.5);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(obs.momentum[0][i].real() == 0.0);
}

TEST_CASE("observables keep both axes in two dimensions") {
    const Grid g{2, 32, 2.0 * M_PI};
    const double eps = 0.5;
    const Field u = Field::sample(g, [eps](double x, double y) {
        const double th = (0.5 * std::sin(x) + std::sin(y)) / eps;
        return cplx(std::cos(th), std::sin(th));
    });
    const Observables obs = observables(u, eps);
    REQUIRE(obs.momentum.size() == 2);
    double worst = 0.0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy) {
            const std::size_t i = g.index(ix, iy);
            worst = std::max(worst,
                             std::abs(obs.momentum[0][i].real() - 0.5 * std::cos(g.coord(ix))));
            worst = std::max(worst, std::abs(obs.momentum[1][i].real() - std::cos(g.coord(iy))));
        }
    CHECK(worst < 1e-10);
}

// ==== modulated energy ======================================================

TEST_CASE("modulated energy of u = 1 against a moving target is pi/eps^2") {
    // E = eps^-2 int |0 - i cos x|^2 = eps^-2 * pi on the 2 pi circle.
    const double eps = 0.5;
    const Field u = Field::constant(g128, 1.0).mark_complex();
    const Field rho = Field::constant(g128, 1.0);
    const Field phi = real_field(g128, [](double x) { return std::sin(x); });
    CHECK(modulated_energy(u, rho, phi, eps) == doctest::Approx(M_PI / (eps * eps)).epsilon(1e-12));
}

TEST_CASE("well-prepared oscillatory data has eps-independent energy") {
    // u = a0 exp(i phi0/eps) against (|a0|^2, phi0): the fast phase cancels
    // and E = int |a0'|^2 exactly, here 0.09 pi.
    const Field a0 = real_field(g128, [](double x) { return 1.0 + 0.3 * std::cos(x); });
    const Field phi0 = real_field(g128, [](double x) { return 0.4 * std::sin(x); });
    Field rho = Field::zeros(g128, FieldKind::real_valued);
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(a0[i]);

    for (double eps : {0.25, 0.0625}) {
        const Field u = phase_amplitude::reconstruct(a0, phi0, eps);
        CHECK(modulated_energy(u, rho, phi0, eps) == doctest::Approx(0.09 * M_PI).epsilon(1e-9));
    }
}

TEST_CASE("modulated energy is gauge invariant") {
    const double eps = 0.25;
    const Field u = Field::sample(g128, [](double x, double) {
        return cplx(1.0 + 0.2 * std::cos(x), 0.1 * std::sin(2.0 * x));
    });
    const Field rho = real_field(g128, [](double x) { return 1.0 + 0.1 * std::cos(x); });
    const Field phi = real_field(g128, [](double x) { return 0.2 * std::sin(x); });

    Field v = u;
    v *= cplx(std::cos(0.7), std::sin(0.7));
    const double e0 = modulated_energy(u, rho, phi, eps);
    CHECK(modulated_energy(v, rho, phi, eps) == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("the density defect is dominated by eps sqrt(E)") {
    const double eps = 0.25;
    const Field u = Field::sample(g128, [](double x, double) {
        return cplx(1.0 + 0.2 * std::cos(x), 0.1 * std::sin(2.0 * x));
    });
    const Field rho = real_field(g128, [](double x) { return 1.0 + 0.1 * std::cos(x); });
    const Field phi = real_field(g128, [](double x) { return 0.2 * std::sin(x); });

    Field defect = Field::zeros(g128, FieldKind::real_valued);
    for (std::size_t i = 0; i < u.size(); ++i) defect[i] = std::norm(u[i]) - rho[i].real();
    const double lhs = eps * std::sqrt(modulated_energy(u, rho, phi, eps));
    const double rhs = spectral::norm(defect, spectral::NormKind::l2());
    CHECK(lhs >= rhs * (1.0 - 1e-12));
}

TEST_CASE("modulated energy validates its arguments") {
    const Field u = Field::constant(g128, 1.0).mark_complex();
    const Field rho = Field::constant(g128, 1.0);
    CHECK_THROWS_AS(modulated_energy(u, rho, rho, 0.0), InvalidArgumentError);
    const Field small = Field::constant(Grid{1, 32, 2.0 * M_PI}, 1.0);
    CHECK_THROWS_AS(modulated_energy(u, small, rho, 0.5), GridMismatchError);
}

// ==== tracking along the limit ==============================================

namespace {

HydroRecord track_constant(double eps, int n_samples) {
    phase_amplitude::GrenierInput in;
    in.a0 = Field::constant(g128, 1.0).mark_complex();
    in.phi0 = Field::zeros(g128, FieldKind::real_valued);
    phase_amplitude::PhaseAmpParams p;
    p.t_end = 0.4;
    p.dt = 1e-2;
    const auto limit = phase_amplitude::solve_grenier(in, p);

    schrodinger::EpsProblem prob;
    prob.grid = g128;
    prob.eps = eps;
    const Field u0 = Field::constant(g128, 1.0).mark_complex();
    return track_hydro_limit(u0, prob, limit, 0.4, eps * 5e-3, n_samples);
}

}  // namespace

TEST_CASE("the quiescent state tracks its own limit with zero energy") {
    const HydroRecord rec = track_constant(0.25, 4);
    REQUIRE(rec.samples.size() == 5);  // t = 0 plus n_samples
    CHECK(rec.eps == 0.25);
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        const auto& s = rec.samples[i];
        CHECK(s.t == doctest::Approx(0.1 * double(i)));
        CHECK(s.menergy < 1e-18);
        CHECK(s.density_err_l2 < 1e-11);
        CHECK(s.momentum_err_l1 < 1e-11);
    }
    CHECK(rec.final_sample().t == doctest::Approx(0.4));
}

TEST_CASE("generic well-prepared data stays Gronwall bounded") {
    const double eps = 0.125, t_end = 0.3;
    phase_amplitude::GrenierInput in;
    in.a0 = Field::sample(g128, [](double x, double) { return cplx(1.0 + 0.3 * std::cos(x), 0.0); });
    in.phi0 = real_field(g128, [](double x) { return 0.4 * std::sin(x); });
    phase_amplitude::PhaseAmpParams p;
    p.t_end = t_end;
    p.dt = 1e-3;
    const auto limit = phase_amplitude::solve_grenier(in, p);

    schrodinger::EpsProblem prob;
    prob.grid = g128;
    prob.eps = eps;
    const Field u0 = phase_amplitude::reconstruct(in.a0, in.phi0, eps);
    const HydroRecord rec = track_hydro_limit(u0, prob, limit, t_end, eps * 5e-3, 6);

    REQUIRE(rec.samples.size() == 7);
    // Data is an exact WKB state, so E(0) = int |a0'|^2 = 0.09 pi.
    CHECK(rec.samples.front().menergy == doctest::Approx(0.09 * M_PI).epsilon(1e-6));
    const double c = gronwall_rate(rec);
    CHECK(gronwall_holds(rec, c));
    CHECK(!gronwall_holds(rec, -20.0));  // decay this strong is not sustained
    for (const auto& s : rec.samples) {
        CHECK(std::isfinite(s.menergy));
        CHECK(s.density_err_l2 < 0.1);
        CHECK(s.momentum_err_l1 < 0.5);
    }
}

TEST_CASE("tracking rejects bad arguments") {
    phase_amplitude::GrenierInput in;
    in.a0 = Field::constant(g128, 1.0).mark_complex();
    in.phi0 = Field::zeros(g128, FieldKind::real_valued);
    phase_amplitude::PhaseAmpParams p;
    p.t_end = 0.2;
    p.dt = 1e-2;
    const auto limit = phase_amplitude::solve_grenier(in, p);
    in.eps = 0.25;
    const auto dispersive = phase_amplitude::solve_grenier(in, p);

    schrodinger::EpsProblem prob;
    prob.grid = g128;
    prob.eps = 0.25;
    const Field u0 = Field::constant(g128, 1.0).mark_complex();
    CHECK_THROWS_AS(track_hydro_limit(u0, prob, limit, 0.2, 1e-3, 0), ConfigError);
    CHECK_THROWS_AS(track_hydro_limit(u0, prob, dispersive, 0.2, 1e-3, 2), InvalidArgumentError);
    CHECK_THROWS_AS(track_hydro_limit(u0, prob, limit, 0.5, 1e-3, 2), InvalidArgumentError);
}

// ==== Gronwall fitting ======================================================

namespace {

HydroRecord synthetic(std::vector<std::pair<double, double>> te) {
    HydroRecord rec;
    rec.eps = 0.25;
    for (auto [t, e] : te) {
        HydroSample s;
        s.t = t;
        s.menergy = e;
        rec.samples.push_back(s);
    }
    return rec;
}

}  // namespace

TEST_CASE("gronwall_rate returns the smallest sufficient exponent") {
    // base = 2 (E(0) + 1) = 4; the t = 1 sample needs C = 1, the t = 2
    // sample only C = 1/2, so the fitted rate is 1.
    const auto rec = synthetic({{0.0, 1.0}, {1.0, 4.0 * std::exp(1.0)}, {2.0, 4.0 * std::exp(1.0)}});
    CHECK(gronwall_rate(rec) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gronwall_holds(rec, 1.0));
    CHECK(!gronwall_holds(rec, 0.9));
}

TEST_CASE("energies below the base need no growth at all") {
    const auto rec = synthetic({{0.0, 1.0}, {1.0, 3.9}, {2.0, 2.0}});
    CHECK(gronwall_rate(rec) == 0.0);
    CHECK(gronwall_holds(rec, 0.0));
}

TEST_CASE("empty records are rejected") {
    const HydroRecord rec;
    CHECK_THROWS_AS(gronwall_rate(rec), InvalidArgumentError);
    CHECK_THROWS_AS(gronwall_holds(rec, 1.0), InvalidArgumentError);
}

// ==== CSV ===================================================================

TEST_CASE("record CSV writes a header and one row per sample") {
    const HydroRecord rec =
        synthetic({{0.0, 1.0}, {0.5, 2.0}, {1.0, 3.0}});
    const char* path = "hydro_record.csv";
    write_record_csv(rec, path);

    std::FILE* fp = std::fopen(path, "r");
    REQUIRE(fp != nullptr);
    char line[256];
    REQUIRE(std::fgets(line, sizeof line, fp) != nullptr);
    CHECK(std::string(line) == "t,E_eps,density_err_L2,momentum_err_L1\n");
    int rows = 0;
    double t = -1.0, e = 0.0, d = 0.0, m = 0.0;
    while (std::fgets(line, sizeof line, fp) != nullptr) {
        REQUIRE(std::sscanf(line, "%lf,%lf,%lf,%lf", &t, &e, &d, &m) == 4);
        ++rows;
    }
    std::fclose(fp);
    CHECK(rows == 3);
    CHECK(t == 1.0);
    CHECK(e == 3.0);
    std::remove(path);
}
