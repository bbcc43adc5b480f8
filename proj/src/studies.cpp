#include "gplab/studies.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gplab/analysis.hpp"
#include "gplab/eikonal.hpp"
#include "gplab/hydro.hpp"
#include "gplab/phase_amplitude.hpp"
#include "gplab/schrodinger.hpp"
#include "gplab/spectral.hpp"

namespace gplab::studies {

namespace pa = phase_amplitude;

namespace {

std::string artifact_path(const Config& c, const std::string& name) {
    std::filesystem::create_directories(c.out);
    return (std::filesystem::path(c.out) / name).string();
}

Field exp_i(const Field& theta) {
    const std::size_t n = theta.size();
    Field out = Field::zeros(theta.grid(), FieldKind::complex_valued);
    kernels::aligned_vector<double> ph(n);
    for (std::size_t i = 0; i < n; ++i) ph[i] = theta[i].real();
    kernels::expi(out.data(), ph.data(), n);
    return out;
}

double max_abs(const Field& f) { return std::sqrt(kernels::max_abs2(f.data(), f.size())); }

// Step bound for the eps = 0 phase-amplitude solves: transport CFL with a
// factor-two allowance on the initial amplitude/velocity scale.
double limit_dt(const Grid& g, const Field& a0, const Field& phi0) {
    double scale0 = std::max(1.0, max_abs(a0));
    for (const Field& gax : spectral::gradient(phi0)) scale0 = std::max(scale0, max_abs(gax));
    return std::min(2e-3, pa::suggested_dt(g, 0.0, 2.0 * scale0));
}

pa::PhaseAmpParams limit_params(const Config& c, const Field& a0, const Field& phi0) {
    pa::PhaseAmpParams p;
    p.t_end = c.t_end;
    p.dt = limit_dt(c.grid(), a0, phi0);
    p.store_every = 4;
    p.delta_min = c.delta_min;
    return p;
}

Field splitting_run(const Config& c, const Field& u0, double eps, double t_end) {
    schrodinger::EpsProblem prob;
    prob.grid = u0.grid();
    prob.eps = eps;
    prob.nl = c.nl;
    schrodinger::SimOptions so;
    so.t_end = t_end;
    so.dt = eps * c.dt0;
    so.sample_every = 0;
    return schrodinger::simulate(u0, prob, so);
}

// ---------------------------------------------------------------- riccati --

struct RiccatiExample {
    std::string name;
    Eigen::MatrixXd Q0, M;
    std::function<double(double)> q;        // isotropic factor of the closed form
    std::function<double(double)> modulus;  // closed-form boundary modulus
};

std::vector<RiccatiExample> riccati_catalogue(double w, int n) {
    const auto I = Eigen::MatrixXd::Identity(n, n);
    const auto Z = Eigen::MatrixXd::Zero(n, n);
    const double hn = 0.5 * double(n);
    std::vector<RiccatiExample> ex;
    ex.push_back({"harmonic", Z, 0.5 * w * w * I,
                  [w](double t) { return -0.5 * w * std::tan(w * t); },
                  [w, hn](double t) { return std::pow(std::cos(w * t), -hn); }});
    ex.push_back({"repulsive", Z, -0.5 * w * w * I,
                  [w](double t) { return 0.5 * w * std::tanh(w * t); },
                  [w, hn](double t) { return std::pow(std::cosh(w * t), -hn); }});
    ex.push_back({"focusing", -0.5 * I, Z, [](double t) { return -0.5 / (1.0 - t); },
                  [hn](double t) { return std::pow(1.0 - t, -hn); }});
    ex.push_back({"spreading", 0.5 * I, Z, [](double t) { return 0.5 / (1.0 + t); },
                  [hn](double t) { return std::pow(1.0 + t, -hn); }});
    return ex;
}

StudyResult run_riccati(const Config& c) {
    const int n = c.riccati_dim;
    double worst = 0.0;
    for (const auto& ex : riccati_catalogue(c.riccati_omega, n)) {
        if (!c.example.empty() && c.example != ex.name) continue;
        eikonal::RiccatiProblem prob;
        prob.Q0 = ex.Q0;
        prob.M = [&ex](double) { return ex.M; };
        eikonal::RiccatiParams params;
        params.t_max = c.t_end;
        params.dt = 1e-3;
        const auto sol = eikonal::solve_riccati(prob, params);

        std::ofstream os(artifact_path(c, "riccati_" + ex.name + ".csv"));
        if (!os) throw IoError("cannot open riccati csv");
        os << "t";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) os << ",Q" << (i + 1) << (j + 1);
        os << ",boundary_modulus\n";
        char buf[64];
        const auto rows = std::size_t(std::llround(sol.horizon() / params.dt));
        for (std::size_t r = 0; r <= rows; ++r) {
            const double t = double(r) * params.dt;
            const Eigen::MatrixXd Q = sol.Q(t);
            std::snprintf(buf, sizeof buf, "%.17g", t);
            os << buf;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    std::snprintf(buf, sizeof buf, ",%.17g", Q(i, j));
                    os << buf;
                }
            std::snprintf(buf, sizeof buf, ",%.17g", sol.boundary_modulus(t));
            os << buf << "\n";
        }

        // closed-form comparison on [0, 0.9 * horizon]
        const double tmax = 0.9 * sol.horizon();
        for (int s = 0; s <= 512; ++s) {
            const double t = tmax * double(s) / 512.0;
            const Eigen::MatrixXd Q = sol.Q(t);
            const Eigen::MatrixXd ref = ex.q(t) * Eigen::MatrixXd::Identity(n, n);
            worst = std::max(worst, (Q - ref).cwiseAbs().maxCoeff());
            worst = std::max(worst, std::abs(sol.boundary_modulus(t) - ex.modulus(t)));
        }
    }
    StudyResult r;
    r.name = "riccati";
    r.metric = "max_err";
    r.value = worst;
    r.pass = worst <= 1e-8;
    return r;
}

// ---------------------------------------------------------------- converge --

StudyResult run_converge(const Config& c) {
    const Grid g = c.grid();
    const Field a0 = c.entry("a0").sample(g);
    const Field a1 = c.entry("a1").sample(g);
    const Field phi0 = c.entry("phi0").sample_real(g);

    pa::GrenierInput in;
    in.a0 = a0;
    in.phi0 = phi0;
    in.eps = 0.0;
    in.nl = c.nl;
    const auto bundle = pa::build_bundle(in, a1, limit_params(c, a0, phi0));

    std::vector<std::vector<double>> errs;
    const std::vector<spectral::NormKind> kinds{spectral::NormKind::linf(),
                                                spectral::NormKind::l2()};
    for (double eps : c.eps) {
        Field amp = a1;
        amp *= eps;
        amp += a0;
        const Field u0 = pa::reconstruct(amp, phi0, eps);
        const Field u = splitting_run(c, u0, eps, c.t_end);
        const Field ref = bundle.approx(eps, c.t_end);
        errs.push_back(analysis::error_norms(u, ref, kinds));
    }
    const auto rep = analysis::make_report(c.eps, {"Linf", "L2"}, errs);
    analysis::write_report_csv(rep, artifact_path(c, "converge_report.csv"));
    pa::export_bundle_csv(bundle, c.t_end, artifact_path(c, "converge_bundle.csv"));

    StudyResult r;
    r.name = "converge";
    r.metric = "slope";
    r.value = rep.fits[0].slope;
    r.pass = r.value >= 0.85 && r.value <= 1.15;
    return r;
}

// ------------------------------------------------------------- colinsoyeur --

StudyResult run_colinsoyeur(const Config& c) {
    const Grid g = c.grid();
    const Field theta0 = c.entry("theta0").sample_real(g);
    const Field a0 = exp_i(theta0);
    const Field zero = Field::zeros(g, FieldKind::real_valued);
    const Field theta_t = analysis::wave_solve(theta0, zero, nullptr, c.t_end);
    const Field ref = exp_i(theta_t);

    std::vector<std::vector<double>> errs;
    const std::vector<spectral::NormKind> kinds{spectral::NormKind::linf(),
                                                spectral::NormKind::l2()};
    for (double eps : c.eps) {
        const Field u = splitting_run(c, a0, eps, c.t_end);
        auto e = analysis::error_norms(u, ref, kinds);
        e.push_back(std::max(e[0], e[1]));  // L-inf cap L2
        errs.push_back(e);
    }
    const auto rep = analysis::make_report(c.eps, {"Linf", "L2", "LinfL2"}, errs);
    analysis::write_report_csv(rep, artifact_path(c, "colinsoyeur_report.csv"));

    StudyResult r;
    r.name = "colinsoyeur";
    r.metric = "slope";
    r.value = rep.fits[2].slope;
    r.pass = r.value >= 0.85 && r.value <= 1.15;
    return r;
}

// ------------------------------------------------------------- instability --

StudyResult run_instability(const Config& c) {
    const Grid g = c.grid();
    const Field a0 = c.entry("a0").sample(g);
    const Field a1 = c.entry("a1").sample(g);
    const Field phi0 = c.entry("phi0").sample_real(g);

    analysis::InstabilityOptions opt;
    opt.dt0 = c.dt0;
    const auto rec = analysis::instability_experiment(a0, a1, phi0, c.nl, c.alpha, c.eps, opt);
    Field a1c = a0;
    a1c *= cplx(0.0, 1.0);  // Re(conj(a0) i a0) = 0: mechanism switched off
    const auto ctrl = analysis::instability_experiment(a0, a1c, phi0, c.nl, c.alpha, c.eps, opt);

    analysis::write_instability_csv(rec, artifact_path(c, "instability.csv"));
    analysis::write_instability_csv(ctrl, artifact_path(c, "instability_control.csv"));

    bool pass = true;
    double min_dist = rec.points.front().final_dist;
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        min_dist = std::min(min_dist, rec.points[i].final_dist);
        if (rec.points[i].final_dist < 0.1) pass = false;
        if (i > 0 && !(rec.points[i].ratio > rec.points[i - 1].ratio)) pass = false;
        if (i > 0 && !(rec.points[i].delta < rec.points[i - 1].delta)) pass = false;
    }
    for (const auto& p : ctrl.points)
        if (p.final_dist > 10.0 * p.initial_dist) pass = false;

    StudyResult r;
    r.name = "instability";
    r.metric = "min_dist";
    r.value = min_dist;
    r.pass = pass;
    return r;
}

// ------------------------------------------------------------------- hydro --

StudyResult run_hydro(const Config& c) {
    const Grid g = c.grid();
    const Field a0 = c.entry("a0").sample(g);
    const Field phi0 = c.entry("phi0").sample_real(g);

    pa::GrenierInput in;
    in.a0 = a0;
    in.phi0 = phi0;
    in.eps = 0.0;
    in.nl = c.nl;
    const auto limit = pa::solve_grenier(in, limit_params(c, a0, phi0));

    std::vector<hydro::HydroRecord> recs;
    for (std::size_t i = 0; i < c.eps.size(); ++i) {
        const double eps = c.eps[i];
        Field amp = a0;
        if (c.has_entry("a1")) {
            Field slack = c.entry("a1").sample(g);
            slack *= eps;
            amp += slack;
        }
        const Field u0 = pa::reconstruct(amp, phi0, eps);
        schrodinger::EpsProblem prob;
        prob.grid = g;
        prob.eps = eps;
        prob.nl = c.nl;
        recs.push_back(
            hydro::track_hydro_limit(u0, prob, limit, c.t_end, eps * c.dt0, c.n_samples));
        char name[64];
        std::snprintf(name, sizeof name, "hydro_eps%zu.csv", i);
        hydro::write_record_csv(recs.back(), artifact_path(c, name));
    }

    std::vector<double> derr, merr;
    for (const auto& rec : recs) {
        derr.push_back(rec.final_sample().density_err_l2);
        merr.push_back(rec.final_sample().momentum_err_l1);
    }
    const auto dfit = analysis::fit_slope(c.eps, derr);
    const auto mfit = analysis::fit_slope(c.eps, merr);
    const double C = hydro::gronwall_rate(recs.front());
    bool gron = true;
    for (const auto& rec : recs) gron = gron && hydro::gronwall_holds(rec, C);

    StudyResult r;
    r.name = "hydro";
    r.metric = "density_slope";
    r.value = dfit.slope;
    r.pass = dfit.slope >= 0.8 && dfit.slope <= 1.2 && mfit.slope >= 0.8 && mfit.slope <= 1.2 &&
             gron;
    return r;
}

}  // namespace

StudyResult run_study(const Config& c) {
    if (c.study == "riccati") return run_riccati(c);
    if (c.study == "converge") return run_converge(c);
    if (c.study == "colinsoyeur") return run_colinsoyeur(c);
    if (c.study == "instability") return run_instability(c);
    if (c.study == "hydro") return run_hydro(c);
    throw ConfigError("unknown study '" + c.study + "'");
}

std::string summary_line(const StudyResult& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "STUDY %s %s %s=%.6g", r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.metric.c_str(), r.value);
    return buf;
}

}  // namespace gplab::studies
