#pragma once

#include <string>
#include <vector>

#include "gplab/field.hpp"
#include "gplab/nonlinearity.hpp"
#include "gplab/spectral.hpp"

namespace gplab::analysis {

// Exact mode-wise solution of theta_tt - Lap theta = source with
// theta(0) = theta0, theta_t(0) = vel0 and a constant-in-time source:
//   k != 0: theta0_k cos(|k|t) + vel0_k sin(|k|t)/|k| + s_k (1-cos(|k|t))/|k|^2
//   k == 0: theta0_0 + vel0_0 t + s_0 t^2/2.
// Pass source = nullptr for the homogeneous equation. All fields real.
Field wave_solve(const Field& theta0, const Field& vel0, const Field* source, double t);
// Time derivative of the same solution (for energy checks).
Field wave_velocity(const Field& theta0, const Field& vel0, const Field* source, double t);

std::vector<double> error_norms(const Field& u, const Field& ref,
                                const std::vector<spectral::NormKind>& kinds);

struct SlopeFit {
    double slope = 0.0;
    double residual = 0.0;  // rms residual of the log-log fit
    bool exact = false;     // some error was exactly 0; no slope fitted
};

// Least squares on (log eps, log err); needs >= 3 points, eps positive.
SlopeFit fit_slope(const std::vector<double>& eps, const std::vector<double>& err);

struct ConvergenceReport {
    std::vector<double> epsilons;            // strictly decreasing
    std::vector<std::string> norms;          // column labels
    std::vector<std::vector<double>> errors; // [i_eps][i_norm]
    std::vector<SlopeFit> fits;              // per norm column

    void validate() const;
};

ConvergenceReport make_report(std::vector<double> epsilons, std::vector<std::string> norms,
                              std::vector<std::vector<double>> errors);

// CSV: epsilon, error per norm; footer rows hold slope and residual.
void write_report_csv(const ConvergenceReport& rep, const std::string& path);

// Perturbation-growth experiment: for each eps, evolve data a0 e^{i phi0/eps}
// and (a0 + delta a1) e^{i phi0/eps} with delta = eps^alpha to
// t = eps^{1-alpha}, and compare against the predicted multiplicative factor
// exp(-2 i t delta Re(conj(a0) a1) / eps).
struct InstabilityPoint {
    double eps = 0.0;
    double delta = 0.0;
    double t_eps = 0.0;
    double initial_dist = 0.0;    // delta * ||a1||_Linf
    double final_dist = 0.0;      // ||u - v||_Linf at t_eps
    double ratio = 0.0;           // final_dist / initial_dist
    double factor_residual = 0.0; // ||v - u * predicted factor||_Linf at t_eps
};

struct InstabilityRecord {
    double alpha = 0.5;
    std::vector<InstabilityPoint> points;  // eps order of eps_list
};

struct InstabilityOptions {
    double dt0 = 5e-3;  // step bound is eps * dt0
};

InstabilityRecord instability_experiment(const Field& a0, const Field& a1, const Field& phi0,
                                         const Nonlinearity& nl, double alpha,
                                         const std::vector<double>& eps_list,
                                         const InstabilityOptions& opt = {});

// CSV: eps, delta, t_eps, initial_dist, final_dist, ratio, factor_residual.
void write_instability_csv(const InstabilityRecord& rec, const std::string& path);

}  // namespace gplab::analysis
