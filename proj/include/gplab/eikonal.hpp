#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "gplab/errors.hpp"

namespace gplab::eikonal {

// Quadratic-phase eikonal model: phi(t, x) = x^T Q(t) x with
//   Q' = -2 Q^2 - M(t),   Q(0) = Q0,
// Q0 and M(t) symmetric. Alongside Q the solver carries
//   I(t) = int_0^t tr Q   (boundary modulus exp(-I)) and
//   J' = 2 Q J, J(0) = Id  (characteristic flow x(t) = J(t) y).
struct RiccatiProblem {
    Eigen::MatrixXd Q0;
    std::function<Eigen::MatrixXd(double)> M;
};

struct RiccatiParams {
    double t_max = 1.0;
    double dt = 1e-3;
    double caustic_threshold = 1e6;  // max |Q_ij| considered blown up
};

// Fixed-step RK4 trajectory with cubic Hermite dense output. If an entry of
// Q passes the caustic threshold (or goes non-finite) integration stops and
// horizon() is the last safe node; otherwise horizon() == t_max. Queries
// beyond the horizon throw BeyondHorizonError.
class RiccatiSolution {
  public:
    double horizon() const { return horizon_; }
    bool hit_caustic() const { return caustic_; }
    int order() const { return n_; }

    Eigen::MatrixXd Q(double t) const;
    Eigen::MatrixXd flow(double t) const;
    double tr_integral(double t) const;
    double boundary_modulus(double t) const;
    double phase(double t, const Eigen::VectorXd& x) const;

  private:
    friend RiccatiSolution solve_riccati(const RiccatiProblem&, const RiccatiParams&);

    std::size_t segment(double t) const;

    int n_ = 0;
    double dt_ = 0.0;
    double horizon_ = 0.0;
    bool caustic_ = false;
    std::vector<Eigen::MatrixXd> Q_, dQ_, J_, dJ_;
    std::vector<double> I_, dI_;
};

RiccatiSolution solve_riccati(const RiccatiProblem& prob, const RiccatiParams& params);

inline double eikonal_phase(const RiccatiSolution& s, double t, const Eigen::VectorXd& x) {
    return s.phase(t, x);
}
inline Eigen::VectorXd characteristic_flow(const RiccatiSolution& s, const Eigen::VectorXd& y,
                                           double t) {
    return s.flow(t) * y;
}
inline double boundary_modulus(const RiccatiSolution& s, double t) {
    return s.boundary_modulus(t);
}

}  // namespace gplab::eikonal
