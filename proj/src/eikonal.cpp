#include "gplab/eikonal.hpp"

#include <cmath>

namespace gplab::eikonal {

namespace {

struct State {
    Eigen::MatrixXd Q, J;
    double I;
};

struct Deriv {
    Eigen::MatrixXd dQ, dJ;
    double dI;
};

Deriv rhs(const State& s, const Eigen::MatrixXd& M) {
    Deriv d;
    d.dQ = -2.0 * s.Q * s.Q - M;
    d.dJ = 2.0 * s.Q * s.J;
    d.dI = s.Q.trace();
    return d;
}

State advance(const State& s, const Deriv& d, double h) {
    return {s.Q + h * d.dQ, s.J + h * d.dJ, s.I + h * d.dI};
}

double hermite(double y0, double d0, double y1, double d1, double h, double th) {
    const double th2 = th * th, th3 = th2 * th;
    return (2 * th3 - 3 * th2 + 1) * y0 + (th3 - 2 * th2 + th) * h * d0 +
           (-2 * th3 + 3 * th2) * y1 + (th3 - th2) * h * d1;
}

Eigen::MatrixXd hermite(const Eigen::MatrixXd& y0, const Eigen::MatrixXd& d0,
                        const Eigen::MatrixXd& y1, const Eigen::MatrixXd& d1, double h,
                        double th) {
    const double th2 = th * th, th3 = th2 * th;
    return (2 * th3 - 3 * th2 + 1) * y0 + (th3 - 2 * th2 + th) * h * d0 +
           (-2 * th3 + 3 * th2) * y1 + (th3 - th2) * h * d1;
}

}  // namespace

RiccatiSolution solve_riccati(const RiccatiProblem& prob, const RiccatiParams& params) {
    if (prob.Q0.rows() != prob.Q0.cols() || prob.Q0.rows() < 1)
        throw InvalidArgumentError("Q0 must be square");
    if (!prob.M) throw InvalidArgumentError("potential Hessian M(t) not set");
    if (params.dt <= 0.0 || params.t_max <= 0.0)
        throw InvalidArgumentError("riccati t_max and dt must be positive");
    if (!prob.Q0.isApprox(prob.Q0.transpose(), 1e-12))
        throw InvalidArgumentError("Q0 must be symmetric");

    const int n = int(prob.Q0.rows());
    const auto steps = std::size_t(std::llround(params.t_max / params.dt));
    if (steps < 1 || std::abs(double(steps) * params.dt - params.t_max) > 1e-9 * params.t_max)
        throw InvalidArgumentError("t_max must be an integer multiple of dt");

    RiccatiSolution sol;
    sol.n_ = n;
    sol.dt_ = params.dt;

    State s{prob.Q0, Eigen::MatrixXd::Identity(n, n), 0.0};
    auto safe = [&](const Eigen::MatrixXd& Q) {
        return Q.allFinite() && Q.cwiseAbs().maxCoeff() <= params.caustic_threshold;
    };
    if (!safe(s.Q)) throw InvalidArgumentError("Q0 already beyond caustic threshold");

    auto push = [&](const State& st, const Deriv& d) {
        sol.Q_.push_back(st.Q);
        sol.dQ_.push_back(d.dQ);
        sol.J_.push_back(st.J);
        sol.dJ_.push_back(d.dJ);
        sol.I_.push_back(st.I);
        sol.dI_.push_back(d.dI);
    };

    const double h = params.dt;
    double t = 0.0;
    push(s, rhs(s, prob.M(0.0)));
    for (std::size_t i = 0; i < steps; ++i) {
        const Eigen::MatrixXd M0 = prob.M(t);
        const Eigen::MatrixXd Mh = prob.M(t + 0.5 * h);
        const Eigen::MatrixXd M1 = prob.M(t + h);
        const Deriv k1 = rhs(s, M0);
        const Deriv k2 = rhs(advance(s, k1, 0.5 * h), Mh);
        const Deriv k3 = rhs(advance(s, k2, 0.5 * h), Mh);
        const Deriv k4 = rhs(advance(s, k3, h), M1);
        State next;
        next.Q = s.Q + (h / 6.0) * (k1.dQ + 2.0 * k2.dQ + 2.0 * k3.dQ + k4.dQ);
        next.J = s.J + (h / 6.0) * (k1.dJ + 2.0 * k2.dJ + 2.0 * k3.dJ + k4.dJ);
        next.I = s.I + (h / 6.0) * (k1.dI + 2.0 * k2.dI + 2.0 * k3.dI + k4.dI);
        next.Q = 0.5 * (next.Q + next.Q.transpose());
        if (!safe(next.Q) || !next.J.allFinite() || !std::isfinite(next.I)) {
            sol.caustic_ = true;
            sol.horizon_ = t;
            return sol;
        }
        t += h;
        s = std::move(next);
        push(s, rhs(s, prob.M(t)));
    }
    sol.horizon_ = double(steps) * h;
    return sol;
}

std::size_t RiccatiSolution::segment(double t) const {
    if (!(t >= 0.0)) throw InvalidArgumentError("riccati query at negative time");
    if (t > horizon_ + 1e-12 * std::max(1.0, horizon_))
        throw BeyondHorizonError(caustic_ ? "query beyond caustic horizon"
                                          : "query beyond integrated interval");
    auto i = std::size_t(t / dt_);
    if (i + 1 >= Q_.size()) i = Q_.size() >= 2 ? Q_.size() - 2 : 0;
    return i;
}

Eigen::MatrixXd RiccatiSolution::Q(double t) const {
    if (Q_.size() == 1) return Q_.front();
    const std::size_t i = segment(t);
    const double th = (t - double(i) * dt_) / dt_;
    return hermite(Q_[i], dQ_[i], Q_[i + 1], dQ_[i + 1], dt_, th);
}

Eigen::MatrixXd RiccatiSolution::flow(double t) const {
    if (J_.size() == 1) return J_.front();
    const std::size_t i = segment(t);
    const double th = (t - double(i) * dt_) / dt_;
    return hermite(J_[i], dJ_[i], J_[i + 1], dJ_[i + 1], dt_, th);
}

double RiccatiSolution::tr_integral(double t) const {
    if (I_.size() == 1) return I_.front();
    const std::size_t i = segment(t);
    const double th = (t - double(i) * dt_) / dt_;
    return hermite(I_[i], dI_[i], I_[i + 1], dI_[i + 1], dt_, th);
}

double RiccatiSolution::boundary_modulus(double t) const { return std::exp(-tr_integral(t)); }

double RiccatiSolution::phase(double t, const Eigen::VectorXd& x) const {
    if (x.size() != n_) throw InvalidArgumentError("phase query dimension mismatch");
    return x.dot(Q(t) * x);
}

}  // namespace gplab::eikonal
