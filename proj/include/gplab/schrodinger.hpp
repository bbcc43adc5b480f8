#pragma once

#include <functional>
#include <string>

#include "gplab/field.hpp"
#include "gplab/nonlinearity.hpp"

namespace gplab::schrodinger {

// i eps u_t + (eps^2/2) Lap u = V u + f(|u|^2) u on the periodic box.
struct EpsProblem {
    Grid grid;
    double eps = 1.0;
    Nonlinearity nl = Nonlinearity::cubic();
    Field potential;  // real-valued; zero-size means V == 0

    bool has_potential() const { return potential.size() > 0; }
    void validate() const;
};

struct SimOptions;

// Strang splitting: half kinetic step exp(i eps dt/4 Lap) in Fourier, full
// potential step exp(-i dt/eps (V + f(|u|^2))) pointwise (exact, |u| frozen),
// half kinetic. All multipliers are unit modulus so mass is conserved to
// rounding. Second order in dt at fixed eps.
class StrangPropagator {
  public:
    StrangPropagator(const EpsProblem& prob, double dt);

    void step(Field& u);
    double dt() const { return dt_; }
    const EpsProblem& problem() const { return prob_; }

  private:
    void kinetic(Field& u, const cplx* mult);
    void half_kinetic(Field& u) { kinetic(u, half_kin_.data()); }
    void full_kinetic(Field& u) { kinetic(u, full_kin_.data()); }
    void potential_step(Field& u);

    EpsProblem prob_;
    double dt_;
    kernels::aligned_vector<cplx> half_kin_;  // exp(-i eps |k|^2 dt/4) / size
    kernels::aligned_vector<cplx> full_kin_;  // exp(-i eps |k|^2 dt/2) / size
    kernels::aligned_vector<cplx> coeff_, phase_factor_;
    kernels::aligned_vector<double> rho_;

    // simulate fuses the trailing and leading kinetic half-steps of adjacent
    // steps into one full multiplier, halving the transform count per step.
    friend Field simulate(const Field& u0, const EpsProblem& prob, const SimOptions& opt);
};

struct SimOptions {
    double t_end = 1.0;
    double dt = 1e-3;          // upper bound; actual step is t_end / ceil(t_end / dt)
    int sample_every = 1;      // observer cadence in steps (0: endpoints only)
    std::function<void(double, const Field&)> observer;
};

// Runs the propagator, invoking the observer at t = 0, every sample_every
// steps, and at t_end. Throws NonFiniteFieldError if the state blows up.
Field simulate(const Field& u0, const EpsProblem& prob, const SimOptions& opt);

// Step actually used for a requested bound (exact divider of t_end).
double resolve_dt(double t_end, double dt_request);

// Invariants: mass int |u|^2 and energy
//   H = (1/2) ||eps grad u||_L2^2 + int V |u|^2 + int F(|u|^2).
double mass(const Field& u);
double hamiltonian(const Field& u, const EpsProblem& prob);

// Snapshots: 1-D fields as CSV (x,re,im), 2-D fields as packed binary with a
// 24-byte header (u64 dim, u64 n, f64 period, little endian) followed by
// row-major re/im pairs. read_snapshot sniffs the format.
void write_snapshot(const std::string& path, const Field& f);
Field read_snapshot(const std::string& path);

}  // namespace gplab::schrodinger
