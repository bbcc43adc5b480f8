#pragma once

#include <string>
#include <vector>

#include "gplab/field.hpp"
#include "gplab/nonlinearity.hpp"

namespace gplab::phase_amplitude {

// Phase-amplitude form of the semiclassical equation: u = a exp(i Phi / eps)
// with
//   Phi_t + (1/2)|grad Phi|^2 + f(|a|^2) + V = 0
//   a_t + grad Phi . grad a + (a/2) Lap Phi = i (eps/2) Lap a.
// eps = 0 drops the dispersive right side and gives the limit system; the
// solution is then eps-independent and feeds the corrector.
struct GrenierInput {
    Field a0;         // complex amplitude
    Field phi0;       // real phase
    Field potential;  // real, optional (zero-size means V == 0)
    double eps = 0.0;
    Nonlinearity nl = Nonlinearity::cubic();
};

struct PhaseAmpParams {
    double t_end = 1.0;
    double dt = 1e-3;          // upper bound; actual step divides t_end exactly
    int store_every = 1;       // dense-output node cadence in steps
    double delta_min = 1e-3;   // hyperbolicity floor for f'(|a|^2)
    double blowup_factor = 10.0;  // smooth-window cap on |a| and |grad phi| growth
};

// Stored trajectory with cubic Hermite dense output between nodes (state and
// time derivative kept per node). Also reused for the corrector pair
// (phi1, a1), which shares the same storage shape.
class Trajectory {
  public:
    Field phi(double t) const;  // real
    Field a(double t) const;    // complex

    double t_end() const { return times_.empty() ? 0.0 : times_.back(); }
    double eps() const { return eps_; }
    const Grid& grid() const { return grid_; }
    const Nonlinearity& nonlinearity() const { return nl_; }
    // min over the run of min_x f'(|a|^2); meaningful for nonlinear solves
    double min_margin() const { return min_margin_; }
    std::size_t node_count() const { return times_.size(); }
    double node_time(std::size_t i) const { return times_.at(i); }

  private:
    friend Trajectory solve_grenier(const GrenierInput&, const PhaseAmpParams&);
    friend Trajectory solve_corrector(const Trajectory&, const Field&, const PhaseAmpParams&);

    std::size_t segment(double t) const;
    Field interp(const std::vector<Field>& y, const std::vector<Field>& d, double t) const;

    Grid grid_{};
    double eps_ = 0.0;
    Nonlinearity nl_ = Nonlinearity::cubic();
    double min_margin_ = 0.0;
    std::vector<double> times_;
    std::vector<Field> phi_, dphi_, a_, da_;
};

// RK4 in time, spectral in space. Initial data with min f'(|a0|^2) below
// delta_min is rejected before stepping (EllipticRegionError naming the
// violated bound); a margin dip below delta_min/2 during the run throws the
// same error with the offending time. Growth of |a| or |grad phi| past
// blowup_factor times the initial scale aborts with SmoothWindowError
// (left the smooth-solution window); non-finite states throw
// NonFiniteFieldError.
Trajectory solve_grenier(const GrenierInput& in, const PhaseAmpParams& p);

// First corrector around the eps = 0 trajectory (phi, a):
//   phi1_t + grad phi . grad phi1 + 2 f'(|a|^2) Re(conj(a) a1) = 0
//   a1_t + grad phi . grad a1 + grad phi1 . grad a
//        + (a1/2) Lap phi + (a/2) Lap phi1 = (i/2) Lap a
// with phi1(0) = 0, a1(0) given. The system is eps-independent, so one solve
// serves a whole eps sweep.
Trajectory solve_corrector(const Trajectory& limit, const Field& a1_init,
                           const PhaseAmpParams& p);

// Pointwise a exp(i phase / eps).
Field reconstruct(const Field& a, const Field& phase, double eps);
// Same from a trajectory with eps > 0: a(t) exp(i phi(t)/eps).
Field reconstruct(const Trajectory& traj, double t);

// min over x of f'(|a|^2).
double hyperbolicity_margin(const Field& a, const Nonlinearity& nl);

// Stable-step estimate for the RK4 discretization: the dispersive term
// contributes (eps/2) kmax^2 on the imaginary axis, transport roughly
// speed * kmax.
double suggested_dt(const Grid& g, double eps, double speed_bound);

// Limit trajectory plus corrector; the two-term approximation is
// a exp(i phi1) exp(i phi/eps), the leading one drops the corrector phase.
struct WkbBundle {
    Trajectory limit;
    Trajectory corrector;

    Field approx(double eps, double t) const;
    Field leading(double eps, double t) const;
};

WkbBundle build_bundle(const GrenierInput& limit_data, const Field& a1_init,
                       const PhaseAmpParams& p);

Field wkb_approx(const WkbBundle& bundle, double t, double eps);

// Time-slice CSV (1-D grids): x, |a|, phi, Re a1, Im a1, phi1.
void export_bundle_csv(const WkbBundle& bundle, double t, const std::string& path);

}  // namespace gplab::phase_amplitude
