#pragma once

#include <string>
#include <vector>

#include "gplab/field.hpp"
#include "gplab/phase_amplitude.hpp"
#include "gplab/schrodinger.hpp"

namespace gplab::hydro {

// Quadratic observables of the wave function: density |u|^2 and momentum
// eps Im(conj(u) grad u) per axis, both real fields.
struct Observables {
    Field density;
    std::vector<Field> momentum;
};

Observables observables(const Field& u, double eps);

// Modulated energy against a target density/velocity pair (rho, grad phi):
//   E = eps^{-2} int sum_ax |eps d_ax u - i u d_ax phi|^2 + (|u|^2 - rho)^2.
double modulated_energy(const Field& u, const Field& rho, const Field& phi, double eps);

struct HydroSample {
    double t = 0.0;
    double menergy = 0.0;
    double density_err_l2 = 0.0;
    double momentum_err_l1 = 0.0;
};

struct HydroRecord {
    double eps = 0.0;
    std::vector<HydroSample> samples;

    const HydroSample& final_sample() const { return samples.back(); }
};

// Runs the splitting solver from u0 alongside the stored eps = 0 limit
// trajectory and records the modulated energy and the observable errors at
// n_samples evenly spaced times (plus t = 0). dt is an upper bound on the
// step, refined so samples land on steps exactly.
HydroRecord track_hydro_limit(const Field& u0, const schrodinger::EpsProblem& prob,
                              const phase_amplitude::Trajectory& limit, double t_end, double dt,
                              int n_samples);

// Smallest C >= 0 with E(t) <= bound_factor (E(0) + 1) e^{C t} at every
// sample, and the corresponding check for a given C.
double gronwall_rate(const HydroRecord& rec, double bound_factor = 2.0);
bool gronwall_holds(const HydroRecord& rec, double C, double bound_factor = 2.0);

// CSV columns: t, E_eps, density_err_L2, momentum_err_L1.
void write_record_csv(const HydroRecord& rec, const std::string& path);

}  // namespace gplab::hydro
