#pragma once

#include <map>
#include <string>
#include <vector>

#include "gplab/nonlinearity.hpp"
#include "gplab/trigpoly.hpp"

namespace gplab {

// Experiment description: one of the five studies plus grid, sweep, data
// catalogue, and dt policy. Built-in defaults per study let every subcommand
// run without a file; JSON configs and CLI flags override field by field.
struct Config {
    std::string study;  // riccati | converge | colinsoyeur | instability | hydro

    int grid_n = 256;
    int grid_dim = 1;
    double period = 2.0 * M_PI;

    std::vector<double> eps;  // strictly decreasing in (0, 1]
    Nonlinearity nl = Nonlinearity::cubic();

    double dt0 = 5e-3;      // splitting step bound is eps * dt0
    double t_end = 0.5;
    double alpha = 0.5;     // instability exponent
    double delta_min = 1e-3;
    int n_samples = 8;      // hydro sampling
    int riccati_dim = 2;    // matrix order for the riccati study
    double riccati_omega = 1.0;

    std::string example;  // riccati: harmonic | repulsive | focusing | spreading | ""
    std::string out = "out";
    bool assert_mode = false;

    std::map<std::string, TrigPoly> data;  // a0, a1, phi0, theta0

    static Config defaults_for(const std::string& study);

    Grid grid() const { return Grid{grid_dim, grid_n, period}; }
    const TrigPoly& entry(const std::string& name) const;
    bool has_entry(const std::string& name) const { return data.count(name) > 0; }
};

// Parse a JSON config file / string over study defaults. When the JSON has
// no "study" key, default_study supplies it (CLI subcommand). Throws
// ConfigError on malformed input.
Config load_config_file(const std::string& path, const std::string& default_study = "");
Config parse_config(const std::string& text, const std::string& default_study = "");

// Pure validation; returns human-readable violations (empty = ok).
std::vector<std::string> validate(const Config& c);

}  // namespace gplab
