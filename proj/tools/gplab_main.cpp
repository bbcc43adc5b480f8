#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gplab/config.hpp"
#include "gplab/errors.hpp"
#include "gplab/studies.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitAssert = 3;
constexpr int kExitSolver = 4;

std::vector<double> parse_eps_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t comma = csv.find(',', pos);
        const std::string tok =
            csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (...) {
            throw gplab::ConfigError("--eps entry '" + tok + "' is not a number");
        }
        if (used != tok.size())
            throw gplab::ConfigError("--eps entry '" + tok + "' is not a number");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gplab: semiclassical Gross-Pitaevskii laboratory"};
    app.require_subcommand(1);

    std::string config_path, eps_csv, out_dir, example;
    int grid_n = 0, dim = 0;
    bool assert_flag = false;

    const std::vector<std::pair<std::string, std::string>> studies = {
        {"riccati", "matrix Riccati eikonal phase against closed forms"},
        {"converge", "WKB approximation error sweep over eps"},
        {"colinsoyeur", "purely oscillatory data against the wave equation limit"},
        {"instability", "supercritical perturbation growth experiment"},
        {"hydro", "modulated energy and hydrodynamic limit tracking"},
    };
    for (const auto& [name, desc] : studies) {
        auto* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--eps", eps_csv, "comma separated semiclassical parameters");
        sub->add_option("--grid", grid_n, "grid points per axis (power of two)");
        sub->add_option("--dim", dim, "space dimension")->check(CLI::Range(1, 2));
        sub->add_option("--out", out_dir, "artifact output directory");
        sub->add_flag("--assert", assert_flag, "exit 3 when the study fails");
        if (name == "riccati")
            sub->add_option("--example", example,
                            "restrict to one example: harmonic|repulsive|focusing|spreading");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const std::string study = app.get_subcommands().front()->get_name();
    try {
        gplab::Config cfg = config_path.empty() ? gplab::Config::defaults_for(study)
                                                : gplab::load_config_file(config_path, study);
        if (cfg.study != study) {
            std::fprintf(stderr, "config error: file selects study '%s' but subcommand is '%s'\n",
                         cfg.study.c_str(), study.c_str());
            return kExitConfig;
        }
        if (!eps_csv.empty()) cfg.eps = parse_eps_list(eps_csv);
        if (grid_n > 0) cfg.grid_n = grid_n;
        if (dim > 0) cfg.grid_dim = dim;
        if (!out_dir.empty()) cfg.out = out_dir;
        if (!example.empty()) cfg.example = example;
        cfg.assert_mode = assert_flag;

        const auto violations = gplab::validate(cfg);
        if (!violations.empty()) {
            for (const auto& v : violations) std::fprintf(stderr, "config error: %s\n", v.c_str());
            return kExitConfig;
        }

        const auto result = gplab::studies::run_study(cfg);
        std::printf("%s\n", gplab::studies::summary_line(result).c_str());
        if (!result.pass && cfg.assert_mode) return kExitAssert;
        return kExitOk;
    } catch (const gplab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const gplab::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitConfig;
    } catch (const gplab::InvalidArgumentError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const gplab::Error& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return kExitSolver;
    }
}
