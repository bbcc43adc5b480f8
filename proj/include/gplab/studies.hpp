#pragma once

#include <string>

#include "gplab/config.hpp"

namespace gplab::studies {

struct StudyResult {
    std::string name;
    bool pass = false;
    std::string metric;
    double value = 0.0;
};

// Runs the configured study, writes its CSV artifacts under config.out, and
// returns the pass/fail verdict with the headline metric. Throws on config
// or solver failures.
StudyResult run_study(const Config& c);

// `STUDY <name> PASS|FAIL <metric>=<value>`
std::string summary_line(const StudyResult& r);

}  // namespace gplab::studies
