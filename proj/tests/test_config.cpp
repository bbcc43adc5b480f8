#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gplab/config.hpp"

using namespace gplab;

namespace {

bool has_violation(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

// ==== study defaults ========================================================

TEST_CASE("every study ships runnable defaults") {
    for (const char* study : {"riccati", "converge", "colinsoyeur", "instability", "hydro"}) {
        const Config c = Config::defaults_for(study);
        CHECK(c.study == study);
        CHECK(validate(c).empty());
    }
    CHECK_THROWS_AS(Config::defaults_for("sideways"), ConfigError);
}

TEST_CASE("converge defaults carry the dyadic sweep and data catalogue") {
    const Config c = Config::defaults_for("converge");
    CHECK(c.grid_n == 1024);
    REQUIRE(c.eps.size() == 5);
    CHECK(c.eps.front() == 0.125);
    CHECK(c.eps.back() == doctest::Approx(std::pow(2.0, -7.0)));
    CHECK(c.has_entry("a0"));
    CHECK(c.has_entry("a1"));
    CHECK(c.has_entry("phi0"));
    CHECK(c.entry("phi0").is_real());
    CHECK(!c.has_entry("theta0"));
    CHECK_THROWS_AS(c.entry("theta0"), ConfigError);
}

TEST_CASE("riccati defaults run matrix examples without a grid") {
    const Config c = Config::defaults_for("riccati");
    CHECK(c.t_end == 2.0);
    CHECK(c.example.empty());
    CHECK(c.riccati_dim == 2);
}

// ==== JSON parsing ==========================================================

TEST_CASE("an empty object inherits the subcommand defaults") {
    const Config c = parse_config("{}", "hydro");
    CHECK(c.study == "hydro");
    CHECK(c.n_samples == 8);
    CHECK(validate(c).empty());
}

TEST_CASE("an explicit study key beats the subcommand") {
    const Config c = parse_config(R"({"study": "colinsoyeur"})", "hydro");
    CHECK(c.study == "colinsoyeur");
    CHECK(c.has_entry("theta0"));
}

TEST_CASE("fields merge over defaults one by one") {
    const Config c = parse_config(
        R"({"grid": {"n": 128, "dim": 2}, "t_end": 1.5, "eps": [0.5, 0.25], "out": "elsewhere"})",
        "converge");
    CHECK(c.grid_n == 128);
    CHECK(c.grid_dim == 2);
    CHECK(c.period == doctest::Approx(2.0 * M_PI));
    CHECK(c.t_end == 1.5);
    REQUIRE(c.eps.size() == 2);
    CHECK(c.eps[0] == 0.5);
    CHECK(c.out == "elsewhere");
    CHECK(c.has_entry("a0"));  // untouched defaults survive the merge
}

TEST_CASE("nonlinearity block selects the law") {
    const Config cq = parse_config(
        R"({"nonlinearity": {"type": "cubic_quintic", "lambda": -1.0}})", "converge");
    CHECK(cq.nl.kind == Nonlinearity::Kind::cubic_quintic);
    CHECK(cq.nl.lambda == -1.0);
    CHECK_THROWS_AS(parse_config(R"({"nonlinearity": {"type": "cubic_quintic"}})", "converge"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"nonlinearity": {"type": "septic"}})", "converge"),
                    ConfigError);
}

TEST_CASE("data profiles parse constants and both mode maps") {
    const Config c = parse_config(
        R"({"data": {"a0": {"const": [1.0, 0.25], "cos": {"2": 0.3}, "sin": {"1": [0.0, 0.5]}}}})",
        "converge");
    const TrigPoly& p = c.entry("a0");
    CHECK(p.constant == cplx(1.0, 0.25));
    REQUIRE(p.terms.size() == 2);
    CHECK(!p.is_real());
    CHECK(p.max_mode() == 2);
}

TEST_CASE("malformed profiles are rejected with context") {
    using doctest::Contains;
    CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"a0": {"tan": {"1": 1.0}}}})", "converge"),
                         Contains("unknown key 'tan'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"a0": {"cos": {"two": 1.0}}}})", "converge"),
                         Contains("non-integer mode"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"a0": {"cos": {"0": 1.0}}}})", "converge"),
                         Contains("modes must be positive"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"data": {"a0": {"const": [1.0, 2.0, 3.0]}}})",
                                      "converge"),
                         Contains("must be a number or [re, im]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"data": {"a0": 3.0}})", "converge"), ConfigError);
}

TEST_CASE("malformed documents become ConfigError") {
    CHECK_THROWS_AS(parse_config("not json at all", "hydro"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]", "hydro"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"t_end": "late"})", "hydro"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"frobnicate": 1})", "hydro"), ConfigError);
}

TEST_CASE("config files load from disk") {
    const char* path = "cfg_roundtrip.json";
    {
        std::ofstream os(path);
        os << R"({"study": "instability", "alpha": 0.25})";
    }
    const Config c = load_config_file(path);
    CHECK(c.study == "instability");
    CHECK(c.alpha == 0.25);
    std::remove(path);
    CHECK_THROWS_AS(load_config_file("no/such/file.json"), ConfigError);
}

// ==== validation ============================================================

TEST_CASE("validate names each violated constraint") {
    Config c = Config::defaults_for("converge");

    c.grid_n = 100;
    CHECK(has_violation(validate(c), "power of two"));
    c.grid_n = 4;
    CHECK(has_violation(validate(c), "power of two"));
    c.grid_n = 256;

    c.grid_dim = 3;
    CHECK(has_violation(validate(c), "dim must be 1 or 2"));
    c.grid_dim = 1;

    c.eps = {};
    CHECK(has_violation(validate(c), "epsilon list is empty"));
    c.eps = {0.5, 0.5};
    CHECK(has_violation(validate(c), "strictly decreasing"));
    c.eps = {1.5, 0.25};
    CHECK(has_violation(validate(c), "(0, 1]"));
    c.eps = {0.5, 0.25};

    c.dt0 = 0.0;
    CHECK(has_violation(validate(c), "dt0 must be positive"));
    c.dt0 = 5e-3;

    c.t_end = -1.0;
    CHECK(has_violation(validate(c), "t_end must be positive"));
    c.t_end = 0.5;

    CHECK(validate(c).empty());
}

TEST_CASE("an unknown study is the only violation reported") {
    Config c = Config::defaults_for("hydro");
    c.study = "mystery";
    c.grid_n = 100;  // would also violate, but the study check returns first
    const auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(has_violation(v, "study must be one of"));
}

TEST_CASE("per-study constraints") {
    Config inst = Config::defaults_for("instability");
    inst.alpha = 1.0;
    CHECK(has_violation(validate(inst), "alpha must lie in (0, 1)"));

    Config hyd = Config::defaults_for("hydro");
    hyd.n_samples = 0;
    CHECK(has_violation(validate(hyd), "n_samples"));

    Config ric = Config::defaults_for("riccati");
    ric.riccati_dim = 9;
    CHECK(has_violation(validate(ric), "riccati_dim"));
    ric.riccati_dim = 2;
    ric.riccati_omega = 0.0;
    CHECK(has_violation(validate(ric), "riccati_omega"));
    ric.riccati_omega = 1.0;
    ric.example = "weird";
    CHECK(has_violation(validate(ric), "harmonic|repulsive|focusing|spreading"));
    ric.grid_n = 100;  // the riccati study never touches the grid
    ric.example = "harmonic";
    CHECK(validate(ric).empty());
}

TEST_CASE("required data entries are enforced per study") {
    Config c = Config::defaults_for("converge");
    c.data.erase("a1");
    CHECK(has_violation(validate(c), "missing data entry 'a1'"));

    Config c2 = Config::defaults_for("converge");
    c2.data["phi0"].constant = cplx(0.0, 0.1);
    CHECK(has_violation(validate(c2), "'phi0' must be real"));

    Config c3 = Config::defaults_for("colinsoyeur");
    c3.data.erase("theta0");
    CHECK(has_violation(validate(c3), "missing data entry 'theta0'"));
}

TEST_CASE("the defocusing quintic law needs big enough data") {
    Config c = Config::defaults_for("hydro");
    c.nl = Nonlinearity::cubic_quintic(-1.0);
    c.data["a0"] = TrigPoly{};
    c.data["a0"].constant = 0.3;
    const auto v = validate(c);
    REQUIRE(v.size() == 1);
    CHECK(has_violation(v, "hyperbolicity violated"));
    CHECK(has_violation(v, "(delta_min + |lambda|)/2 = 0.5005"));

    c.data["a0"].constant = 1.0;
    CHECK(validate(c).empty());

    // the focusing branch has no lower bound on the modulus
    c.nl = Nonlinearity::cubic_quintic(1.0);
    c.data["a0"].constant = 0.3;
    CHECK(validate(c).empty());
}

// ==== trig profiles =========================================================

TEST_CASE("profiles sample their closed form on the grid") {
    const Grid g{1, 64, 2.0 * M_PI};
    TrigPoly p;
    p.constant = 1.0;
    TrigTerm t;
    t.k = 2;
    t.ccos = cplx(0.3, 0.0);
    t.csin = cplx(0.0, 0.1);
    p.terms.push_back(t);

    const Field f = p.sample(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g.dx() * double(i);
        const cplx want = 1.0 + 0.3 * std::cos(2.0 * x) + cplx(0.0, 0.1) * std::sin(2.0 * x);
        CHECK(std::abs(f[i] - want) < 1e-14);
    }
    CHECK_THROWS_AS(p.sample_real(g), InvalidArgumentError);
    CHECK_THROWS_AS(p.sample_exp_i(g), InvalidArgumentError);
}

TEST_CASE("unimodular sampling and the modulus floor") {
    const Grid g{1, 64, 2.0 * M_PI};
    TrigPoly p;
    TrigTerm t;
    t.k = 1;
    t.ccos = cplx(0.5, 0.0);
    p.terms.push_back(t);

    const Field e = p.sample_exp_i(g);
    for (std::size_t i = 0; i < e.size(); ++i)
        CHECK(std::abs(std::abs(e[i]) - 1.0) < 1e-15);

    TrigPoly amp;
    amp.constant = 1.0;
    TrigTerm c1;
    c1.k = 1;
    c1.ccos = cplx(0.3, 0.0);
    amp.terms.push_back(c1);
    CHECK(amp.min_abs2_on(g) == doctest::Approx(0.49).epsilon(1e-14));
    CHECK(!amp.is_zero());
    CHECK(TrigPoly{}.is_zero());
}
