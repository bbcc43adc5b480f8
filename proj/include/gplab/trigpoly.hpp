#pragma once

#include <cmath>
#include <vector>

#include "gplab/field.hpp"

namespace gplab {

// Band-limited data profile: constant + sum_k [ccos_k cos(k u) + csin_k sin(k u)]
// with u = 2 pi x / period, so every term is an exact grid mode. On 2-D grids
// the profile varies along x only.
struct TrigTerm {
    int k = 1;
    cplx ccos{0.0, 0.0};
    cplx csin{0.0, 0.0};
};

struct TrigPoly {
    cplx constant{0.0, 0.0};
    std::vector<TrigTerm> terms;

    cplx eval(double u) const {
        cplx v = constant;
        for (const auto& t : terms)
            v += t.ccos * std::cos(double(t.k) * u) + t.csin * std::sin(double(t.k) * u);
        return v;
    }

    bool is_real() const {
        if (constant.imag() != 0.0) return false;
        for (const auto& t : terms)
            if (t.ccos.imag() != 0.0 || t.csin.imag() != 0.0) return false;
        return true;
    }

    bool is_zero() const {
        if (constant != cplx(0.0, 0.0)) return false;
        for (const auto& t : terms)
            if (t.ccos != cplx(0.0, 0.0) || t.csin != cplx(0.0, 0.0)) return false;
        return true;
    }

    int max_mode() const {
        int m = 0;
        for (const auto& t : terms) m = std::max(m, std::abs(t.k));
        return m;
    }

    Field sample(const Grid& g) const {
        const double w = 2.0 * M_PI / g.period;
        return Field::sample(g, [&](double x, double) { return eval(w * x); });
    }

    Field sample_real(const Grid& g) const {
        if (!is_real()) throw InvalidArgumentError("profile must have real coefficients");
        Field f = sample(g);
        return f.take_real(0.0);
    }

    // exp(i * poly) for unimodular amplitudes; poly must be real
    Field sample_exp_i(const Grid& g) const {
        if (!is_real()) throw InvalidArgumentError("exponent profile must be real");
        const double w = 2.0 * M_PI / g.period;
        return Field::sample(g, [&](double x, double) {
            const double th = eval(w * x).real();
            return cplx(std::cos(th), std::sin(th));
        });
    }

    double min_abs2_on(const Grid& g) const {
        const Field f = sample(g);
        kernels::aligned_vector<double> rho(f.size());
        kernels::abs2(rho.data(), f.data(), f.size());
        return kernels::min_value(rho.data(), rho.size());
    }
};

}  // namespace gplab
