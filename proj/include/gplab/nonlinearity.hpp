#pragma once

#include "gplab/errors.hpp"

namespace gplab {

// Defocusing pressure laws. f is the chemical potential, F its primitive
// normalized so the quiescent background costs nothing (cubic: F(1) = 0;
// cubic-quintic: F(0) = 0). fprime drives the hyperbolicity margin of the
// phase-amplitude system.
struct Nonlinearity {
    enum class Kind { cubic, cubic_quintic };

    Kind kind = Kind::cubic;
    double lambda = 0.0;  // cubic-quintic only

    static Nonlinearity cubic() { return {Kind::cubic, 0.0}; }
    static Nonlinearity cubic_quintic(double lambda) { return {Kind::cubic_quintic, lambda}; }

    double f(double rho) const {
        return kind == Kind::cubic ? rho - 1.0 : rho * rho + lambda * rho;
    }
    double fprime(double rho) const {
        return kind == Kind::cubic ? 1.0 : 2.0 * rho + lambda;
    }
    double F(double rho) const {
        if (kind == Kind::cubic) {
            const double d = rho - 1.0;
            return 0.5 * d * d;
        }
        return rho * rho * rho / 3.0 + 0.5 * lambda * rho * rho;
    }
    const char* name() const { return kind == Kind::cubic ? "cubic" : "cubic-quintic"; }
};

}  // namespace gplab
