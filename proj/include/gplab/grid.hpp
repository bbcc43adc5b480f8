#pragma once

#include <array>
#include <cstddef>

#include "gplab/errors.hpp"

namespace gplab {

// Periodic uniform collocation grid on [0, L)^dim, dim in {1, 2},
// n points per axis (power of two, >= 8). Wavenumbers per axis are
// 2*pi/L * {-n/2, ..., n/2 - 1} in FFT storage order.
struct Grid {
    int dim = 1;
    int n = 8;          // points per axis
    double period = 1.0;

    Grid() = default;
    Grid(int dim_, int n_, double period_) : dim(dim_), n(n_), period(period_) {
        validate();
    }

    void validate() const {
        if (dim != 1 && dim != 2)
            throw InvalidArgumentError("grid dimension must be 1 or 2");
        if (n < 8 || (n & (n - 1)) != 0)
            throw InvalidArgumentError("points per axis must be a power of two >= 8");
        if (!(period > 0.0))
            throw InvalidArgumentError("grid period must be positive");
    }

    std::size_t size() const {
        std::size_t s = static_cast<std::size_t>(n);
        return dim == 1 ? s : s * s;
    }

    double dx() const { return period / n; }

    // quadrature weight dx^dim
    double cell_volume() const {
        double w = dx();
        return dim == 1 ? w : w * w;
    }

    double coord(int i) const { return period * i / n; }

    // signed integer mode index for FFT slot i: {0,..,n/2-1,-n/2,..,-1}
    int mode_index(int i) const { return i < n / 2 ? i : i - n; }

    // physical wavenumber 2*pi/L * mode_index
    double wavenumber(int i) const {
        return 2.0 * 3.14159265358979323846 * mode_index(i) / period;
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && n == o.n && period == o.period;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

    // flattened row-major index for dim == 2
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(ix) * n + iy;
    }
};

}  // namespace gplab
