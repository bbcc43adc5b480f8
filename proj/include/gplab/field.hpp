#pragma once

#include <complex>
#include <functional>
#include <utility>

#include "gplab/grid.hpp"
#include "gplab/kernels.hpp"

namespace gplab {

using cplx = std::complex<double>;

enum class FieldKind { complex_valued, real_valued };

// Function sampled at the collocation points of a Grid. Real-kind fields
// are stored as complex with a zero imaginary part (guarded to 1e-12).
class Field {
public:
    Field() = default;
    Field(Grid grid, FieldKind kind)
        : grid_(grid), kind_(kind), v_(grid.size(), cplx(0.0, 0.0)) {}

    static Field zeros(const Grid& g, FieldKind kind = FieldKind::complex_valued) {
        return Field(g, kind);
    }

    static Field constant(const Grid& g, cplx c) {
        Field f(g, c.imag() == 0.0 ? FieldKind::real_valued : FieldKind::complex_valued);
        for (auto& v : f.v_) v = c;
        return f;
    }

    // Sample a complex-valued function of the coordinates (x) or (x, y).
    template <class F>
    static Field sample(const Grid& g, F&& fn) {
        Field f(g, FieldKind::complex_valued);
        if (g.dim == 1) {
            for (int i = 0; i < g.n; ++i) f.v_[i] = cplx(fn(g.coord(i), 0.0));
        } else {
            for (int ix = 0; ix < g.n; ++ix)
                for (int iy = 0; iy < g.n; ++iy)
                    f.v_[g.index(ix, iy)] = cplx(fn(g.coord(ix), g.coord(iy)));
        }
        return f;
    }

    // Sample a real-valued function; the result is a real-kind field.
    template <class F>
    static Field sample_real(const Grid& g, F&& fn) {
        Field f(g, FieldKind::real_valued);
        if (g.dim == 1) {
            for (int i = 0; i < g.n; ++i) f.v_[i] = cplx(static_cast<double>(fn(g.coord(i), 0.0)), 0.0);
        } else {
            for (int ix = 0; ix < g.n; ++ix)
                for (int iy = 0; iy < g.n; ++iy)
                    f.v_[g.index(ix, iy)] = cplx(static_cast<double>(fn(g.coord(ix), g.coord(iy))), 0.0);
        }
        return f;
    }

    const Grid& grid() const { return grid_; }
    FieldKind kind() const { return kind_; }
    std::size_t size() const { return v_.size(); }

    cplx* data() { return v_.data(); }
    const cplx* data() const { return v_.data(); }
    cplx& operator[](std::size_t i) { return v_[i]; }
    const cplx& operator[](std::size_t i) const { return v_[i]; }

    // Largest |Im| over the samples; the real-kind invariant is
    // max_imag() <= 1e-12.
    double max_imag() const;
    bool is_finite() const;

    // Drop the imaginary part after checking it is below `tol`; marks the
    // field real-kind. Used by operations whose result is analytically real.
    Field& take_real(double tol = 1e-12);
    Field& mark_complex() { kind_ = FieldKind::complex_valued; return *this; }

    // In-place arithmetic (same grid required).
    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double s);
    Field& operator*=(cplx s);

    friend Field operator+(Field a, const Field& b) { a += b; return a; }
    friend Field operator-(Field a, const Field& b) { a -= b; return a; }
    friend Field operator*(Field a, double s) { a *= s; return a; }
    friend Field operator*(double s, Field a) { a *= s; return a; }

private:
    Grid grid_;
    FieldKind kind_ = FieldKind::complex_valued;
    kernels::aligned_vector<cplx> v_;
};

void require_same_grid(const Field& a, const Field& b, const char* what = "fields");
void require_same_grid(const Field& a, const Grid& g, const char* what = "field");

// out[i] = a[i] * b[i]
Field hadamard(const Field& a, const Field& b);

}  // namespace gplab
