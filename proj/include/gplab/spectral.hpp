#pragma once

#include <vector>

#include "gplab/field.hpp"

namespace gplab::spectral {

struct NormKind {
    enum class Tag { L2, Linf, Hs };
    Tag tag = Tag::L2;
    double s = 0.0;  // Sobolev exponent, Hs only (s >= 0)

    static NormKind l2() { return {Tag::L2, 0.0}; }
    static NormKind linf() { return {Tag::Linf, 0.0}; }
    static NormKind hs(double s) {
        if (s < 0.0) throw InvalidArgumentError("Hs norm requires s >= 0");
        return {Tag::Hs, s};
    }
    const char* name() const {
        switch (tag) {
            case Tag::L2: return "L2";
            case Tag::Linf: return "Linf";
            default: return "Hs";
        }
    }
};

// Unnormalized DFT (sign = -1 forward, +1 backward) on the grid's
// collocation layout. Plans are cached per (dim, n, sign); plan creation
// is serialized, execution is thread-safe on distinct buffers.
void dft(const Grid& g, const cplx* in, cplx* out, int sign);

// Fourier coefficients c_k = (1/size) sum_j f_j exp(-i k x_j), FFT order.
kernels::aligned_vector<cplx> to_coeffs(const Field& f);
Field from_coeffs(const Grid& g, const kernels::aligned_vector<cplx>& coeffs);

// Spectral derivative along one axis (Nyquist mode zeroed so real fields
// stay real); exact for trigonometric polynomials below Nyquist.
Field gradient_axis(const Field& f, int axis);
std::vector<Field> gradient(const Field& f);

// Fourier multiplier -|k|^2.
Field laplacian(const Field& f);

// L2 via quadrature weight dx^dim, Linf as max modulus over samples,
// Hs via sqrt(L^dim sum (1+|k|^2)^s |c_k|^2); Hs(0) == L2.
double norm(const Field& f, NormKind kind);

// Zero-padded spectral interpolation onto a finer grid with the same
// period; exact on band-limited fields.
Field resample(const Field& f, const Grid& finer);

// 2/3-rule dealiasing: zero modes with |k_axis| > n/3 on every axis.
Field dealias_two_thirds(const Field& f);

// Mean value (k = 0 coefficient).
cplx mean(const Field& f);

}  // namespace gplab::spectral
