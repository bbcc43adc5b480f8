#pragma once

// Pointwise arithmetic kernels used by the spectral operators and the
// time steppers. Every kernel has a scalar reference implementation and
// an AVX2 variant; the backend is selected once at startup (overridable
// via set_backend or the GPLAB_KERNELS environment variable, values
// "scalar" | "avx2" | "auto"). The AVX2 maps perform the same IEEE
// operations in the same per-element order as the scalar code, so map
// outputs are bit-identical across backends; reductions use a fixed
// lane-block order and are checked against scalar to tight tolerances.

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <vector>

namespace gplab::kernels {

enum class Backend { scalar, avx2 };

// Detected-or-overridden backend used by the dispatching kernels below.
Backend active_backend();
void set_backend(Backend b);
bool avx2_available();
const char* backend_name(Backend b);

using cplx = std::complex<double>;

// 64-byte aligned allocator so FFTW and the AVX2 kernels see uniformly
// aligned buffers (new-array FFTW execution requires matching alignment).
template <class T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAllocator() noexcept = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

    T* allocate(std::size_t n) {
        void* p = std::aligned_alloc(alignment, ((n * sizeof(T) + alignment - 1) / alignment) * alignment);
        if (!p) throw std::bad_alloc();
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept { std::free(p); }

    template <class U>
    bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
    template <class U>
    bool operator!=(const AlignedAllocator<U>&) const noexcept { return false; }
};

template <class T>
using aligned_vector = std::vector<T, AlignedAllocator<T>>;

// ---- maps ------------------------------------------------------------

// u[i] *= w[i]
void cmul(cplx* u, const cplx* w, std::size_t n);
// out[i] = u[i] * w[i]
void cmul_to(cplx* out, const cplx* u, const cplx* w, std::size_t n);
// u[i] *= s
void scale(cplx* u, double s, std::size_t n);
// y[i] += alpha * x[i]
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
// out[i] = |u[i]|^2
void abs2(double* out, const cplx* u, std::size_t n);
// w[i] = exp(i * theta[i]); scalar libm sincos on every backend so the
// factors stay unit-modulus to rounding (the splitting substeps rely
// on that for exact mass conservation).
void expi(cplx* w, const double* theta, std::size_t n);

// ---- reductions (fixed evaluation order per backend) -------------------

double sum_abs2(const cplx* u, std::size_t n);   // sum |u[i]|^2
double max_abs2(const cplx* u, std::size_t n);   // max |u[i]|^2
double sum_sq(const double* x, std::size_t n);   // sum x[i]^2
double sum_abs(const double* x, std::size_t n);  // sum |x[i]|
double max_abs(const double* x, std::size_t n);  // max |x[i]|
double min_value(const double* x, std::size_t n);

// ---- per-backend entry points (exposed for the equivalence tests) ------

namespace scalar {
void cmul(cplx* u, const cplx* w, std::size_t n);
void cmul_to(cplx* out, const cplx* u, const cplx* w, std::size_t n);
void scale(cplx* u, double s, std::size_t n);
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
void abs2(double* out, const cplx* u, std::size_t n);
double sum_abs2(const cplx* u, std::size_t n);
double max_abs2(const cplx* u, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double min_value(const double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
// Defined only when compiled on x86-64; guarded by avx2_available() at runtime.
void cmul(cplx* u, const cplx* w, std::size_t n);
void cmul_to(cplx* out, const cplx* u, const cplx* w, std::size_t n);
void scale(cplx* u, double s, std::size_t n);
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
void abs2(double* out, const cplx* u, std::size_t n);
double sum_abs2(const cplx* u, std::size_t n);
double max_abs2(const cplx* u, std::size_t n);
double sum_sq(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
double min_value(const double* x, std::size_t n);
}  // namespace avx2

}  // namespace gplab::kernels
