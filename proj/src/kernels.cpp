#include "gplab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

namespace gplab::kernels {

namespace {

Backend detect_backend() {
    const char* env = std::getenv("GPLAB_KERNELS");
    if (env) {
        std::string s(env);
        if (s == "scalar") return Backend::scalar;
        if (s == "avx2" && avx2_available()) return Backend::avx2;
        // "auto" or anything unrecognized falls through to detection
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

Backend g_backend = detect_backend();

}  // namespace

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
    g_backend = b;
}

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

// ---- scalar reference implementations ----------------------------------

namespace scalar {

void cmul(cplx* u, const cplx* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ur = u[i].real(), ui = u[i].imag();
        const double wr = w[i].real(), wi = w[i].imag();
        u[i] = {ur * wr - ui * wi, ui * wr + ur * wi};
    }
}

void cmul_to(cplx* out, const cplx* u, const cplx* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ur = u[i].real(), ui = u[i].imag();
        const double wr = w[i].real(), wi = w[i].imag();
        out[i] = {ur * wr - ui * wi, ui * wr + ur * wi};
    }
}

void scale(cplx* u, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) u[i] = {u[i].real() * s, u[i].imag() * s};
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = {y[i].real() + (xr * ar - xi * ai), y[i].imag() + (xi * ar + xr * ai)};
    }
}

void abs2(double* out, const cplx* u, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        out[i] = re * re + im * im;
    }
}

double sum_abs2(const cplx* u, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        s += re * re + im * im;
    }
    return s;
}

double max_abs2(const cplx* u, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        m = std::max(m, re * re + im * im);
    }
    return m;
}

double sum_sq(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i]);
    return s;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double min_value(const double* x, std::size_t n) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) m = std::min(m, x[i]);
    return m;
}

}  // namespace scalar

// ---- dispatch -----------------------------------------------------------

#if defined(__x86_64__)
#define GPLAB_DISPATCH(fn, ...) \
    do { \
        if (g_backend == Backend::avx2) return avx2::fn(__VA_ARGS__); \
        return scalar::fn(__VA_ARGS__); \
    } while (0)
#else
#define GPLAB_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

void cmul(cplx* u, const cplx* w, std::size_t n) { GPLAB_DISPATCH(cmul, u, w, n); }
void cmul_to(cplx* out, const cplx* u, const cplx* w, std::size_t n) { GPLAB_DISPATCH(cmul_to, out, u, w, n); }
void scale(cplx* u, double s, std::size_t n) { GPLAB_DISPATCH(scale, u, s, n); }
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) { GPLAB_DISPATCH(axpy, y, alpha, x, n); }
void abs2(double* out, const cplx* u, std::size_t n) { GPLAB_DISPATCH(abs2, out, u, n); }
double sum_abs2(const cplx* u, std::size_t n) { GPLAB_DISPATCH(sum_abs2, u, n); }
double max_abs2(const cplx* u, std::size_t n) { GPLAB_DISPATCH(max_abs2, u, n); }
double sum_sq(const double* x, std::size_t n) { GPLAB_DISPATCH(sum_sq, x, n); }
double sum_abs(const double* x, std::size_t n) { GPLAB_DISPATCH(sum_abs, x, n); }
double max_abs(const double* x, std::size_t n) { GPLAB_DISPATCH(max_abs, x, n); }
double min_value(const double* x, std::size_t n) { GPLAB_DISPATCH(min_value, x, n); }

#undef GPLAB_DISPATCH

void expi(cplx* w, const double* theta, std::size_t n) {
    // libm on every backend, plus one Newton step for 1/sqrt(c^2+s^2).
    // Raw (cos, sin) has modulus 1 +- ulp, which applied over thousands of
    // steps drifts conserved quantities linearly; the correction leaves a
    // modulus error of O(ulp^2) so the drift stays at rounding noise.
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(theta[i]);
        const double s = std::sin(theta[i]);
        const double r = 1.5 - 0.5 * (c * c + s * s);
        w[i] = {c * r, s * r};
    }
}

}  // namespace gplab::kernels
