// AVX2 variants of the pointwise kernels. Each map performs the same
// IEEE multiply/add/sub combination per element as the scalar reference
// (no FMA), so map outputs are bit-identical; sum reductions accumulate
// in a fixed lane order and are equivalence-tested against scalar.

#if defined(__x86_64__)

#include "gplab/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace gplab::kernels::avx2 {

namespace {

inline const double* dptr(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(cplx* p) { return reinterpret_cast<double*>(p); }

// [ur*wr - ui*wi, ui*wr + ur*wi] for two complex doubles per register
inline __m256d cmul2(__m256d u, __m256d w) {
    __m256d wre = _mm256_movedup_pd(w);          // [wr0, wr0, wr1, wr1]
    __m256d wim = _mm256_permute_pd(w, 0xF);     // [wi0, wi0, wi1, wi1]
    __m256d usw = _mm256_permute_pd(u, 0x5);     // [ui0, ur0, ui1, ur1]
    __m256d t1 = _mm256_mul_pd(u, wre);
    __m256d t2 = _mm256_mul_pd(usw, wim);
    return _mm256_addsub_pd(t1, t2);
}

}  // namespace

void cmul(cplx* u, const cplx* w, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(dptr(u + i));
        __m256d b = _mm256_loadu_pd(dptr(w + i));
        _mm256_storeu_pd(dptr(u + i), cmul2(a, b));
    }
    if (i < n) scalar::cmul(u + i, w + i, n - i);
}

void cmul_to(cplx* out, const cplx* u, const cplx* w, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(dptr(u + i));
        __m256d b = _mm256_loadu_pd(dptr(w + i));
        _mm256_storeu_pd(dptr(out + i), cmul2(a, b));
    }
    if (i < n) scalar::cmul_to(out + i, u + i, w + i, n - i);
}

void scale(cplx* u, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(dptr(u + i));
        _mm256_storeu_pd(dptr(u + i), _mm256_mul_pd(a, vs));
    }
    if (i < n) scalar::scale(u + i, s, n - i);
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    const __m256d are = _mm256_set1_pd(alpha.real());
    const __m256d aim = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(dptr(x + i));
        __m256d yv = _mm256_loadu_pd(dptr(y + i));
        __m256d xsw = _mm256_permute_pd(xv, 0x5);
        __m256d t1 = _mm256_mul_pd(xv, are);
        __m256d t2 = _mm256_mul_pd(xsw, aim);
        _mm256_storeu_pd(dptr(y + i), _mm256_add_pd(yv, _mm256_addsub_pd(t1, t2)));
    }
    if (i < n) scalar::axpy(y + i, alpha, x + i, n - i);
}

void abs2(double* out, const cplx* u, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(dptr(u + i));      // [r0,i0,r1,i1]
        __m256d b = _mm256_loadu_pd(dptr(u + i + 2));  // [r2,i2,r3,i3]
        __m256d sa = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(a, a));  // [s0,s0,s1,s1]
        __m256d sb = _mm256_hadd_pd(_mm256_mul_pd(b, b), _mm256_mul_pd(b, b));  // [s2,s2,s3,s3]
        __m256d packed = _mm256_shuffle_pd(sa, sb, 0x0);                        // [s0,s2,s1,s3]
        packed = _mm256_permute4x64_pd(packed, _MM_SHUFFLE(3, 1, 2, 0));        // [s0,s1,s2,s3]
        _mm256_storeu_pd(out + i, packed);
    }
    if (i < n) scalar::abs2(out + i, u + i, n - i);
}

double sum_abs2(const cplx* u, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(dptr(u + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(a, a));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        s += re * re + im * im;
    }
    return s;
}

double max_abs2(const cplx* u, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d a = _mm256_loadu_pd(dptr(u + i));
        __m256d sq = _mm256_mul_pd(a, a);
        acc = _mm256_max_pd(acc, _mm256_hadd_pd(sq, sq));  // [s0,s0,s1,s1]
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        m = std::max(m, re * re + im * im);
    }
    return m;
}

double sum_sq(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(a, a));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs(const double* x, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(signmask, a));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) s += std::abs(x[i]);
    return s;
}

double max_abs(const double* x, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(x + i);
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(signmask, a));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
    return m;
}

double min_value(const double* x, std::size_t n) {
    double m = x[0];
    std::size_t i = 0;
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
        alignas(32) double lanes[4];
        _mm256_store_pd(lanes, acc);
        m = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
    }
    for (; i < n; ++i) m = std::min(m, x[i]);
    return m;
}

}  // namespace gplab::kernels::avx2

#endif  // __x86_64__
