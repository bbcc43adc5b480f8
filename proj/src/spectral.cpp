#include "gplab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "gplab/errors.hpp"

namespace gplab::spectral {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft on
// distinct buffers is. Plans are created once per (dim, n, sign) on aligned
// scratch buffers and reused with the new-array interface, so every caller
// must hand in 64-byte aligned arrays (aligned_vector guarantees this) and
// distinct in/out arrays: the plan is out-of-place, and the new-array
// execute requires the same in-place-ness as the plan.
class PlanCache {
  public:
    fftw_plan get(int dim, int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::size_t size = (dim == 1) ? std::size_t(n) : std::size_t(n) * n;
        kernels::aligned_vector<cplx> src(size), dst(size);
        auto* in = reinterpret_cast<fftw_complex*>(src.data());
        auto* out = reinterpret_cast<fftw_complex*>(dst.data());
        fftw_plan p = (dim == 1)
                          ? fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE)
                          : fftw_plan_dft_2d(n, n, in, out, sign, FFTW_ESTIMATE);
        if (!p) throw Error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

void dft(const Grid& g, const cplx* in, cplx* out, int sign) {
    fftw_plan p = plan_cache().get(g.dim, g.n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

kernels::aligned_vector<cplx> to_coeffs(const Field& f) {
    kernels::aligned_vector<cplx> c(f.size());
    dft(f.grid(), f.data(), c.data(), FFTW_FORWARD);
    kernels::scale(c.data(), 1.0 / double(f.size()), c.size());
    return c;
}

Field from_coeffs(const Grid& g, const kernels::aligned_vector<cplx>& coeffs) {
    if (coeffs.size() != g.size()) throw InvalidArgumentError("coefficient count does not match grid");
    Field out = Field::zeros(g, FieldKind::complex_valued);
    dft(g, coeffs.data(), out.data(), FFTW_BACKWARD);
    return out;
}

namespace {

// Applies an in-Fourier multiplier m(kx[, ky]) and transforms back with the
// 1/size normalization folded into the multiplier.
template <class Mult>
Field apply_multiplier(const Field& f, Mult&& m, bool preserves_real) {
    const Grid& g = f.grid();
    kernels::aligned_vector<cplx> c(f.size());
    dft(g, f.data(), c.data(), FFTW_FORWARD);
    const double inv = 1.0 / double(f.size());
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) c[std::size_t(i)] *= m(g.wavenumber(i), 0.0) * inv;
    } else {
        for (int iy = 0; iy < g.n; ++iy) {
            const double ky = g.wavenumber(iy);
            for (int ix = 0; ix < g.n; ++ix)
                c[g.index(ix, iy)] *= m(g.wavenumber(ix), ky) * inv;
        }
    }
    Field out = Field::zeros(g, FieldKind::complex_valued);
    dft(g, c.data(), out.data(), FFTW_BACKWARD);
    if (preserves_real && f.kind() == FieldKind::real_valued) return out.take_real(1e-9);
    return out;
}

}  // namespace

Field gradient_axis(const Field& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim) throw InvalidArgumentError("gradient axis out of range");
    const int nyq = g.n / 2;
    auto mult = [&](double kx, double ky) -> cplx {
        const double k = (axis == 0) ? kx : ky;
        // wavenumber(n/2) is -pi*n/L; derivative of a real field must stay
        // real, so the unpaired Nyquist mode is dropped.
        if (std::abs(k) >= (2.0 * M_PI / g.period) * (double(nyq) - 0.5)) return {0.0, 0.0};
        return {0.0, k};
    };
    return apply_multiplier(f, mult, true);
}

std::vector<Field> gradient(const Field& f) {
    std::vector<Field> out;
    out.reserve(std::size_t(f.grid().dim));
    for (int a = 0; a < f.grid().dim; ++a) out.push_back(gradient_axis(f, a));
    return out;
}

Field laplacian(const Field& f) {
    return apply_multiplier(
        f, [](double kx, double ky) -> cplx { return {-(kx * kx + ky * ky), 0.0}; }, true);
}

double norm(const Field& f, NormKind kind) {
    const Grid& g = f.grid();
    switch (kind.tag) {
        case NormKind::Tag::L2:
            return std::sqrt(g.cell_volume() * kernels::sum_abs2(f.data(), f.size()));
        case NormKind::Tag::Linf:
            return std::sqrt(kernels::max_abs2(f.data(), f.size()));
        case NormKind::Tag::Hs: {
            auto c = to_coeffs(f);
            const double vol = std::pow(g.period, g.dim);
            double acc = 0.0;
            if (g.dim == 1) {
                for (int i = 0; i < g.n; ++i) {
                    const double k = g.wavenumber(i);
                    acc += std::pow(1.0 + k * k, kind.s) * std::norm(c[std::size_t(i)]);
                }
            } else {
                for (int iy = 0; iy < g.n; ++iy) {
                    const double ky = g.wavenumber(iy);
                    for (int ix = 0; ix < g.n; ++ix) {
                        const double kx = g.wavenumber(ix);
                        acc += std::pow(1.0 + kx * kx + ky * ky, kind.s) * std::norm(c[g.index(ix, iy)]);
                    }
                }
            }
            return std::sqrt(vol * acc);
        }
    }
    throw InvalidArgumentError("unknown norm kind");
}

Field resample(const Field& f, const Grid& finer) {
    const Grid& g = f.grid();
    finer.validate();
    if (finer.dim != g.dim || finer.period != g.period)
        throw GridMismatchError("resample target must share dim and period");
    if (finer.n < g.n) throw InvalidArgumentError("resample target must not be coarser");
    if (finer.n == g.n) return f;

    auto c = to_coeffs(f);
    kernels::aligned_vector<cplx> cf(finer.size(), cplx(0.0, 0.0));
    auto dest = [&](int i) { return (i < g.n / 2) ? i : i + (finer.n - g.n); };
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) cf[std::size_t(dest(i))] = c[std::size_t(i)];
    } else {
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                cf[finer.index(dest(ix), dest(iy))] = c[g.index(ix, iy)];
    }
    Field out = from_coeffs(finer, cf);
    if (f.kind() == FieldKind::real_valued) return out.take_real(1e-9);
    return out;
}

Field dealias_two_thirds(const Field& f) {
    const Grid& g = f.grid();
    const int cutoff = g.n / 3;
    auto keep = [&](int i) { return std::abs(g.mode_index(i)) <= cutoff; };
    auto c = to_coeffs(f);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i)
            if (!keep(i)) c[std::size_t(i)] = 0.0;
    } else {
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix)
                if (!keep(ix) || !keep(iy)) c[g.index(ix, iy)] = 0.0;
    }
    Field out = from_coeffs(g, c);
    if (f.kind() == FieldKind::real_valued) return out.take_real(1e-9);
    return out;
}

cplx mean(const Field& f) {
    cplx acc = 0.0;
    const cplx* p = f.data();
    for (std::size_t i = 0; i < f.size(); ++i) acc += p[i];
    return acc / double(f.size());
}

}  // namespace gplab::spectral
