#include "gplab/field.hpp"

#include <cmath>

namespace gplab {

double Field::max_imag() const {
    double m = 0.0;
    for (const auto& v : v_) m = std::max(m, std::abs(v.imag()));
    return m;
}

bool Field::is_finite() const {
    for (const auto& v : v_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

Field& Field::take_real(double tol) {
    const double mi = max_imag();
    if (mi > tol)
        throw InvalidArgumentError("field expected real has imaginary part " + std::to_string(mi));
    for (auto& v : v_) v = cplx(v.real(), 0.0);
    kind_ = FieldKind::real_valued;
    return *this;
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
    if (a.grid() != b.grid())
        throw GridMismatchError(std::string(what) + ": fields live on different grids");
}

void require_same_grid(const Field& a, const Grid& g, const char* what) {
    if (a.grid() != g)
        throw GridMismatchError(std::string(what) + ": field does not live on the given grid");
}

Field& Field::operator+=(const Field& o) {
    require_same_grid(*this, o, "field add");
    kernels::axpy(v_.data(), cplx(1.0, 0.0), o.data(), v_.size());
    if (o.kind() == FieldKind::complex_valued) kind_ = FieldKind::complex_valued;
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_grid(*this, o, "field sub");
    kernels::axpy(v_.data(), cplx(-1.0, 0.0), o.data(), v_.size());
    if (o.kind() == FieldKind::complex_valued) kind_ = FieldKind::complex_valued;
    return *this;
}

Field& Field::operator*=(double s) {
    kernels::scale(v_.data(), s, v_.size());
    return *this;
}

Field& Field::operator*=(cplx s) {
    if (s.imag() == 0.0) return (*this) *= s.real();
    for (auto& v : v_) v *= s;
    kind_ = FieldKind::complex_valued;
    return *this;
}

Field hadamard(const Field& a, const Field& b) {
    require_same_grid(a, b, "hadamard");
    Field out = a;
    kernels::cmul(out.data(), b.data(), out.size());
    if (b.kind() == FieldKind::complex_valued) out.mark_complex();
    return out;
}

}  // namespace gplab
