#include "hslope/halfplane.hpp"

#include "hslope/errors.hpp"

namespace hslope {

namespace {

void require_unimodular(const Complex& tau) {
  Real tol = pow(Real(10), -static_cast<long>(decimal_digits(working_precision()) - 4));
  if (!(abs(norm(tau) - Real(1)) <= tol)) {
    throw InputError("tau must lie on the unit circle");
  }
}

}  // namespace

UHPoint UHPoint::make(Real re, Real im) {
  if (!re.is_finite() || !im.is_finite()) {
    throw InputError("point coordinates must be finite");
  }
  if (!(im > Real(0))) {
    throw InputError("point not in upper half-plane (im = " + im.to_string(17) + ")");
  }
  return UHPoint(Complex(std::move(re), std::move(im)));
}

UHPoint UHPoint::parse(std::string_view re, std::string_view im) {
  return make(Real::parse(re), Real::parse(im));
}

Real pseudo_hyperbolic_distance(const UHPoint& z, const UHPoint& w) {
  Real dx = z.re() - w.re();
  Real dy = z.im() - w.im();
  Real sy = z.im() + w.im();
  // |z - w|^2 / |z - conj(w)|^2 with a shared real part.
  Real dx2 = dx * dx;
  return sqrt((dx2 + dy * dy) / (dx2 + sy * sy));
}

Real principal_arg(const UHPoint& z) { return atan2(z.im(), z.re()); }

UHPoint cayley_disk_to_halfplane(const Complex& w, const Complex& tau) {
  require_unimodular(tau);
  if (!(norm(w) < Real(1))) {
    throw InputError("disk point must satisfy |w| < 1");
  }
  Complex den = tau - w;
  if (den.re.is_zero() && den.im.is_zero()) {
    throw InputError("w == tau maps to infinity");
  }
  Complex q = (tau + w) / den;
  // i * q
  return UHPoint::make(-q.im, q.re);
}

Complex cayley_halfplane_to_disk(const UHPoint& z, const Complex& tau) {
  require_unimodular(tau);
  const Complex& v = z.value();
  Complex num{v.re, v.im - Real(1)};
  Complex den{v.re, v.im + Real(1)};
  return tau * (num / den);
}

}  // namespace hslope
