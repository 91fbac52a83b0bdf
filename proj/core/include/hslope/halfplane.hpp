#pragma once

#include "hslope/complex.hpp"

namespace hslope {

/// A point of the open upper half-plane: finite coordinates, im > 0.
class UHPoint {
 public:
  /// Throws InputError unless both parts are finite and im > 0.
  static UHPoint make(Real re, Real im);
  static UHPoint make(Complex z) { return make(std::move(z.re), std::move(z.im)); }
  /// Parses decimal strings at the working precision.
  static UHPoint parse(std::string_view re, std::string_view im);

  const Real& re() const noexcept { return z_.re; }
  const Real& im() const noexcept { return z_.im; }
  const Complex& value() const noexcept { return z_; }

  friend bool operator==(const UHPoint& a, const UHPoint& b) { return a.z_ == b.z_; }

 private:
  explicit UHPoint(Complex z) : z_(std::move(z)) {}
  Complex z_;
};

/// rho(z, w) = |z - w| / |z - conj(w)|, in [0, 1).
Real pseudo_hyperbolic_distance(const UHPoint& z, const UHPoint& w);

/// Principal argument, strictly inside (0, pi) for points of H.
Real principal_arg(const UHPoint& z);

/// S(w) = i (tau + w) / (tau - w), the Cayley map sending 0 to i and tau to
/// infinity. Requires |w| < 1 and |tau| = 1; throws InputError otherwise.
UHPoint cayley_disk_to_halfplane(const Complex& w, const Complex& tau);

/// Inverse of cayley_disk_to_halfplane: tau (z - i) / (z + i).
Complex cayley_halfplane_to_disk(const UHPoint& z, const Complex& tau);

}  // namespace hslope
