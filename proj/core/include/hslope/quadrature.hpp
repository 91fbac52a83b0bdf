#pragma once

#include <complex>
#include <functional>
#include <span>

namespace hslope::quad {

/// One half of a tan-substituted half-line. With v in (0, pi/4]:
///   inner: t = sign * tan(v), covering 0 < |t| <= 1
///   outer: t = sign * cot(v), covering |t| >= 1
/// Both pieces put any endpoint singularity (t -> 0 or |t| -> inf) at v -> 0,
/// where v is represented exactly, so no cancellation occurs near pi/2.
struct Piece {
  enum class Kind { inner, outer };
  Kind kind;
  int sign;  // +1 or -1
};

struct Result {
  std::complex<double> value;
  double error = 0.0;  // absolute error estimate
  double l1 = 0.0;     // L1 norm of the integrand
};

/// Integrand after the substitution, as a function of t. The caller supplies
/// g(t) w(t) (1 + t^2), where w is the density; dt = (1 + t^2) dv on both
/// pieces.
using ScaledIntegrand = std::function<std::complex<double>(double t)>;

/// Sum of the piece integrals. Throws QuadratureError when the error
/// estimate exceeds rel_tol * |value| (and also abs_floor).
Result integrate(std::span<const Piece> pieces, const ScaledIntegrand& f, double rel_tol,
                 double abs_floor = 0.0);

/// Plain finite-interval integral of a real function (used for dyadic blocks).
Result integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double rel_tol);

}  // namespace hslope::quad
