#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hslope/complex.hpp"
#include "hslope/exact.hpp"
#include "hslope/halfplane.hpp"

namespace hslope {

/// The closed set of absolutely continuous parts a measure may carry.
///   alpha_right(a): dmu/dt = 1 / ((1 + t^2) t^a)    on (0, +inf)
///   alpha_left(a):  dmu/dt = 1 / ((1 + t^2) |t|^a)  on (-inf, 0)
///   log_right:      dmu/dt = 1 / ((1 + t^2) t)      on (1, +inf)
enum class DensityFamily { alpha_right, alpha_left, log_right };

struct Density {
  DensityFamily family;
  Real alpha;  // in (0, 1) for the alpha families, ignored for log_right
};

std::string to_string(DensityFamily f);
std::optional<DensityFamily> density_family_from_string(std::string_view name);

/// Point mass `mass` at `t`. The exact fields are set when the values came
/// from decimal strings and enable exact-rational comparisons.
struct Atom {
  Real t;
  Real mass;
  std::optional<Rational> exact_t;
  std::optional<Rational> exact_mass;
};

/// A moment is either a finite number, +inf (a divergence test fired), or
/// indeterminate (quadrature failed); never a silent number.
struct Moment {
  enum class Status { finite, infinite, indeterminate };
  Status status = Status::finite;
  Real value;
  std::string note;

  bool is_finite() const noexcept { return status == Status::finite; }
  static Moment finite(Real v) { return {Status::finite, std::move(v), {}}; }
  static Moment infinite(std::string why) { return {Status::infinite, Real(), std::move(why)}; }
  static Moment indeterminate(std::string why) {
    return {Status::indeterminate, Real(), std::move(why)};
  }
};

struct MomentReport {
  Moment total_mass;
  Moment abs_first;             // integral of |t|
  std::optional<Moment> first;  // integral of t, only when abs_first is finite
  Moment second;                // integral of t^2
};

/// Positive finite measure on the real line: atoms plus at most one density.
/// Immutable; moments are computed once at construction.
class FiniteMeasure {
 public:
  /// The zero measure.
  FiniteMeasure();

  /// Validates masses > 0, finite distinct locations and alpha in (0, 1);
  /// throws InputError otherwise.
  static FiniteMeasure make(std::vector<Atom> atoms, std::optional<Density> density = std::nullopt);
  static FiniteMeasure atoms_only(const std::vector<std::pair<Real, Real>>& atoms);
  static FiniteMeasure density_only(DensityFamily family, Real alpha = Real(0));

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::optional<Density>& density() const noexcept { return density_; }
  bool is_zero() const noexcept { return atoms_.empty() && !density_; }
  /// True when every value is an exact decimal and there is no density.
  bool decimal_exact() const noexcept;

  const MomentReport& moments() const noexcept { return *moments_; }

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
  std::shared_ptr<const MomentReport> moments_;
};

/// Moments by exact atom sums plus tan-substituted quadrature of the density.
/// Divergence of |t| and t^2 integrals is detected on dyadic blocks first.
MomentReport moments(const FiniteMeasure& m);

/// Closed-form moments of the named densities plus atom sums, evaluated at the
/// working precision. Used where the map needs an exact beta-tilde.
Real first_moment_closed_form(const FiniteMeasure& m);
Real total_mass_closed_form(const FiniteMeasure& m);

/// Integral of (1 + t z) / (t - z) d mu(t).
Complex herglotz_integral(const FiniteMeasure& m, const UHPoint& z);

/// p(z) = integral of (1 + t^2) / (t - z) d mu(t). Throws ContractError when
/// the integral of |t| is not finite.
Complex reduced_p(const FiniteMeasure& m, const UHPoint& z);

/// Closed-form p for the alpha families, principal branch:
///   alpha_right: pi e^{i pi a} / (sin(pi a) z^a)
///   alpha_left:  -conj(p_right(-conj z))
/// and for log_right: -log(1 - z) / z.
Complex closed_form_p(const Density& d, const Complex& z);

/// Density part of the integrals only, in double precision.
std::complex<double> density_herglotz(const Density& d, std::complex<double> z);
std::complex<double> density_reduced_p(const Density& d, std::complex<double> z);

inline constexpr double kMomentRelTol = 1e-10;

}  // namespace hslope
