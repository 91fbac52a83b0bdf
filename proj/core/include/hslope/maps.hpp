#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hslope/measures.hpp"

namespace hslope {

enum class EvalStrategy { herglotz, reduced, closed_alpha_right, closed_alpha_left, closed_log };

std::string to_string(EvalStrategy s);
std::optional<EvalStrategy> eval_strategy_from_string(std::string_view name);

/// Parabolic self-map of H with Denjoy-Wolff point at infinity,
///   f(z) = z + beta + integral (1 + t z) / (t - z) dmu(t),
/// equivalently z + beta_tilde + p(z) with beta_tilde = beta - integral t dmu.
class ParabolicMap {
 public:
  /// Throws InputError when the strategy does not fit the measure:
  /// closed strategies need the matching density and no atoms, `reduced`
  /// needs a finite first absolute moment, closed_log needs beta_tilde = 0.
  static ParabolicMap make(Real beta, FiniteMeasure measure, EvalStrategy strategy,
                           std::optional<Rational> exact_beta = std::nullopt);
  /// Same, parameterized by beta_tilde; beta is derived from the closed-form
  /// first moment.
  static ParabolicMap with_beta_tilde(Real beta_tilde, FiniteMeasure measure, EvalStrategy strategy,
                                      std::optional<Rational> exact_beta_tilde = std::nullopt);

  /// z + c, the parabolic automorphism (zero measure).
  static ParabolicMap translation(Real c);
  /// z - 1/z: unit atom at t = 0, beta = 0.
  static ParabolicMap delta_at_zero();
  static ParabolicMap alpha_right(Real alpha, Real beta_tilde = Real(0));
  static ParabolicMap alpha_left(Real alpha, Real beta_tilde = Real(0));
  /// z - log(1 - z) / z.
  static ParabolicMap log_example();

  const Real& beta() const noexcept { return beta_; }
  const Real& beta_tilde() const noexcept { return beta_tilde_; }
  const std::optional<Rational>& exact_beta() const noexcept { return exact_beta_; }
  const std::optional<Rational>& exact_beta_tilde() const noexcept { return exact_beta_tilde_; }
  const FiniteMeasure& measure() const noexcept { return measure_; }
  EvalStrategy strategy() const noexcept { return strategy_; }

  const std::string& label() const noexcept { return label_; }
  ParabolicMap& set_label(std::string label) {
    label_ = std::move(label);
    return *this;
  }

  /// True when Im f(z) > Im z everywhere (nonzero measure).
  bool strictly_increases_im() const noexcept { return !measure_.is_zero(); }

  /// f(z) - z at the working precision.
  Complex displacement(const Complex& z) const;

 private:
  ParabolicMap() = default;
  void validate() const;

  Real beta_;
  Real beta_tilde_;
  std::optional<Rational> exact_beta_;
  std::optional<Rational> exact_beta_tilde_;
  FiniteMeasure measure_;
  EvalStrategy strategy_ = EvalStrategy::herglotz;
  std::string label_ = "map";
};

/// Evaluation kernel bound to one working precision: constants of the
/// closed forms are rounded once at construction.
class MapEvaluator {
 public:
  explicit MapEvaluator(const ParabolicMap& f);

  /// f(z) - z given arg_z = arg(z).
  Complex displacement(const Complex& z, const Real& arg_z) const;
  Complex displacement(const Complex& z) const { return displacement(z, arg(z)); }

  const ParabolicMap& map() const noexcept { return *f_; }

 private:
  const ParabolicMap* f_;
  Real shift_;      // beta or beta_tilde, per strategy
  Real alpha_;
  Real scale_;      // pi / sin(pi alpha)
  Real phase_;      // pi alpha (right) or pi (left)
};

/// f(z). Throws NumericError("map left half-plane") if the image is not in H.
UHPoint eval_map(const ParabolicMap& f, const UHPoint& z);

struct RaySchedule {
  Real theta;             // direction, in (0, pi)
  Real first_radius = Real(16);
  Real ratio = Real(2);
  std::size_t count = 17;  // 2^4 .. 2^20 by default
};

struct TranslationLimit {
  Complex estimate;
  bool converged = false;
  std::vector<Complex> samples;      // f(z) - z along the ray
  std::vector<Complex> extrapolants;  // three-point (Aitken) extrapolants
};

/// Limit of f(z) - z along z = r e^{i theta} by three-point extrapolation on a
/// geometric radius schedule; converged when the last three extrapolants
/// agree to 1e-6 absolute. Requires at least 8 radii.
TranslationLimit translation_limit_estimate(const ParabolicMap& f, const RaySchedule& ray);

enum class SlopeLabel { zero_angle, pi_angle, half_pi, unknown };
std::string to_string(SlopeLabel l);

struct SlopePrediction {
  SlopeLabel label = SlopeLabel::unknown;
  std::string reason;
  bool exact = false;  // decided with exact rational arithmetic
};

/// Slope predicted from the sign of beta_tilde and the moments:
///   beta_tilde > 0 -> {0}, < 0 -> {pi}, = 0 with finite second moment -> {pi/2},
/// otherwise unknown.
SlopePrediction predict_slope(const ParabolicMap& f);

inline constexpr double kBetaEqualityRelTol = 1e-20;

}  // namespace hslope
