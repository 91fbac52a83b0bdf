#include "hslope/maps.hpp"

#include "hslope/errors.hpp"

namespace hslope {

namespace {

std::optional<Rational> exact_first_moment(const FiniteMeasure& m) {
  if (!m.decimal_exact()) return std::nullopt;
  Rational sum = 0;
  for (const Atom& a : m.atoms()) sum += *a.exact_t * *a.exact_mass;
  return sum;
}

bool needs_density(EvalStrategy s, DensityFamily& family) {
  switch (s) {
    case EvalStrategy::closed_alpha_right:
      family = DensityFamily::alpha_right;
      return true;
    case EvalStrategy::closed_alpha_left:
      family = DensityFamily::alpha_left;
      return true;
    case EvalStrategy::closed_log:
      family = DensityFamily::log_right;
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string to_string(EvalStrategy s) {
  switch (s) {
    case EvalStrategy::herglotz:
      return "herglotz";
    case EvalStrategy::reduced:
      return "reduced";
    case EvalStrategy::closed_alpha_right:
      return "closed_alpha_right";
    case EvalStrategy::closed_alpha_left:
      return "closed_alpha_left";
    case EvalStrategy::closed_log:
      return "closed_log";
  }
  return "?";
}

std::optional<EvalStrategy> eval_strategy_from_string(std::string_view name) {
  for (auto s : {EvalStrategy::herglotz, EvalStrategy::reduced, EvalStrategy::closed_alpha_right,
                 EvalStrategy::closed_alpha_left, EvalStrategy::closed_log}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string to_string(SlopeLabel l) {
  switch (l) {
    case SlopeLabel::zero_angle:
      return "zero_angle";
    case SlopeLabel::pi_angle:
      return "pi_angle";
    case SlopeLabel::half_pi:
      return "half_pi";
    case SlopeLabel::unknown:
      return "unknown";
  }
  return "?";
}

ParabolicMap ParabolicMap::make(Real beta, FiniteMeasure measure, EvalStrategy strategy,
                                std::optional<Rational> exact_beta) {
  if (!beta.is_finite()) throw InputError("beta must be finite");
  ParabolicMap f;
  f.beta_tilde_ = beta - first_moment_closed_form(measure);
  f.beta_ = std::move(beta);
  if (exact_beta) {
    if (auto m1 = exact_first_moment(measure)) f.exact_beta_tilde_ = *exact_beta - *m1;
  }
  f.exact_beta_ = std::move(exact_beta);
  f.measure_ = std::move(measure);
  f.strategy_ = strategy;
  f.validate();
  return f;
}

ParabolicMap ParabolicMap::with_beta_tilde(Real beta_tilde, FiniteMeasure measure,
                                           EvalStrategy strategy,
                                           std::optional<Rational> exact_beta_tilde) {
  if (!beta_tilde.is_finite()) throw InputError("beta_tilde must be finite");
  ParabolicMap f;
  f.beta_ = beta_tilde + first_moment_closed_form(measure);
  f.beta_tilde_ = std::move(beta_tilde);
  if (exact_beta_tilde) {
    if (auto m1 = exact_first_moment(measure)) f.exact_beta_ = *exact_beta_tilde + *m1;
  }
  f.exact_beta_tilde_ = std::move(exact_beta_tilde);
  f.measure_ = std::move(measure);
  f.strategy_ = strategy;
  f.validate();
  return f;
}

void ParabolicMap::validate() const {
  DensityFamily family{};
  if (needs_density(strategy_, family)) {
    if (!measure_.atoms().empty() || !measure_.density() || measure_.density()->family != family) {
      throw InputError("strategy " + to_string(strategy_) + " requires a pure " +
                       to_string(family) + " measure");
    }
  }
  if (strategy_ == EvalStrategy::reduced && !measure_.moments().abs_first.is_finite()) {
    throw InputError("reduced strategy requires a finite first absolute moment");
  }
  if (strategy_ == EvalStrategy::closed_log) {
    bool zero = exact_beta_tilde_ ? *exact_beta_tilde_ == 0
                                  : abs(beta_tilde_) <= Real(kBetaEqualityRelTol) *
                                                            max(abs(beta_), Real(1));
    if (!zero) throw InputError("closed_log is only defined with beta_tilde = 0");
  }
}

ParabolicMap ParabolicMap::translation(Real c) {
  return make(std::move(c), FiniteMeasure(), EvalStrategy::herglotz).set_label("translation");
}

ParabolicMap ParabolicMap::delta_at_zero() {
  std::vector<Atom> atoms{{Real(0), Real(1), Rational(0), Rational(1)}};
  return make(Real(0), FiniteMeasure::make(std::move(atoms)), EvalStrategy::herglotz, Rational(0))
      .set_label("delta_at_zero");
}

ParabolicMap ParabolicMap::alpha_right(Real alpha, Real beta_tilde) {
  return with_beta_tilde(std::move(beta_tilde),
                         FiniteMeasure::density_only(DensityFamily::alpha_right, std::move(alpha)),
                         EvalStrategy::closed_alpha_right)
      .set_label("alpha_right");
}

ParabolicMap ParabolicMap::alpha_left(Real alpha, Real beta_tilde) {
  return with_beta_tilde(std::move(beta_tilde),
                         FiniteMeasure::density_only(DensityFamily::alpha_left, std::move(alpha)),
                         EvalStrategy::closed_alpha_left)
      .set_label("alpha_left");
}

ParabolicMap ParabolicMap::log_example() {
  return with_beta_tilde(Real(0), FiniteMeasure::density_only(DensityFamily::log_right),
                         EvalStrategy::closed_log, Rational(0))
      .set_label("log_example");
}

Complex ParabolicMap::displacement(const Complex& z) const {
  switch (strategy_) {
    case EvalStrategy::herglotz: {
      if (measure_.is_zero()) return Complex(beta_);
      Complex h = herglotz_integral(measure_, UHPoint::make(z));
      h.re += beta_;
      return h;
    }
    case EvalStrategy::reduced: {
      Complex p = reduced_p(measure_, UHPoint::make(z));
      p.re += beta_tilde_;
      return p;
    }
    case EvalStrategy::closed_alpha_right:
    case EvalStrategy::closed_alpha_left: {
      Complex p = closed_form_p(*measure_.density(), z);
      p.re += beta_tilde_;
      return p;
    }
    case EvalStrategy::closed_log:
      return closed_form_p(*measure_.density(), z);
  }
  throw ContractError("unknown strategy");
}

MapEvaluator::MapEvaluator(const ParabolicMap& f) : f_(&f) {
  switch (f.strategy()) {
    case EvalStrategy::herglotz:
      shift_ = f.beta();
      break;
    case EvalStrategy::reduced:
    case EvalStrategy::closed_log:
      shift_ = f.beta_tilde();
      break;
    case EvalStrategy::closed_alpha_right:
    case EvalStrategy::closed_alpha_left:
      shift_ = f.beta_tilde();
      alpha_ = f.measure().density()->alpha;
      scale_ = pi() / sin(pi() * alpha_);
      phase_ = f.strategy() == EvalStrategy::closed_alpha_right ? pi() * alpha_ : pi();
      break;
  }
}

Complex MapEvaluator::displacement(const Complex& z, const Real& arg_z) const {
  switch (f_->strategy()) {
    case EvalStrategy::closed_alpha_right:
    case EvalStrategy::closed_alpha_left: {
      Real mag = scale_ * exp(-alpha_ * log(norm(z)) / Real(2));
      Complex p = polar(mag, phase_ - alpha_ * arg_z);
      p.re += shift_;
      return p;
    }
    default:
      return f_->displacement(z);
  }
}

UHPoint eval_map(const ParabolicMap& f, const UHPoint& z) {
  Complex w = z.value() + f.displacement(z.value());
  if (!w.re.is_finite() || !w.im.is_finite() || !(w.im > Real(0))) {
    throw NumericError("map left half-plane");
  }
  return UHPoint::make(std::move(w));
}

TranslationLimit translation_limit_estimate(const ParabolicMap& f, const RaySchedule& ray) {
  if (ray.count < 8) throw ContractError("translation limit needs at least 8 radii");
  if (!(ray.ratio > Real(1)) || !(ray.first_radius > Real(0))) {
    throw ContractError("radii must form an increasing geometric schedule");
  }
  if (!(ray.theta > Real(0)) || !(ray.theta < pi())) {
    throw ContractError("ray direction must lie in (0, pi)");
  }
  TranslationLimit out;
  Real r = ray.first_radius;
  for (std::size_t j = 0; j < ray.count; ++j) {
    out.samples.push_back(f.displacement(polar(r, ray.theta)));
    r *= ray.ratio;
  }
  const auto& d = out.samples;
  for (std::size_t j = 0; j + 2 < d.size(); ++j) {
    Complex d1 = d[j + 1] - d[j];
    Complex d2 = d[j + 2] - d[j + 1];
    Complex den = d2 - d1;
    if (den.re.is_zero() && den.im.is_zero()) {
      out.extrapolants.push_back(d[j + 2]);
    } else {
      out.extrapolants.push_back(d[j + 2] - (d2 * d2) / den);
    }
  }
  const auto& e = out.extrapolants;
  out.estimate = e.back();
  const Real tol(1e-6);
  std::size_t m = e.size();
  out.converged = abs(e[m - 1] - e[m - 2]) <= tol && abs(e[m - 1] - e[m - 3]) <= tol &&
                  abs(e[m - 2] - e[m - 3]) <= tol;
  return out;
}

SlopePrediction predict_slope(const ParabolicMap& f) {
  const MomentReport& mom = f.measure().moments();
  if (mom.abs_first.status == Moment::Status::indeterminate) {
    return {SlopeLabel::unknown, "first absolute moment indeterminate: " + mom.abs_first.note, false};
  }
  if (mom.abs_first.status == Moment::Status::infinite) {
    return {SlopeLabel::unknown, "integral of |t| diverges", false};
  }
  int sign = 0;
  bool exact = false;
  if (f.exact_beta_tilde()) {
    sign = *f.exact_beta_tilde() > 0 ? 1 : (*f.exact_beta_tilde() < 0 ? -1 : 0);
    exact = true;
  } else {
    const Real& bt = f.beta_tilde();
    Real scale = max(abs(f.beta()), abs(first_moment_closed_form(f.measure())));
    if (abs(bt) <= Real(kBetaEqualityRelTol) * scale) {
      sign = 0;
    } else {
      sign = bt.sign();
    }
  }
  if (sign > 0) return {SlopeLabel::zero_angle, "beta exceeds the first moment", exact};
  if (sign < 0) return {SlopeLabel::pi_angle, "beta is below the first moment", exact};
  if (mom.second.is_finite()) {
    return {SlopeLabel::half_pi, "beta equals the first moment and the second moment is finite",
            exact};
  }
  return {SlopeLabel::unknown,
          "beta equals the first moment but the second moment is not finite; undecided", exact};
}

}  // namespace hslope
