#include "hslope/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "hslope/errors.hpp"
#include "hslope/quadrature.hpp"

namespace hslope {

namespace {

using quad::Piece;
using cd = std::complex<double>;

constexpr int kDyadicBlocks = 48;
constexpr int kNonDecayRun = 8;

std::span<const Piece> pieces_for(DensityFamily f) {
  static constexpr std::array<Piece, 2> right{{{Piece::Kind::inner, 1}, {Piece::Kind::outer, 1}}};
  static constexpr std::array<Piece, 2> left{{{Piece::Kind::inner, -1}, {Piece::Kind::outer, -1}}};
  static constexpr std::array<Piece, 1> log_right{{{Piece::Kind::outer, 1}}};
  switch (f) {
    case DensityFamily::alpha_right:
      return right;
    case DensityFamily::alpha_left:
      return left;
    case DensityFamily::log_right:
      return log_right;
  }
  return {};
}

int support_sign(DensityFamily f) { return f == DensityFamily::alpha_left ? -1 : 1; }

/// w(t) (1 + t^2) on the support.
double scaled_weight(const Density& d, double alpha, double t) {
  double at = std::abs(t);
  if (d.family == DensityFamily::log_right) return 1.0 / at;
  return std::pow(at, -alpha);
}

/// Plain density w(t) for |t| >= 1 on the support.
double weight(const Density& d, double alpha, double t) {
  return scaled_weight(d, alpha, t) / (1.0 + t * t);
}

void validate_density(const Density& d) {
  if (d.family == DensityFamily::log_right) return;
  if (!d.alpha.is_finite() || !(d.alpha > Real(0)) || !(d.alpha < Real(1))) {
    throw InputError("density alpha must lie in (0, 1)");
  }
}

/// Integral of |t|^power against the density, with a dyadic divergence test
/// over |t| in [2^j, 2^{j+1}] for power >= 1.
Moment density_moment(const Density& d, int power, bool signed_result) {
  const double alpha = d.alpha.to_double();
  const int s = support_sign(d.family);
  try {
    if (power >= 1) {
      double prev = -1.0;
      int run = 0;
      for (int j = 0; j < kDyadicBlocks; ++j) {
        double lo = std::ldexp(1.0, j), hi = std::ldexp(1.0, j + 1);
        auto block_f = [&](double at) { return std::pow(at, power) * weight(d, alpha, s * at); };
        double block = quad::integrate_interval(block_f, lo, hi, 1e-10).value.real();
        run = (prev >= 0.0 && block >= prev) ? run + 1 : 0;
        if (run >= kNonDecayRun) {
          return Moment::infinite("dyadic blocks stopped decaying at |t| ~ 2^" + std::to_string(j));
        }
        prev = block;
      }
    }
    auto f = [&](double t) -> cd {
      double mag = power == 0 ? 1.0 : std::pow(std::abs(t), power);
      return {mag * scaled_weight(d, alpha, t), 0.0};
    };
    double v = quad::integrate(pieces_for(d.family), f, kMomentRelTol).value.real();
    if (signed_result && power % 2 == 1) v *= s;
    return Moment::finite(Real(v));
  } catch (const QuadratureError& e) {
    return Moment::indeterminate(e.what());
  }
}

Moment combine(Moment density_part, Real atom_part) {
  if (!density_part.is_finite()) return density_part;
  return Moment::finite(density_part.value + atom_part);
}

}  // namespace

std::string to_string(DensityFamily f) {
  switch (f) {
    case DensityFamily::alpha_right:
      return "alpha_right";
    case DensityFamily::alpha_left:
      return "alpha_left";
    case DensityFamily::log_right:
      return "log_right";
  }
  return "?";
}

std::optional<DensityFamily> density_family_from_string(std::string_view name) {
  if (name == "alpha_right") return DensityFamily::alpha_right;
  if (name == "alpha_left") return DensityFamily::alpha_left;
  if (name == "log_right") return DensityFamily::log_right;
  return std::nullopt;
}

FiniteMeasure::FiniteMeasure() : moments_(std::make_shared<MomentReport>(hslope::moments(*this))) {}

FiniteMeasure FiniteMeasure::make(std::vector<Atom> atoms, std::optional<Density> density) {
  std::set<Rational> seen;
  for (const Atom& a : atoms) {
    if (!a.t.is_finite() || !a.mass.is_finite()) throw InputError("atom values must be finite");
    if (!(a.mass > Real(0))) throw InputError("atom masses must be strictly positive");
    if (!seen.insert(to_rational(a.t)).second) {
      throw InputError("atom locations must be pairwise distinct");
    }
  }
  if (density) validate_density(*density);
  FiniteMeasure m;
  m.atoms_ = std::move(atoms);
  m.density_ = std::move(density);
  auto report = std::make_shared<MomentReport>(hslope::moments(m));
  if (!report->total_mass.is_finite()) {
    throw InputError("total mass is not finite: " + report->total_mass.note);
  }
  m.moments_ = std::move(report);
  return m;
}

FiniteMeasure FiniteMeasure::atoms_only(const std::vector<std::pair<Real, Real>>& atoms) {
  std::vector<Atom> list;
  list.reserve(atoms.size());
  for (const auto& [t, mass] : atoms) list.push_back({t, mass, std::nullopt, std::nullopt});
  return make(std::move(list));
}

FiniteMeasure FiniteMeasure::density_only(DensityFamily family, Real alpha) {
  return make({}, Density{family, std::move(alpha)});
}

bool FiniteMeasure::decimal_exact() const noexcept {
  if (density_) return false;
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.exact_t && a.exact_mass; });
}

MomentReport moments(const FiniteMeasure& m) {
  Real total, abs1, first, second;
  for (const Atom& a : m.atoms()) {
    total += a.mass;
    abs1 += abs(a.t) * a.mass;
    first += a.t * a.mass;
    second += a.t * a.t * a.mass;
  }
  MomentReport r;
  if (!m.density()) {
    r.total_mass = Moment::finite(total);
    r.abs_first = Moment::finite(abs1);
    r.first = Moment::finite(first);
    r.second = Moment::finite(second);
    return r;
  }
  const Density& d = *m.density();
  r.total_mass = combine(density_moment(d, 0, false), total);
  r.abs_first = combine(density_moment(d, 1, false), abs1);
  if (r.abs_first.is_finite()) r.first = combine(density_moment(d, 1, true), first);
  r.second = combine(density_moment(d, 2, false), second);
  return r;
}

Real first_moment_closed_form(const FiniteMeasure& m) {
  Real sum;
  for (const Atom& a : m.atoms()) sum += a.t * a.mass;
  if (const auto& d = m.density()) {
    switch (d->family) {
      case DensityFamily::alpha_right:
        sum += pi() / (Real(2) * sin(pi() * d->alpha / Real(2)));
        break;
      case DensityFamily::alpha_left:
        sum -= pi() / (Real(2) * sin(pi() * d->alpha / Real(2)));
        break;
      case DensityFamily::log_right:
        sum += pi() / Real(4);
        break;
    }
  }
  return sum;
}

Real total_mass_closed_form(const FiniteMeasure& m) {
  Real sum;
  for (const Atom& a : m.atoms()) sum += a.mass;
  if (const auto& d = m.density()) {
    if (d->family == DensityFamily::log_right) {
      sum += log(Real(2)) / Real(2);
    } else {
      sum += pi() / (Real(2) * cos(pi() * d->alpha / Real(2)));
    }
  }
  return sum;
}

std::complex<double> density_herglotz(const Density& d, std::complex<double> z) {
  const double alpha = d.alpha.to_double();
  auto f = [&](double t) -> cd {
    cd g = std::abs(t) <= 1.0 ? (1.0 + t * z) / (t - z) : (1.0 / t + z) / (1.0 - z / t);
    return g * scaled_weight(d, alpha, t);
  };
  return quad::integrate(pieces_for(d.family), f, kMomentRelTol).value;
}

std::complex<double> density_reduced_p(const Density& d, std::complex<double> z) {
  const double alpha = d.alpha.to_double();
  auto f = [&](double t) -> cd {
    cd g = std::abs(t) <= 1.0 ? (1.0 + t * t) / (t - z) : (t + 1.0 / t) / (1.0 - z / t);
    return g * scaled_weight(d, alpha, t);
  };
  return quad::integrate(pieces_for(d.family), f, kMomentRelTol).value;
}

Complex herglotz_integral(const FiniteMeasure& m, const UHPoint& z) {
  const Complex& v = z.value();
  Complex sum;
  for (const Atom& a : m.atoms()) {
    Complex num{Real(1) + a.t * v.re, a.t * v.im};
    Complex den{a.t - v.re, -v.im};
    sum += (num / den) * a.mass;
  }
  if (const auto& d = m.density()) sum += Complex::from(density_herglotz(*d, v.to_double()));
  return sum;
}

Complex reduced_p(const FiniteMeasure& m, const UHPoint& z) {
  if (!m.moments().abs_first.is_finite()) {
    throw ContractError("reduced form undefined: integral of |t| is not finite");
  }
  const Complex& v = z.value();
  Complex sum;
  for (const Atom& a : m.atoms()) {
    Complex den{a.t - v.re, -v.im};
    sum += Complex(a.mass * (Real(1) + a.t * a.t)) / den;
  }
  if (const auto& d = m.density()) sum += Complex::from(density_reduced_p(*d, v.to_double()));
  return sum;
}

Complex closed_form_p(const Density& d, const Complex& z) {
  if (d.family == DensityFamily::log_right) {
    Complex one_minus{Real(1) - z.re, -z.im};
    return -(log(one_minus) / z);
  }
  Real theta = arg(z);
  Real pa = pi() * d.alpha;
  Real mag = pi() / sin(pa) * exp(-d.alpha * log(abs(z)));
  Real angle = d.family == DensityFamily::alpha_right ? pa - d.alpha * theta
                                                      : pi() - d.alpha * theta;
  return polar(mag, angle);
}

}  // namespace hslope
