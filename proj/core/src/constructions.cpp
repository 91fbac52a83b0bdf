#include "hslope/constructions.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

#include "hslope/errors.hpp"

namespace hslope {

namespace {

using boost::multiprecision::mpz_int;

struct Exponents {
  unsigned a;
  unsigned gamma;
};

Exponents exponents(Variant v) {
  return v == Variant::full_interval ? Exponents{2, 4} : Exponents{3, 6};
}

Rational factorial_power(int k, unsigned e) {
  mpz_int f = 1;
  for (int j = 2; j <= k; ++j) f *= j;
  return Rational(boost::multiprecision::pow(f, e));
}

Rational rpow(const Rational& q, unsigned e) {
  return Rational(boost::multiprecision::pow(numerator(q), e), boost::multiprecision::pow(denominator(q), e));
}

Rational rabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Term make_term(Variant v, const Generator& g, int k) {
  Exponents e = exponents(v);
  auto uk = static_cast<unsigned>(k);
  Rational a = g.a_base * rpow(g.a_growth, uk) * factorial_power(k, e.a);
  Rational gamma = g.gamma_base * rpow(g.gamma_growth, uk) * factorial_power(k, e.gamma);
  if (v == Variant::full_interval && k % 2 == 1) gamma = -gamma;
  return {a, gamma};
}

std::size_t bit_length(const Rational& q) {
  mpz_int n = numerator(q);
  if (n < 0) n = -n;
  mpz_int d = denominator(q);
  std::size_t nb = n == 0 ? 0 : msb(n) + 1;
  std::size_t db = msb(d) + 1;
  return std::max(nb, db);
}

struct Constants {
  int c1, c2, c3, c4;
  bool square;  // c3, c4 multiply k^2 instead of k
};

Constants constants(Variant v) {
  return v == Variant::full_interval ? Constants{4, 8, 80, 160, false}
                                     : Constants{24, 24, 64, 100, true};
}

}  // namespace

std::string to_string(Variant v) {
  return v == Variant::full_interval ? "full_interval" : "half_interval";
}

std::optional<Variant> variant_from_string(std::string_view name) {
  if (name == "full_interval" || name == "full") return Variant::full_interval;
  if (name == "half_interval" || name == "half") return Variant::half_interval;
  return std::nullopt;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::uncertifiable:
      return "uncertifiable";
  }
  return "?";
}

ConstructionSpec ConstructionSpec::make(Variant variant, std::vector<Term> terms,
                                        std::optional<Generator> meta) {
  if (terms.size() < 2) throw InputError("construction needs K >= 2 terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Term& t = terms[i];
    const int k = static_cast<int>(i) + 1;
    if (!(t.a > 0)) throw InputError("a_" + std::to_string(k) + " must be positive");
    if (t.gamma == 0) throw InputError("gamma_" + std::to_string(k) + " must be nonzero");
    bool negative = t.gamma < 0;
    if (variant == Variant::full_interval && negative != (k % 2 == 1)) {
      throw InputError("full_interval requires gamma_k = (-1)^k |gamma_k| (violated at k=" +
                       std::to_string(k) + ")");
    }
    if (variant == Variant::half_interval && negative) {
      throw InputError("half_interval requires gamma_k > 0 (violated at k=" + std::to_string(k) + ")");
    }
  }
  if (rabs(terms[0].gamma) < 1) throw InputError("|gamma_1| must be at least 1");
  if (meta) {
    if (!(meta->a_base > 0) || !(meta->a_growth > 0) || !(meta->gamma_base > 0) ||
        !(meta->gamma_growth > 0)) {
      throw InputError("generator constants must be positive");
    }
    if (meta->K != static_cast<int>(terms.size())) throw InputError("generator K does not match the terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Term g = make_term(variant, *meta, static_cast<int>(i) + 1);
      if (g.a != terms[i].a || g.gamma != terms[i].gamma) {
        throw InputError("term " + std::to_string(i + 1) + " does not match the generator");
      }
    }
  }
  ConstructionSpec s;
  s.variant_ = variant;
  s.terms_ = std::move(terms);
  s.meta_ = std::move(meta);
  return s;
}

Term ConstructionSpec::generated_term(int k) const {
  if (!meta_) throw ContractError("spec has no generator");
  return make_term(variant_, *meta_, k);
}

ConstructionSpec build_construction(Variant variant, const Generator& g) {
  if (g.K < 2) throw InputError("K must be at least 2");
  std::vector<Term> terms;
  for (int k = 1; k <= g.K; ++k) terms.push_back(make_term(variant, g, k));
  const auto limit = static_cast<std::size_t>(working_precision());
  for (const Term& t : terms) {
    if (bit_length(t.a) > limit || bit_length(t.gamma) > limit) {
      throw NumericError("term magnitudes exceed " + std::to_string(limit) +
                         "-bit precision; increase the precision");
    }
  }
  return ConstructionSpec::make(variant, std::move(terms), g);
}

ParabolicMap to_parabolic_map(const ConstructionSpec& spec) {
  std::vector<Atom> atoms;
  for (const Term& t : spec.terms()) {
    Rational mass = t.a / (Rational(1) + t.gamma * t.gamma);
    atoms.push_back({to_real(t.gamma), to_real(mass), t.gamma, mass});
  }
  return ParabolicMap::with_beta_tilde(Real(0), FiniteMeasure::make(std::move(atoms)),
                                       EvalStrategy::reduced, Rational(0))
      .set_label(to_string(spec.variant()));
}

bool ConditionReport::passes_up_to(int k) const {
  if (!tail.certified) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [k](const ConditionCheck& c) { return c.k > k || c.verdict == Verdict::pass; });
}

ConditionReport validate_conditions(const ConstructionSpec& spec) {
  ConditionReport rep;
  rep.variant = spec.variant();
  const int K = spec.K();
  rep.K = K;
  const auto& terms = spec.terms();
  auto a = [&](int k) -> const Rational& { return terms[static_cast<std::size_t>(k - 1)].a; };
  auto g = [&](int k) { return rabs(terms[static_cast<std::size_t>(k - 1)].gamma); };
  auto t = [&](int k) { return a(k) / g(k); };

  if (spec.meta()) {
    Term t1 = spec.generated_term(K + 1);
    Term t2 = spec.generated_term(K + 2);
    Rational r1 = t1.a / rabs(t1.gamma);
    Rational r2 = t2.a / rabs(t2.gamma);
    rep.tail.method = "geometric";
    rep.tail.ratio = r2 / r1;
    rep.tail.certified = rep.tail.ratio < 1;
    if (rep.tail.certified) rep.tail.tail_bound = r1 / (Rational(1) - rep.tail.ratio);
  } else {
    rep.tail.method = "finite";
    rep.tail.certified = true;
    rep.tail.tail_bound = 0;
  }
  auto tail_after = [&](int k) {
    Rational s = rep.tail.tail_bound;
    for (int l = k + 1; l <= K; ++l) s += t(l);
    return s;
  };
  const Constants c = constants(spec.variant());
  auto scaled = [&](int base, int k) { return Rational(c.square ? base * k * k : base * k); };
  auto add = [&](std::string name, int k, Rational lhs, Rational rhs, std::string statement,
                 bool strict = false, bool needs_tail = false) {
    Verdict v = (strict ? lhs < rhs : lhs <= rhs) ? Verdict::pass : Verdict::fail;
    if (needs_tail && !rep.tail.certified) v = Verdict::uncertifiable;
    rep.checks.push_back({std::move(name), k, v, std::move(lhs), std::move(rhs), std::move(statement)});
  };
  const std::string kk = c.square ? "k^2" : "k";
  const int growth_last = spec.meta() ? K : K - 1;
  auto gamma_abs = [&](int k) {
    return k <= K ? g(k) : rabs(spec.generated_term(k).gamma);
  };
  auto a_any = [&](int k) { return k <= K ? a(k) : spec.generated_term(k).a; };

  for (int k = 1; k <= growth_last; ++k) {
    add("gamma_growth", k, 4 * g(k), gamma_abs(k + 1), "4|gamma_k| <= |gamma_{k+1}|");
  }
  Rational partial = 0;
  for (int k = 1; k <= K; ++k) {
    partial += a(k);
    add("partial_sum_small", k, partial, g(k) / Rational(c.c1 * k),
        "sum_{l<=k} a_l <= |gamma_k|/(" + std::to_string(c.c1) + "k)");
  }
  for (int k = 1; k <= K; ++k) {
    add("tail_small", k, tail_after(k), g(k) / Rational(c.c2 * k),
        "sum_{l>k} a_l/|gamma_l| <= |gamma_k|/(" + std::to_string(c.c2) + "k)", false, true);
  }
  partial = 0;
  for (int k = 1; k <= K; ++k) {
    add("dominance_partial", k, partial, a(k) / scaled(c.c3, k),
        "sum_{l<k} a_l <= a_k/(" + std::to_string(c.c3) + kk + ")");
    partial += a(k);
  }
  for (int k = 1; k <= K; ++k) {
    add("dominance_tail", k, tail_after(k), a(k) / (scaled(c.c4, k) * g(k)),
        "sum_{l>k} a_l/|gamma_l| <= a_k/(" + std::to_string(c.c4) + kk + " |gamma_k|)", false, true);
  }
  {
    Rational total = tail_after(0);
    add("summable", K, total, total, "sum_l a_l/|gamma_l| has a certified bound", false, true);
  }
  for (int k = 1; k <= growth_last; ++k) {
    add("ratio_growth", k, g(k) * g(k) / a(k), gamma_abs(k + 1) * gamma_abs(k + 1) / a_any(k + 1),
        "gamma_k^2/a_k < gamma_{k+1}^2/a_{k+1}", true);
  }
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    if (rep.checks[i].verdict != Verdict::pass) {
      rep.first_failure = i;
      break;
    }
  }
  rep.passed = !rep.first_failure && rep.tail.certified;
  return rep;
}

SearchResult search_constants(Variant variant, int K, const SearchBounds& bounds) {
  if (K < 2) throw InputError("K must be at least 2");
  if (bounds.max_growth_exponent < 0 || bounds.max_base_exponent < 0) {
    throw InputError("search bounds must be non-negative");
  }
  SearchResult out;
  std::optional<std::vector<std::pair<std::string, int>>> always_failing;
  std::optional<ConditionReport> last;
  for (int ia = 0; ia <= bounds.max_growth_exponent; ++ia) {
    for (int ig = 0; ig <= bounds.max_growth_exponent; ++ig) {
      for (int ib = 0; ib <= bounds.max_base_exponent; ++ib) {
        Generator gen;
        gen.a_growth = Rational(mpz_int(1) << ia);
        gen.gamma_growth = Rational(mpz_int(1) << ig);
        gen.gamma_base = Rational(mpz_int(1) << ib);
        gen.K = K;
        ConstructionSpec spec = ConstructionSpec::make(variant, [&] {
          std::vector<Term> terms;
          for (int k = 1; k <= K; ++k) terms.push_back(make_term(variant, gen, k));
          return terms;
        }(), gen);
        ConditionReport rep = validate_conditions(spec);
        ++out.candidates;
        if (rep.passed) {
          out.generator = gen;
          out.spec = std::move(spec);
          out.report = std::move(rep);
          return out;
        }
        std::vector<std::pair<std::string, int>> failing;
        for (const auto& c : rep.checks) {
          if (c.verdict != Verdict::pass) failing.emplace_back(c.condition, c.k);
        }
        if (!always_failing) {
          always_failing = failing;
        } else {
          std::erase_if(*always_failing, [&](const auto& key) {
            return std::find(failing.begin(), failing.end(), key) == failing.end();
          });
        }
        last = std::move(rep);
      }
    }
  }
  out.report = last;
  if (last && always_failing && !always_failing->empty()) {
    const auto& key = always_failing->front();
    for (const auto& c : last->checks) {
      if (c.condition == key.first && c.k == key.second) out.binding = c;
    }
  } else if (last && last->first_failure) {
    out.binding = last->checks[*last->first_failure];
  }
  return out;
}

namespace {

std::vector<Real> axis(const Real& lo, const Real& hi, int n) {
  std::vector<Real> v;
  if (lo == hi || n < 2) {
    v.push_back(lo);
    return v;
  }
  const bool log_spaced = (lo.sign() > 0 && hi.sign() > 0) || (lo.sign() < 0 && hi.sign() < 0);
  for (int i = 0; i < n; ++i) {
    Real s = Real(i) / Real(n - 1);
    if (log_spaced) {
      v.push_back(lo * exp(s * log(hi / lo)));
    } else {
      v.push_back(lo + s * (hi - lo));
    }
  }
  v.front() = lo;
  v.back() = hi;
  v.push_back((lo + hi) / Real(2));
  std::sort(v.begin(), v.end(), [](const Real& a, const Real& b) { return a < b; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

struct Sampler {
  std::vector<Real> a, gamma;
  Real tail;            // bound on sum_{l>K} a_l/|gamma_l|
  Real next_gamma_abs;  // |gamma_{K+1}|, 0 for a finite sum

  Complex p(const Complex& z) const {
    Complex s;
    for (std::size_t i = 0; i < a.size(); ++i) s += Complex(a[i]) / Complex(gamma[i] - z.re, -z.im);
    return s;
  }
  Complex pk(const Complex& z, int k) const {
    auto i = static_cast<std::size_t>(k - 1);
    return Complex(a[i]) / Complex(gamma[i] - z.re, -z.im);
  }
  /// Bound on |sum_{l>K} p_l(z)|.
  Real bar(const Complex& z) const {
    if (tail.is_zero()) return Real(0);
    Real r = abs(z);
    if (!(r < next_gamma_abs)) return Real(std::numeric_limits<double>::infinity());
    return tail / (Real(1) - r / next_gamma_abs);
  }
};

struct Inequality {
  std::string name;
  bool strict = false;
  bool counted = true;
  /// Returns (lhs, rhs) for lhs <= rhs (or lhs < rhs when strict).
  std::function<std::pair<Real, Real>(const Complex& z)> sides;
};

void sample_region(LemmaReport& rep, const std::string& region, const Real& x0, const Real& x1,
                   const Real& y0, const Real& y1, int n, const std::vector<Inequality>& ineqs) {
  std::vector<Real> xs = axis(x0, x1, n);
  std::vector<Real> ys = axis(y0, y1, n);
  const int digits = 20;
  for (const Inequality& q : ineqs) {
    InequalityResult r;
    r.region = region;
    r.inequality = q.name;
    r.counted = q.counted;
    bool first = true;
    for (const Real& x : xs) {
      for (const Real& y : ys) {
        Complex z(x, y);
        auto [lhs, rhs] = q.sides(z);
        ++r.points;
        bool ok = q.strict ? lhs < rhs : lhs <= rhs;
        if (!ok) ++r.violations;
        Real diff = rhs - lhs;
        double margin = rhs.is_zero() ? diff.to_double() : (diff / abs(rhs)).to_double();
        if (first || margin < r.worst_margin) {
          r.worst_margin = margin;
          r.witness_x = x.to_string(digits);
          r.witness_y = y.to_string(digits);
          first = false;
        }
      }
    }
    rep.results.push_back(std::move(r));
  }
}

}  // namespace

LemmaReport check_region_lemmas(const ConstructionSpec& spec, int k, const LemmaGridOptions& opt) {
  if (k < 1 || k > spec.K()) throw ContractError("lemma index k must lie in 1..K");
  if (opt.samples < 2) throw ContractError("grid needs at least 2 samples per axis");
  if (!(opt.C > 1.0)) throw ContractError("return-region factor C must exceed 1");
  ConditionReport cond = validate_conditions(spec);
  if (!cond.passes_up_to(k)) {
    throw ContractError("spec does not pass the construction conditions up to k=" + std::to_string(k));
  }
  PrecisionScope scope(opt.bits);
  LemmaReport rep;
  rep.variant = spec.variant();
  rep.k = k;
  rep.C = opt.C;
  rep.bits = opt.bits;

  Sampler S;
  for (const Term& t : spec.terms()) {
    S.a.push_back(to_real(t.a));
    S.gamma.push_back(to_real(t.gamma));
  }
  S.tail = to_real(cond.tail.tail_bound);
  if (spec.meta()) S.next_gamma_abs = abs(to_real(spec.generated_term(spec.K() + 1).gamma));

  const Real g = abs(S.gamma[static_cast<std::size_t>(k - 1)]);
  const Real ak = S.a[static_cast<std::size_t>(k - 1)];
  const Real rk(k);
  const Real C(opt.C);
  const Real one(1);
  const Real half(0.5);
  const Real y_low = max(one, g / rk);
  const int n = opt.samples;

  auto im_positive = Inequality{"Im p > 0", true, true, [&](const Complex& z) {
                                  return std::pair{Real(0), S.p(z).im};
                                }};

  if (spec.variant() == Variant::full_interval) {
    const int s = S.gamma[static_cast<std::size_t>(k - 1)].sign();
    const Real rs(s);
    sample_region(rep, "confinement", -2 * g, 2 * g, one, y_low, n,
                  {{"|Re p| <= |gamma_k|/2", false, true,
                    [&](const Complex& z) { return std::pair{abs(S.p(z).re) + S.bar(z), g / Real(2)}; }},
                   im_positive});
    sample_region(rep, "outer_strip_right", Real(1.5) * g, 2 * g, one, y_low, n,
                  {{"Re p < 0", true, true,
                    [&](const Complex& z) { return std::pair{S.bar(z), -S.p(z).re}; }},
                   {"-Re p_k >= a_k/(20|gamma_k|)", false, true,
                    [&](const Complex& z) { return std::pair{ak / (Real(20) * g), -S.pk(z, k).re}; }}});
    sample_region(rep, "outer_strip_left", -2 * g, Real(-1.5) * g, one, y_low, n,
                  {{"Re p > 0", true, true,
                    [&](const Complex& z) { return std::pair{S.bar(z), S.p(z).re}; }},
                   {"Re p_k >= a_k/(20|gamma_k|)", false, true,
                    [&](const Complex& z) { return std::pair{ak / (Real(20) * g), S.pk(z, k).re}; }}});
    // regions below are stated for gamma_k > 0; mirrored through x -> -x otherwise
    Real u0 = s > 0 ? -2 * g : -(g * half);
    Real u1 = s > 0 ? g * half : 2 * g;
    sample_region(rep, "rise", u0, u1, one, y_low, n,
                  {{"Im p <= |gamma_k|/k", false, true,
                    [&](const Complex& z) { return std::pair{S.p(z).im + S.bar(z), g / rk}; }},
                   im_positive});
    sample_region(rep, "return", u0, u1, g / rk, C * g / rk, n,
                  {{"s Re p >= a_k/(40|gamma_k|)", false, true,
                    [&](const Complex& z) {
                      return std::pair{ak / (Real(40) * g) + S.bar(z), rs * S.p(z).re};
                    }},
                   {"Im p <= 5 a_k y/gamma_k^2", false, true,
                    [&](const Complex& z) {
                      return std::pair{S.p(z).im + S.bar(z), Real(5) * ak * z.im / (g * g)};
                    }},
                   {"s Re p_k >= a_k/(20|gamma_k|)", false, true,
                    [&](const Complex& z) { return std::pair{ak / (Real(20) * g), rs * S.pk(z, k).re}; }},
                   im_positive});
  } else {
    const Real g1 = S.gamma[0];
    sample_region(rep, "confinement", Real(0), Real(1.5) * g, one, y_low, n,
                  {{"|Re p| <= gamma_k/4", false, true,
                    [&](const Complex& z) { return std::pair{abs(S.p(z).re) + S.bar(z), g / Real(4)}; }},
                   im_positive});
    sample_region(rep, "outer_strip", Real(1.25) * g, Real(1.5) * g, one, y_low, n,
                  {{"Re p < 0", true, true,
                    [&](const Complex& z) { return std::pair{S.bar(z), -S.p(z).re}; }},
                   {"-Re p_k >= a_k/(5 gamma_k)", false, true,
                    [&](const Complex& z) { return std::pair{ak / (Real(5) * g), -S.pk(z, k).re}; }}});
    sample_region(rep, "left_edge", Real(0), g1, one, y_low, n,
                  {{"Re p > 0", true, true,
                    [&](const Complex& z) { return std::pair{S.bar(z), S.p(z).re}; }}});
    sample_region(rep, "rise", -2 * g, g * half, one, y_low, n,
                  {{"Im p <= gamma_k/k", false, true,
                    [&](const Complex& z) { return std::pair{S.p(z).im + S.bar(z), g / rk}; }},
                   im_positive});
    sample_region(rep, "return", Real(0), g * half, g / rk, C * g / rk, n,
                  {{"Im p <= 5 a_k y/gamma_k^2", false, true,
                    [&](const Complex& z) {
                      return std::pair{S.p(z).im + S.bar(z), Real(5) * ak * z.im / (g * g)};
                    }},
                   {"Re p >= a_k/(8 gamma_k)", false, true,
                    [&](const Complex& z) { return std::pair{ak / (Real(8) * g) + S.bar(z), S.p(z).re}; }},
                   {"Re p_k >= a_k/(4 gamma_k)", false, true,
                    [&](const Complex& z) { return std::pair{ak / (Real(4) * g), S.pk(z, k).re}; }},
                   im_positive});
    const Real y_top = rk * g;
    sample_region(rep, "elevator_core", Real(0.75) * g, Real(1.25) * g, one, y_top, n,
                  {{"|p| <= gamma_k/4", false, true,
                    [&](const Complex& z) { return std::pair{abs(S.p(z)) + S.bar(z), g / Real(4)}; }},
                   {"|x + Re p - gamma_k| <= gamma_k/2", false, true,
                    [&](const Complex& z) {
                      return std::pair{abs(z.re + S.p(z).re - g) + S.bar(z), g * half};
                    }}});
    std::vector<Inequality> sides{
        {"sign Re p = sign(gamma_k - x)", true, true,
         [&](const Complex& z) {
           Real dir((g - z.re).sign());
           return std::pair{S.bar(z), dir * S.p(z).re};
         }},
        {"|x + Re p - gamma_k| <= |x - gamma_k|", false, true,
         [&](const Complex& z) {
           return std::pair{abs(z.re + S.p(z).re - g) + S.bar(z), abs(z.re - g)};
         }},
        {"|Re p_k| >= a_k/(4k^2 gamma_k)", false, false,
         [&](const Complex& z) { return std::pair{ak / (Real(4) * rk * rk * g), abs(S.pk(z, k).re)}; }}};
    sample_region(rep, "elevator_side_left", g * half, Real(0.75) * g, one, y_top, n, sides);
    sample_region(rep, "elevator_side_right", Real(1.25) * g, Real(1.5) * g, one, y_top, n, sides);
  }
  rep.passed = std::all_of(rep.results.begin(), rep.results.end(),
                           [](const InequalityResult& r) { return !r.counted || r.violations == 0; });
  return rep;
}

}  // namespace hslope
