#include <gtest/gtest.h>

#include <functional>

#include "hslope/constructions.hpp"
#include "hslope/errors.hpp"

using namespace hslope;

namespace {

Rational factorial_q(int k) {
  Rational f(1);
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Rational qpow(const Rational& b, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Rational qabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Independent generator: a_k = A ra^k (k!)^ea, |gamma_k| = G rg^k (k!)^eg.
Term oracle_term(Variant v, const Generator& g, int k) {
  const int ea = v == Variant::full_interval ? 2 : 3;
  const int eg = v == Variant::full_interval ? 4 : 6;
  Rational a = g.a_base * qpow(g.a_growth, k) * qpow(factorial_q(k), ea);
  Rational gamma = g.gamma_base * qpow(g.gamma_growth, k) * qpow(factorial_q(k), eg);
  if (v == Variant::full_interval && k % 2 == 1) gamma = -gamma;
  return {a, gamma};
}

// Re-derives one condition in exact arithmetic from the generator formulas.
bool oracle_holds(const ConstructionSpec& spec, const Rational& tail_bound, const std::string& cond, int k) {
  const bool full = spec.variant() == Variant::full_interval;
  const int K = spec.K();
  auto term = [&](int l) { return l <= K ? spec.terms()[l - 1] : spec.generated_term(l); };
  auto a = [&](int l) { return term(l).a; };
  auto g = [&](int l) { return qabs(term(l).gamma); };
  const Rational kk(k);
  const Rational c1 = full ? Rational(4 * kk) : Rational(24 * kk);
  const Rational c2 = full ? Rational(8 * kk) : Rational(24 * kk);
  const Rational c3 = full ? Rational(80 * kk) : Rational(64 * kk * kk);
  const Rational c4 = full ? Rational(160 * kk) : Rational(100 * kk * kk);
  Rational head(0), upto(0), tail(tail_bound);
  for (int l = 1; l < k; ++l) head += a(l);
  upto = head + a(k);
  for (int l = k + 1; l <= K; ++l) tail += a(l) / g(l);
  if (cond == "gamma_growth") return 4 * g(k) <= g(k + 1);
  if (cond == "partial_sum_small") return upto <= g(k) / c1;
  if (cond == "tail_small") return tail <= g(k) / c2;
  if (cond == "dominance_partial") return head <= a(k) / c3;
  if (cond == "dominance_tail") return tail <= a(k) / (c4 * g(k));
  if (cond == "ratio_growth") return g(k) * g(k) / a(k) < g(k + 1) * g(k + 1) / a(k + 1);
  if (cond == "summable") return true;
  ADD_FAILURE() << "unknown condition " << cond;
  return false;
}

void expect_oracle_agrees(const ConstructionSpec& spec) {
  ConditionReport rep = validate_conditions(spec);
  for (const auto& c : rep.checks) {
    const bool oracle = oracle_holds(spec, rep.tail.tail_bound, c.condition, c.k);
    EXPECT_EQ(c.verdict == Verdict::pass, oracle) << c.condition << " k=" << c.k;
  }
}

Complex direct_displacement(const ConstructionSpec& spec, const Complex& z) {
  Complex s;
  for (const Term& t : spec.terms()) s += Complex(to_real(t.a)) / (Complex(to_real(t.gamma)) - z);
  return s;
}

}  // namespace

TEST(Constructions, GeneratorMatchesClosedFormula) {
  for (Variant v : {Variant::full_interval, Variant::half_interval}) {
    Generator g{Rational(3), Rational(2), Rational(5, 2), Rational(4), 5};
    ConstructionSpec s = build_construction(v, g);
    ASSERT_EQ(s.K(), 5);
    for (int k = 1; k <= 7; ++k) {
      Term want = oracle_term(v, g, k);
      Term got = k <= 5 ? s.terms()[k - 1] : s.generated_term(k);
      EXPECT_EQ(got.a, want.a) << k;
      EXPECT_EQ(got.gamma, want.gamma) << k;
    }
  }
}

TEST(Constructions, SpecInvariants) {
  using V = Variant;
  EXPECT_THROW(ConstructionSpec::make(V::full_interval, {{1, -4}}), InputError);
  EXPECT_THROW(ConstructionSpec::make(V::full_interval, {{1, 4}, {1, 64}}), InputError);
  EXPECT_THROW(ConstructionSpec::make(V::half_interval, {{1, 4}, {1, -64}}), InputError);
  EXPECT_THROW(ConstructionSpec::make(V::half_interval, {{0, 4}, {1, 64}}), InputError);
  EXPECT_THROW(ConstructionSpec::make(V::half_interval, {{1, Rational(1, 2)}, {1, 64}}), InputError);
  EXPECT_NO_THROW(ConstructionSpec::make(V::full_interval, {{1, -4}, {1, 64}}));
  Generator g;
  g.K = 1;
  EXPECT_THROW(build_construction(V::full_interval, g), InputError);
  EXPECT_EQ(variant_from_string("full"), V::full_interval);
  EXPECT_EQ(variant_from_string("half_interval"), V::half_interval);
  EXPECT_FALSE(variant_from_string("quarter").has_value());
}

TEST(Constructions, PureFactorialFailsIndependentlyOfScale) {
  // a_1 <= a_2/160 reads C <= 4C/160 = C/40.
  for (const Rational& c1 : {Rational(1), Rational(7, 3), Rational(1000000)}) {
    for (const Rational& c2 : {Rational(1), Rational(1000000)}) {
      ConstructionSpec s = build_construction(Variant::full_interval, Generator{c1, 1, c2, 1, 4});
      ConditionReport r = validate_conditions(s);
      EXPECT_FALSE(r.passed);
      auto it = std::find_if(r.checks.begin(), r.checks.end(),
                             [](const ConditionCheck& c) { return c.condition == "dominance_partial" && c.k == 2; });
      ASSERT_NE(it, r.checks.end());
      EXPECT_EQ(it->verdict, Verdict::fail);
      EXPECT_EQ(it->lhs, c1);
      EXPECT_EQ(it->rhs, c1 / 40);
    }
  }
  ConditionReport r = validate_conditions(build_construction(Variant::full_interval, Generator{1, 1, 1000000, 1, 4}));
  ASSERT_TRUE(r.first_failure.has_value());
  EXPECT_EQ(r.checks[*r.first_failure].condition, "dominance_partial");
  EXPECT_EQ(r.checks[*r.first_failure].k, 2);
}

TEST(Constructions, HalfIntervalPureFactorialFails) {
  // a_1 <= a_2/(64 * 4) reads C <= 8C/256.
  ConditionReport r = validate_conditions(build_construction(Variant::half_interval, Generator{5, 1, 1000000, 1, 4}));
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.first_failure.has_value());
  EXPECT_EQ(r.checks[*r.first_failure].condition, "dominance_partial");
  EXPECT_EQ(r.checks[*r.first_failure].k, 2);
}

TEST(Constructions, ValidatorAgreesWithExactOracle) {
  expect_oracle_agrees(build_construction(Variant::full_interval, Generator{1, 1, 1000000, 1, 4}));
  expect_oracle_agrees(build_construction(Variant::full_interval, Generator{1, 64, 1, 4096, 4}));
  expect_oracle_agrees(build_construction(Variant::half_interval, Generator{1, 32, 2, 512, 3}));
  expect_oracle_agrees(build_construction(Variant::half_interval, Generator{3, 2, 10, 2, 5}));
}

TEST(Constructions, SearchFindsPassingFamilies) {
  SearchResult full = search_constants(Variant::full_interval, 4);
  ASSERT_TRUE(full.spec.has_value());
  EXPECT_TRUE(full.report->passed);
  EXPECT_TRUE(full.report->tail.certified);
  EXPECT_EQ(full.report->tail.method, "geometric");
  EXPECT_EQ(full.generator->a_growth, 64);
  EXPECT_EQ(full.generator->gamma_growth, 4096);
  expect_oracle_agrees(*full.spec);
  // Soundness of the tail bound against a long explicit partial sum.
  Rational partial(0);
  for (int l = 5; l <= 40; ++l) {
    Term t = full.spec->generated_term(l);
    partial += t.a / qabs(t.gamma);
  }
  EXPECT_GE(full.report->tail.tail_bound, partial);

  SearchResult half = search_constants(Variant::half_interval, 3);
  ASSERT_TRUE(half.spec.has_value());
  EXPECT_TRUE(half.report->passed);
  expect_oracle_agrees(*half.spec);
}

TEST(Constructions, SearchReportsBindingCondition) {
  SearchResult r = search_constants(Variant::full_interval, 4, SearchBounds{0, 40});
  EXPECT_FALSE(r.spec.has_value());
  ASSERT_TRUE(r.binding.has_value());
  EXPECT_EQ(r.binding->condition, "dominance_partial");
  EXPECT_EQ(r.binding->k, 2);
  EXPECT_EQ(r.candidates, 41u);
}

TEST(Constructions, ExplicitSpecUsesFiniteTail) {
  auto s = ConstructionSpec::make(Variant::full_interval, {{1, -1000}, {200, 1000000}});
  ConditionReport r = validate_conditions(s);
  EXPECT_EQ(r.tail.method, "finite");
  EXPECT_EQ(r.tail.tail_bound, 0);
  expect_oracle_agrees(s);
}

TEST(Constructions, MapMatchesDirectSum) {
  PrecisionScope scope(256);
  ConstructionSpec s = build_construction(Variant::full_interval, Generator{1, 64, 1, 4096, 4});
  ParabolicMap f = to_parabolic_map(s);
  for (auto [x, y] : {std::pair{0.0, 1.0}, {-300.0, 20.0}, {1e5, 3.0}, {-2.6e5, 1e4}}) {
    Complex z{Real(x), Real(y)};
    Complex want = direct_displacement(s, z);
    Complex got = f.displacement(z);
    EXPECT_LT(abs(got - want) / abs(want), Real::parse("1e-60"));
    EXPECT_GT(got.im, Real(0));
  }
}

TEST(Constructions, TruncationConsistency) {
  PrecisionScope scope(256);
  Generator g{1, 64, 1, 4096, 4};
  ConstructionSpec s4 = build_construction(Variant::full_interval, g);
  g.K = 5;
  ConstructionSpec s5 = build_construction(Variant::full_interval, g);
  const Real gK = abs(to_real(s4.terms().back().gamma));
  const Term t5 = s5.terms().back();
  const Real g5 = abs(to_real(t5.gamma));
  for (double frac : {1e-6, 0.01, 0.5, 1.0}) {
    for (double th : {0.1, 1.5, 3.0}) {
      Complex z = polar(gK * Real(frac), Real(th));
      Real bound = to_real(t5.a) / (g5 - abs(z));
      Real diff = abs(direct_displacement(s5, z) - direct_displacement(s4, z));
      EXPECT_LE(diff, bound) << frac << " " << th;
    }
  }
}

TEST(Constructions, RegionLemmasHoldOnValidatedSpecs) {
  LemmaGridOptions opt;
  opt.samples = 8;
  ConstructionSpec full = build_construction(Variant::full_interval, Generator{1, 64, 1, 4096, 4});
  for (int k = 1; k <= 3; ++k) {
    LemmaReport r = check_region_lemmas(full, k, opt);
    EXPECT_TRUE(r.passed) << "full k=" << k;
    EXPECT_EQ(r.bits, 512);
    for (const auto& q : r.results) {
      EXPECT_GT(q.points, 0u);
      if (q.counted) EXPECT_EQ(q.violations, 0u) << q.region << ": " << q.inequality;
    }
  }
  ConstructionSpec half = build_construction(Variant::half_interval, Generator{1, 32, 2, 512, 4});
  ASSERT_TRUE(validate_conditions(half).passed);
  for (int k = 1; k <= 3; ++k) EXPECT_TRUE(check_region_lemmas(half, k, opt).passed) << "half k=" << k;
}

TEST(Constructions, RegionLemmasRequireValidatedSpec) {
  ConstructionSpec pure = build_construction(Variant::full_interval, Generator{1, 1, 1000000, 1, 4});
  EXPECT_THROW(check_region_lemmas(pure, 2), ContractError);
  ConstructionSpec ok = build_construction(Variant::full_interval, Generator{1, 64, 1, 4096, 4});
  EXPECT_THROW(check_region_lemmas(ok, 0), ContractError);
  LemmaGridOptions bad;
  bad.C = 1.0;
  EXPECT_THROW(check_region_lemmas(ok, 1, bad), ContractError);
}
