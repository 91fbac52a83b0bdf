#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hslope/errors.hpp"
#include "hslope/measures.hpp"

using namespace hslope;
using std::numbers::pi_v;

namespace {

constexpr double kPi = pi_v<double>;

double rel(const Complex& a, const Complex& b) { return (abs(a - b) / abs(b)).to_double(); }

UHPoint pt(double re, double im) { return UHPoint::make(Real(re), Real(im)); }

}  // namespace

TEST(Measures, AtomMomentsAreExactSums) {
  PrecisionScope scope(256);
  auto m = FiniteMeasure::atoms_only({{Real(1), Real(0.5)}, {Real(-2), Real(0.25)}});
  const auto& mo = m.moments();
  EXPECT_EQ(mo.total_mass.value, Real(0.75));
  EXPECT_EQ(mo.abs_first.value, Real(1));
  ASSERT_TRUE(mo.first.has_value());
  EXPECT_EQ(mo.first->value, Real(0));
  EXPECT_EQ(mo.second.value, Real(1.5));
}

TEST(Measures, AlphaDensityMomentsMatchMellinForms) {
  // int_0^inf t^(s-1)/(1+t^2) dt = pi / (2 sin(pi s / 2))
  for (double a : {0.25, 0.5, 0.75}) {
    auto m = FiniteMeasure::density_only(DensityFamily::alpha_right, Real(a));
    const auto& mo = m.moments();
    ASSERT_TRUE(mo.total_mass.is_finite());
    ASSERT_TRUE(mo.abs_first.is_finite());
    EXPECT_NEAR(mo.total_mass.value.to_double(), kPi / (2 * std::cos(kPi * a / 2)), 1e-9);
    EXPECT_NEAR(mo.abs_first.value.to_double(), kPi / (2 * std::sin(kPi * a / 2)), 1e-9);
    EXPECT_EQ(mo.second.status, Moment::Status::infinite);
    EXPECT_NEAR(first_moment_closed_form(m).to_double(), kPi / (2 * std::sin(kPi * a / 2)), 1e-14);

    auto left = FiniteMeasure::density_only(DensityFamily::alpha_left, Real(a));
    ASSERT_TRUE(left.moments().first.has_value());
    EXPECT_NEAR(left.moments().first->value.to_double(), -kPi / (2 * std::sin(kPi * a / 2)), 1e-9);
  }
}

TEST(Measures, LogDensityMoments) {
  auto m = FiniteMeasure::density_only(DensityFamily::log_right);
  const auto& mo = m.moments();
  EXPECT_NEAR(mo.total_mass.value.to_double(), std::log(2.0) / 2, 1e-10);
  EXPECT_NEAR(mo.abs_first.value.to_double(), kPi / 4, 1e-10);
  EXPECT_EQ(mo.second.status, Moment::Status::infinite);
  EXPECT_NEAR(total_mass_closed_form(m).to_double(), std::log(2.0) / 2, 1e-15);
}

TEST(Measures, RejectsInvalidMeasures) {
  EXPECT_THROW(FiniteMeasure::atoms_only({{Real(0), Real(-1)}}), InputError);
  EXPECT_THROW(FiniteMeasure::atoms_only({{Real(0), Real(1)}, {Real(0), Real(2)}}), InputError);
  EXPECT_THROW(FiniteMeasure::density_only(DensityFamily::alpha_right, Real(1)), InputError);
  EXPECT_THROW(FiniteMeasure::density_only(DensityFamily::alpha_left, Real(0)), InputError);
  EXPECT_TRUE(FiniteMeasure().is_zero());
}

TEST(Measures, HerglotzOfSingleAtom) {
  PrecisionScope scope(256);
  // 0.5 (1 + 2i)/(2 - i) = 0.5 i
  auto m = FiniteMeasure::atoms_only({{Real(2), Real(0.5)}});
  Complex h = herglotz_integral(m, pt(0, 1));
  EXPECT_LT(abs(h.re), Real::parse("1e-70"));
  EXPECT_LT(abs(h.im - Real(0.5)), Real::parse("1e-70"));
}

TEST(Measures, ClosedFormValuesAtI) {
  PrecisionScope scope(256);
  Complex i(Real(0), Real(1));
  // pi e^{i pi/2} / i^{1/2} = pi e^{i pi/4}
  Complex p = closed_form_p({DensityFamily::alpha_right, Real(0.5)}, i);
  const double c = kPi * std::sqrt(0.5);
  EXPECT_NEAR(p.re.to_double(), c, 1e-15);
  EXPECT_NEAR(p.im.to_double(), c, 1e-15);
  p = closed_form_p({DensityFamily::alpha_left, Real(0.5)}, i);
  EXPECT_NEAR(p.re.to_double(), -c, 1e-15);
  EXPECT_NEAR(p.im.to_double(), c, 1e-15);
  // -log(1 - i)/i = pi/4 + i log(2)/2
  p = closed_form_p({DensityFamily::log_right, Real(0)}, i);
  EXPECT_NEAR(p.re.to_double(), kPi / 4, 1e-15);
  EXPECT_NEAR(p.im.to_double(), std::log(2.0) / 2, 1e-15);
}

TEST(Measures, QuadratureMatchesClosedForms) {
  PrecisionScope scope(256);
  for (DensityFamily fam : {DensityFamily::alpha_right, DensityFamily::alpha_left, DensityFamily::log_right}) {
    for (double a : {0.25, 0.5, 0.75}) {
      Density d{fam, Real(a)};
      for (double r : {0.5, 2.0, 10.0}) {
        for (double th : {kPi / 6, kPi / 2, 5 * kPi / 6}) {
          Complex z = polar(Real(r), Real(th));
          std::complex<double> q = density_reduced_p(d, z.to_double());
          EXPECT_LT(rel(Complex::from(q), closed_form_p(d, z)), 1e-10)
              << to_string(fam) << " a=" << a << " r=" << r << " th=" << th;
        }
      }
    }
  }
}

TEST(Measures, ReductionIdentity) {
  PrecisionScope scope(256);
  std::vector<FiniteMeasure> measures{
      FiniteMeasure::atoms_only({{Real(-3), Real(0.2)}, {Real(0), Real(1)}, {Real(5), Real(2)}}),
      FiniteMeasure::density_only(DensityFamily::alpha_right, Real(0.5)),
      FiniteMeasure::density_only(DensityFamily::alpha_left, Real(0.3)),
      FiniteMeasure::density_only(DensityFamily::log_right),
      FiniteMeasure::make({{Real(1), Real(0.5), {}, {}}}, Density{DensityFamily::alpha_right, Real(0.75)}),
  };
  for (const auto& m : measures) {
    ASSERT_TRUE(m.moments().first.has_value());
    const Real first = m.moments().first->value;
    for (auto [x, y] : {std::pair{0.0, 1.0}, {-3.0, 0.1}, {7.0, 20.0}, {0.5, 1e-3}}) {
      UHPoint z = pt(x, y);
      Complex h = herglotz_integral(m, z);
      Complex r = reduced_p(m, z) - Complex(first);
      EXPECT_LT(rel(h, r), 1e-8) << "z=" << x << "," << y;
    }
  }
}
