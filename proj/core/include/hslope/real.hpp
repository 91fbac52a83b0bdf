#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace hslope {

using Bits = mpfr_prec_t;

inline constexpr Bits kDefaultBits = 256;

/// Mantissa bits used for every Real created on the calling thread.
Bits working_precision() noexcept;
void set_working_precision(Bits bits);

/// Sets the calling thread's working precision for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(Bits bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  Bits saved_;
};

/// Number of decimal digits faithfully carried by a `bits`-bit mantissa.
int decimal_digits(Bits bits) noexcept;

/// Arbitrary-precision binary floating point value (RAII over mpfr_t).
///
/// Every result is rounded to nearest at the thread's working precision, so
/// a computation is bit-reproducible given the same inputs and precision.
class Real {
 public:
  Real();
  Real(double v);         // NOLINT(google-explicit-constructor)
  Real(int v);            // NOLINT(google-explicit-constructor)
  Real(long v);           // NOLINT(google-explicit-constructor)
  Real(unsigned long v);  // NOLINT(google-explicit-constructor)

  /// Parses a finite decimal string such as "-1.25e-3". Throws InputError.
  static Real parse(std::string_view text);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Bits precision() const noexcept { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  double to_double() const noexcept;
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }

  /// Decimal rendering with `digits` significant digits. Integers that are
  /// exactly representable are written out in full.
  std::string to_string(int digits) const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) noexcept {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept;

 private:
  void init();
  mpfr_t v_;
  bool live_ = false;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real log2_of(const Real& x);
Real exp(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
void sin_cos(const Real& x, Real& s, Real& c);
Real hypot(const Real& a, const Real& b);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real floor(const Real& x);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
Real factorial(unsigned long n);
Real pi();

}  // namespace hslope
