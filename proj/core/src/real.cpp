#include "hslope/real.hpp"

#include <gmp.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "hslope/errors.hpp"

namespace hslope {

namespace {

thread_local Bits g_working_bits = kDefaultBits;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

}  // namespace

Bits working_precision() noexcept { return g_working_bits; }

void set_working_precision(Bits bits) {
  if (bits < 32 || bits > (Bits{1} << 20)) {
    throw InputError("precision must be between 32 and 1048576 bits, got " +
                     std::to_string(bits));
  }
  g_working_bits = bits;
}

PrecisionScope::PrecisionScope(Bits bits) : saved_(g_working_bits) {
  set_working_precision(bits);
}

PrecisionScope::~PrecisionScope() { g_working_bits = saved_; }

int decimal_digits(Bits bits) noexcept {
  return static_cast<int>(std::floor(static_cast<double>(bits - 1) * std::log10(2.0)));
}

void Real::init() {
  mpfr_init2(v_, g_working_bits);
  live_ = true;
}

Real::Real() {
  init();
  mpfr_set_zero(v_, 1);
}

Real::Real(double v) {
  init();
  mpfr_set_d(v_, v, kRnd);
}

Real::Real(int v) {
  init();
  mpfr_set_si(v_, v, kRnd);
}

Real::Real(long v) {
  init();
  mpfr_set_si(v_, v, kRnd);
}

Real::Real(unsigned long v) {
  init();
  mpfr_set_ui(v_, v, kRnd);
}

Real Real::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty decimal string");
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || c == '.' || c == 'e' || c == 'E' ||
              c == '+' || c == '-';
    if (!ok) throw InputError("invalid decimal string: '" + s + "'");
  }
  Real r;
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, kRnd);
  if (end == s.c_str() || *end != '\0' || !r.is_finite()) {
    throw InputError("invalid decimal string: '" + s + "'");
  }
  return r;
}

Real::Real(const Real& other) {
  init();
  mpfr_set(v_, other.v_, kRnd);
}

Real::Real(Real&& other) noexcept {
  std::memcpy(static_cast<void*>(v_), static_cast<const void*>(other.v_), sizeof(mpfr_t));
  live_ = other.live_;
  other.live_ = false;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (!live_) init();
  mpfr_set(v_, other.v_, kRnd);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (live_) mpfr_clear(v_);
  std::memcpy(static_cast<void*>(v_), static_cast<const void*>(other.v_), sizeof(mpfr_t));
  live_ = other.live_;
  other.live_ = false;
  return *this;
}

Real::~Real() {
  if (live_) mpfr_clear(v_);
}

double Real::to_double() const noexcept { return mpfr_get_d(v_, kRnd); }

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  if (is_integer() && mpfr_get_exp(v_) <= precision()) {
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, v_, MPFR_RNDN);
    char* buf = mpz_get_str(nullptr, 10, z);
    std::string out(buf);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(buf, std::strlen(buf) + 1);
    mpz_clear(z);
    return out;
  }
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real Real::operator-() const {
  Real r;
  mpfr_neg(r.v_, v_, kRnd);
  return r;
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r;
  mpfr_add(r.v_, a.v_, b.v_, kRnd);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r;
  mpfr_sub(r.v_, a.v_, b.v_, kRnd);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r;
  mpfr_mul(r.v_, a.v_, b.v_, kRnd);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r;
  mpfr_div(r.v_, a.v_, b.v_, kRnd);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) noexcept {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define HSLOPE_UNARY(name, fn)        \
  Real name(const Real& x) {          \
    Real r;                           \
    fn(r.get(), x.get(), kRnd);       \
    return r;                         \
  }

HSLOPE_UNARY(abs, mpfr_abs)
HSLOPE_UNARY(sqrt, mpfr_sqrt)
HSLOPE_UNARY(log, mpfr_log)
HSLOPE_UNARY(log2_of, mpfr_log2)
HSLOPE_UNARY(exp, mpfr_exp)
HSLOPE_UNARY(sin, mpfr_sin)
HSLOPE_UNARY(cos, mpfr_cos)
HSLOPE_UNARY(tan, mpfr_tan)
HSLOPE_UNARY(atan, mpfr_atan)

#undef HSLOPE_UNARY

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.get(), x.get());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r;
  mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
  return r;
}

void sin_cos(const Real& x, Real& s, Real& c) {
  mpfr_sin_cos(s.get(), c.get(), x.get(), kRnd);
}

Real hypot(const Real& a, const Real& b) {
  Real r;
  mpfr_hypot(r.get(), a.get(), b.get(), kRnd);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r;
  mpfr_pow(r.get(), base.get(), exponent.get(), kRnd);
  return r;
}

Real pow(const Real& base, long exponent) {
  Real r;
  mpfr_pow_si(r.get(), base.get(), exponent, kRnd);
  return r;
}

Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real factorial(unsigned long n) {
  Real r;
  mpfr_fac_ui(r.get(), n, kRnd);
  return r;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.get(), kRnd);
  return r;
}

}  // namespace hslope
