#pragma once

#include <complex>

#include "hslope/real.hpp"

namespace hslope {

/// Extended-precision complex number. Transcendental functions use principal
/// branches: arg in (-pi, pi].
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  static Complex from(std::complex<double> z) { return {Real(z.real()), Real(z.imag())}; }

  std::complex<double> to_double() const { return {re.to_double(), im.to_double()}; }

  Complex operator-() const { return {-re, -im}; }
  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& s);
Complex operator*(const Real& s, const Complex& a);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& s);

Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex polar(const Real& r, const Real& theta);
Complex log(const Complex& z);
Complex exp(const Complex& z);
/// Principal power exp(a * log z).
Complex pow(const Complex& z, const Real& a);

}  // namespace hslope
