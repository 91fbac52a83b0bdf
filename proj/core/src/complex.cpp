#include "hslope/complex.hpp"

namespace hslope {

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }

Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }

Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }

Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) { return hypot(z.re, z.im); }

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex polar(const Real& r, const Real& theta) {
  Real s, c;
  sin_cos(theta, s, c);
  return {r * c, r * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex exp(const Complex& z) { return polar(exp(z.re), z.im); }

Complex pow(const Complex& z, const Real& a) {
  Complex l = log(z);
  return polar(exp(a * l.re), a * l.im);
}

}  // namespace hslope
