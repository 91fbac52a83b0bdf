#include "hslope/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "hslope/errors.hpp"

namespace hslope::quad {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts;
}

}  // namespace

Result integrate(std::span<const Piece> pieces, const ScaledIntegrand& f, double rel_tol,
                 double abs_floor) {
  Result total;
  // Boost terminates on error <= tol * L1; ask for a bit more than we certify.
  const double inner_tol = std::min(rel_tol * 1e-2, 1e-13);
  for (const Piece& piece : pieces) {
    const double s = piece.sign;
    auto g = [&](double v) -> std::complex<double> {
      double t = piece.kind == Piece::Kind::inner ? std::tan(v) : 1.0 / std::tan(v);
      if (!std::isfinite(t) || t == 0.0) return {0.0, 0.0};
      return f(s * t);
    };
    double err_re = 0.0, l1_re = 0.0, err_im = 0.0, l1_im = 0.0;
    double q_re = integrator().integrate([&](double v) { return g(v).real(); }, 0.0, kQuarterPi,
                                         inner_tol, &err_re, &l1_re);
    double q_im = integrator().integrate([&](double v) { return g(v).imag(); }, 0.0, kQuarterPi,
                                         inner_tol, &err_im, &l1_im);
    std::complex<double> q{q_re, q_im};
    double err = std::hypot(err_re, err_im), l1 = std::hypot(l1_re, l1_im);
    total.value += q;
    total.error += err;
    total.l1 += l1;
  }
  double scale = std::abs(total.value);
  if (!std::isfinite(scale) || total.error > std::max(rel_tol * scale, abs_floor)) {
    std::ostringstream os;
    os << "quadrature did not reach relative tolerance " << rel_tol << " (estimate "
       << total.error << " on |value| " << scale << ")";
    throw QuadratureError(os.str());
  }
  return total;
}

Result integrate_interval(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
  double err = 0.0, l1 = 0.0;
  double q = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 12, rel_tol * 1e-2,
                                                                          &err, &l1);
  if (!std::isfinite(q) || err > rel_tol * std::abs(q)) {
    throw QuadratureError("interval quadrature did not converge");
  }
  return {q, err, l1};
}

}  // namespace hslope::quad
