#include "hslope/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hslope/errors.hpp"

namespace hslope {

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double hi = *mid;
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

std::vector<double> b_samples(const OrbitTrace& t, std::size_t from, std::size_t to) {
  std::vector<double> out;
  out.reserve(to - from);
  for (std::size_t n = from; n < to; ++n) out.push_back(t.dx[n] / t.y[n]);
  return out;
}

double mean(const std::vector<double>& v, std::size_t from, std::size_t to) {
  if (to <= from) return 0.0;
  double s = std::accumulate(v.begin() + static_cast<std::ptrdiff_t>(from),
                             v.begin() + static_cast<std::ptrdiff_t>(to), 0.0);
  return s / static_cast<double>(to - from);
}

}  // namespace

OrbitStepper::OrbitStepper(const MapEvaluator& eval, const UHPoint& z0)
    : eval_(&eval), z_(Real(z0.re()), Real(z0.im())), arg_(atan2(z_.im, z_.re)) {}

StepDetail OrbitStepper::step() {
  Complex d = eval_->displacement(z_, arg_);
  Complex w = z_ + d;
  if (!w.re.is_finite() || !w.im.is_finite() || !(w.im > Real(0))) {
    throw NumericError("map left half-plane at step " + std::to_string(n_));
  }
  if (d.im.sign() < 0) {
    throw NumericError("imaginary part decreased at step " + std::to_string(n_));
  }
  if (w.im == z_.im && eval_->map().strictly_increases_im()) {
    throw PrecisionError("precision exhausted at step " + std::to_string(n_) +
                         ": Im z no longer increases, raise the precision");
  }
  Real s = w.im + z_.im;
  Real dx2 = d.re * d.re;
  StepDetail out{sqrt((dx2 + d.im * d.im) / (dx2 + s * s)), std::move(d.re), std::move(d.im)};
  z_ = std::move(w);
  arg_ = atan2(z_.im, z_.re);
  ++n_;
  return out;
}

TraceBuilder::TraceBuilder(std::string map_id, std::size_t iterations, OrbitOptions options)
    : options_(options) {
  if (!(options.checkpoint_ratio > 1.0)) throw ContractError("checkpoint ratio must exceed 1");
  trace_.map_id = std::move(map_id);
  trace_.precision_bits = working_precision();
  for (auto* v : {&trace_.x, &trace_.y, &trace_.arg}) v->reserve(iterations + 1);
  for (auto* v : {&trace_.rho_step, &trace_.dx, &trace_.dy}) v->reserve(iterations);
}

bool TraceBuilder::wants_checkpoint(std::size_t n) {
  if (n <= options_.full_storage_limit) return true;
  if (n < next_checkpoint_) return false;
  auto next = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * options_.checkpoint_ratio));
  next_checkpoint_ = std::max(next, n + 1);
  return true;
}

void TraceBuilder::record_point(const OrbitStepper& s) {
  const Complex& z = s.z();
  trace_.x.push_back(z.re.to_double());
  trace_.y.push_back(z.im.to_double());
  trace_.arg.push_back(s.arg().to_double());
  if (wants_checkpoint(s.n())) {
    trace_.checkpoints.push_back({s.n(), UHPoint::make(z), s.arg(), std::nullopt});
  }
}

void TraceBuilder::record_step(std::size_t n, const StepDetail& d) {
  trace_.rho_step.push_back(d.rho.to_double());
  trace_.dx.push_back(d.dx.to_double());
  trace_.dy.push_back(d.dy.to_double());
  if (prev_rho_) {
    Real inc = d.rho - *prev_rho_;
    if (!max_increase_ || inc > *max_increase_) max_increase_ = std::move(inc);
  }
  prev_rho_ = d.rho;
  if (!trace_.checkpoints.empty() && trace_.checkpoints.back().n == n) {
    trace_.checkpoints.back().step = d;
  }
}

OrbitTrace TraceBuilder::finish(const OrbitStepper& s) {
  const Complex& z = s.z();
  trace_.x.push_back(z.re.to_double());
  trace_.y.push_back(z.im.to_double());
  trace_.arg.push_back(s.arg().to_double());
  if (trace_.checkpoints.empty() || trace_.checkpoints.back().n != s.n()) {
    trace_.checkpoints.push_back({s.n(), UHPoint::make(z), s.arg(), std::nullopt});
  }
  trace_.max_rho_increase = max_increase_ ? max_increase_->to_double() : 0.0;
  return std::move(trace_);
}

OrbitTrace iterate_orbit(const ParabolicMap& f, const UHPoint& z0, std::size_t iterations,
                         Bits bits, OrbitOptions options) {
  PrecisionScope scope(bits);
  MapEvaluator eval(f);
  OrbitStepper s(eval, z0);
  TraceBuilder b(f.label(), iterations, options);
  for (std::size_t n = 0; n < iterations; ++n) {
    b.record_point(s);
    StepDetail d = s.step();
    b.record_step(n, d);
  }
  return b.finish(s);
}

PommerenkeReport pommerenke_b(const OrbitTrace& t, double cauchy_tol) {
  const std::size_t N = t.iterations();
  if (N < 100) throw ContractError("Pommerenke diagnostic needs at least 100 iterations");
  PommerenkeReport r;
  r.b = median(b_samples(t, N / 2, N));
  r.b_third_quarter = median(b_samples(t, N / 2, 3 * N / 4));
  r.b_last_quarter = median(b_samples(t, 3 * N / 4, N));
  r.converged = std::abs(r.b_third_quarter - r.b_last_quarter) <= cauchy_tol * std::max(1.0, std::abs(r.b));
  for (std::size_t n = N / 10; n < N; ++n) {
    double zr = std::hypot(t.dx[n], t.dy[n]) / std::hypot(t.x[n], t.y[n]);
    r.max_z_ratio_dev = std::max(r.max_z_ratio_dev, zr);
    r.max_y_ratio_dev = std::max(r.max_y_ratio_dev, t.dy[n] / t.y[n]);
  }
  return r;
}

std::string to_string(StepLabel l) {
  switch (l) {
    case StepLabel::zero:
      return "zero";
    case StepLabel::positive:
      return "positive";
    case StepLabel::inconclusive:
      return "inconclusive";
  }
  return "?";
}

StepClassification classify_trace(const OrbitTrace& t, const ClassifierConfig& cfg) {
  const std::size_t N = t.iterations();
  if (N < cfg.min_budget) throw ContractError("classifier budget below " + std::to_string(cfg.min_budget));
  StepClassification c;
  c.iterations = N;
  c.b = pommerenke_b(t).b;
  c.rho_tail = t.rho_step[N - 1];
  c.rho_decade_start = t.rho_step[N / 10];
  auto [lo, hi] = std::minmax_element(t.rho_step.begin() + static_cast<std::ptrdiff_t>(N / 10),
                                      t.rho_step.end());
  c.rho_decade_min = *lo;
  c.rho_decade_max = *hi;
  c.window_mean_early = mean(t.rho_step, N / 10, N / 2);
  c.window_mean_late = mean(t.rho_step, N / 2, N);
  bool stable = std::abs(c.window_mean_late - c.window_mean_early) <= cfg.stable_rel * c.window_mean_late;
  if (c.rho_tail < cfg.zero_rho && c.rho_tail <= c.rho_decade_start && std::abs(c.b) <= cfg.zero_b) {
    c.label = StepLabel::zero;
  } else if (c.rho_decade_min >= cfg.positive_rho && stable) {
    c.label = StepLabel::positive;
  }
  return c;
}

StepClassification classify_step(const ParabolicMap& f, const UHPoint& z0, std::size_t budget,
                                 const ClassifierConfig& cfg, Bits bits) {
  if (budget < cfg.min_budget) {
    throw ContractError("classifier budget below " + std::to_string(cfg.min_budget));
  }
  return classify_trace(iterate_orbit(f, z0, budget, bits), cfg);
}

}  // namespace hslope
