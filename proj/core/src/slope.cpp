#include "hslope/slope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hslope/errors.hpp"

namespace hslope {

namespace {

std::pair<double, double> range_of(std::span<const double> v, std::size_t first, std::size_t last) {
  auto [lo, hi] = std::minmax_element(v.begin() + static_cast<std::ptrdiff_t>(first),
                                      v.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  return {*lo, *hi};
}

}  // namespace

SlopeReport slope_report(std::span<const double> args, const SlopePolicy& policy) {
  if (args.empty()) throw ContractError("empty argument sequence");
  const std::size_t N = args.size() - 1;
  if (N < policy.min_iterations) {
    throw ContractError("slope report needs at least " + std::to_string(policy.min_iterations) +
                        " iterations");
  }
  if (!(policy.tail_fraction > 0.0) || !(policy.tail_fraction <= 1.0)) {
    throw ContractError("tail fraction must lie in (0, 1]");
  }
  SlopeReport r;
  r.iterations = N;
  double start = std::ceil(std::pow(static_cast<double>(N), 1.0 - policy.tail_fraction));
  r.tail_start = std::min(N, static_cast<std::size_t>(start));
  std::tie(r.lo, r.hi) = range_of(args, r.tail_start, N);
  for (std::size_t n = r.tail_start; n < N; ++n) {
    r.max_consecutive_gap = std::max(r.max_consecutive_gap, std::abs(args[n + 1] - args[n]));
  }
  for (std::size_t first = 1; first <= N; first *= 2) {
    std::size_t last = std::min(2 * first - 1, N);
    auto [lo, hi] = range_of(args, first, last);
    r.windows.push_back({first, last, lo, hi});
  }
  if (r.windows.size() >= 2) {
    const auto& a = r.windows[r.windows.size() - 2];
    const auto& b = r.windows.back();
    r.converged = std::abs(a.lo - b.lo) <= policy.stability_tol &&
                  std::abs(a.hi - b.hi) <= policy.stability_tol;
  }
  return r;
}

SlopeReport slope_report(const OrbitTrace& trace, const SlopePolicy& policy) {
  return slope_report(std::span<const double>(trace.arg), policy);
}

IndependenceReport check_initial_point_independence(const ParabolicMap& f,
                                                    const std::vector<UHPoint>& seeds,
                                                    std::size_t budget, const SlopePolicy& policy,
                                                    double interval_tol, double arg_diff_tol,
                                                    Bits bits, const ClassifierConfig& cfg) {
  if (seeds.size() < 2) throw ContractError("independence check needs at least two seeds");
  if (budget < std::max(cfg.min_budget, policy.min_iterations)) {
    throw ContractError("budget too small for the independence check");
  }
  PrecisionScope scope(bits);
  MapEvaluator eval(f);
  std::vector<OrbitStepper> steppers;
  std::vector<TraceBuilder> builders;
  for (const UHPoint& s : seeds) {
    steppers.emplace_back(eval, s);
    builders.emplace_back(f.label(), budget, OrbitOptions{0, 2.0});
  }
  IndependenceReport rep;
  rep.interval_tol = interval_tol;
  rep.arg_diff_tol = arg_diff_tol;

  std::vector<Real> prev_rho;
  auto pair_rho = [&](std::size_t i, std::size_t j) {
    return pseudo_hyperbolic_distance(UHPoint::make(steppers[i].z()), UHPoint::make(steppers[j].z()));
  };
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) {
      Real r = pair_rho(i, j);
      rep.pairs.push_back({i, j, r.to_double(), 0.0, 0, 0.0});
      prev_rho.push_back(std::move(r));
    }
  }
  for (std::size_t n = 0; n < budget; ++n) {
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      builders[k].record_point(steppers[k]);
      StepDetail d = steppers[k].step();
      builders[k].record_step(n, d);
    }
    std::size_t p = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      for (std::size_t j = i + 1; j < seeds.size(); ++j, ++p) {
        Real r = pair_rho(i, j);
        if (r > prev_rho[p]) ++rep.pairs[p].rho_increases;
        prev_rho[p] = std::move(r);
      }
    }
  }
  std::vector<OrbitTrace> traces;
  for (std::size_t k = 0; k < seeds.size(); ++k) traces.push_back(builders[k].finish(steppers[k]));

  rep.classification = classify_trace(traces[0], cfg);
  if (rep.classification.label != StepLabel::zero) {
    throw ContractError("hypothesis violated: orbit is not of zero hyperbolic step (classified " +
                        to_string(rep.classification.label) + ")");
  }
  for (const auto& t : traces) rep.slopes.push_back(slope_report(t, policy));

  rep.intervals_agree = true;
  rep.args_agree = true;
  rep.rho_monotone = true;
  std::size_t p = 0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j, ++p) {
      auto& ps = rep.pairs[p];
      ps.rho_final = prev_rho[p].to_double();
      for (std::size_t n = budget / 10; n <= budget; ++n) {
        ps.max_arg_diff_final_decade =
            std::max(ps.max_arg_diff_final_decade, std::abs(traces[i].arg[n] - traces[j].arg[n]));
      }
      const auto& a = rep.slopes[i];
      const auto& b = rep.slopes[j];
      if (std::abs(a.lo - b.lo) > interval_tol || std::abs(a.hi - b.hi) > interval_tol) {
        rep.intervals_agree = false;
      }
      if (ps.max_arg_diff_final_decade > arg_diff_tol) rep.args_agree = false;
      if (ps.rho_increases > 0) rep.rho_monotone = false;
    }
  }
  return rep;
}

SingletonReport check_positive_step_singleton(const ParabolicMap& f,
                                              const std::vector<UHPoint>& seeds,
                                              std::size_t budget, const SlopePolicy& policy,
                                              double tol, Bits bits, const ClassifierConfig& cfg) {
  if (seeds.empty()) throw ContractError("singleton check needs at least one seed");
  SingletonReport rep;
  rep.tol = tol;
  std::vector<OrbitTrace> traces;
  for (const UHPoint& s : seeds) traces.push_back(iterate_orbit(f, s, budget, bits));
  rep.classification = classify_trace(traces[0], cfg);
  if (rep.classification.label != StepLabel::positive) {
    throw ContractError("hypothesis violated: orbit is not of positive hyperbolic step (classified " +
                        to_string(rep.classification.label) + ")");
  }
  rep.passed = true;
  for (const auto& t : traces) {
    SlopeReport s = slope_report(t, policy);
    double ratio = t.x.back() / t.y.back();
    double target = std::numeric_limits<double>::quiet_NaN();
    for (double c : {0.0, std::numbers::pi}) {
      if (std::abs(s.lo - c) <= tol && std::abs(s.hi - c) <= tol) target = c;
    }
    if (std::isnan(target) || (!rep.targets.empty() && target != rep.targets.front())) {
      rep.passed = false;
    }
    rep.final_x_over_y.push_back(ratio);
    rep.targets.push_back(target);
    rep.slopes.push_back(std::move(s));
  }
  return rep;
}

}  // namespace hslope
