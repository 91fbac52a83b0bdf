#pragma once

#include <span>
#include <vector>

#include "hslope/dynamics.hpp"

namespace hslope {

struct SlopePolicy {
  /// Tail = [N^(1 - tail_fraction), N] on the index scale.
  double tail_fraction = 0.5;
  /// Last two dyadic windows must agree in both endpoints to this tolerance.
  double stability_tol = 0.01;
  std::size_t min_iterations = 1000;
};

struct WindowStat {
  std::size_t first = 0;  // [first, last] index range, first = 2^j
  std::size_t last = 0;
  double lo = 0.0;
  double hi = 0.0;
};

struct SlopeReport {
  double lo = 0.0;  // interval of arg over the tail
  double hi = 0.0;
  std::size_t tail_start = 0;
  std::size_t iterations = 0;
  std::vector<WindowStat> windows;  // dyadic windows [2^j, 2^{j+1})
  double max_consecutive_gap = 0.0;  // max |arg_{n+1} - arg_n| over the tail
  bool converged = false;

  double midpoint() const noexcept { return 0.5 * (lo + hi); }
  double width() const noexcept { return hi - lo; }
};

/// `args` holds arg(z_0..z_N). Throws ContractError when N < policy.min_iterations.
SlopeReport slope_report(std::span<const double> args, const SlopePolicy& policy = {});
SlopeReport slope_report(const OrbitTrace& trace, const SlopePolicy& policy = {});

struct SeedPairStat {
  std::size_t first = 0;
  std::size_t second = 0;
  double rho_initial = 0.0;
  double rho_final = 0.0;
  std::size_t rho_increases = 0;      // steps where rho(z_n, w_n) grew
  double max_arg_diff_final_decade = 0.0;
};

struct IndependenceReport {
  StepClassification classification;
  std::vector<SlopeReport> slopes;  // per seed
  std::vector<SeedPairStat> pairs;
  double interval_tol = 0.05;
  double arg_diff_tol = 0.02;
  bool intervals_agree = false;
  bool args_agree = false;
  bool rho_monotone = false;
  bool passed() const noexcept { return intervals_agree && args_agree && rho_monotone; }
};

/// Runs all seeds in lockstep at `bits`. Requires at least two seeds and a
/// zero-step classification of the first seed's orbit (ContractError otherwise).
IndependenceReport check_initial_point_independence(const ParabolicMap& f,
                                                    const std::vector<UHPoint>& seeds,
                                                    std::size_t budget,
                                                    const SlopePolicy& policy = {},
                                                    double interval_tol = 0.05,
                                                    double arg_diff_tol = 0.02,
                                                    Bits bits = kDefaultBits,
                                                    const ClassifierConfig& cfg = {});

struct SingletonReport {
  StepClassification classification;
  std::vector<SlopeReport> slopes;
  std::vector<double> final_x_over_y;  // sign decides 0 (positive) or pi (negative)
  std::vector<double> targets;         // 0 or pi per seed, NaN if neither
  double tol = 0.05;
  bool passed = false;
};

/// Positive-step maps: every seed's slope collapses to the same point of {0, pi}.
/// Requires a positive-step classification (ContractError otherwise).
SingletonReport check_positive_step_singleton(const ParabolicMap& f,
                                              const std::vector<UHPoint>& seeds,
                                              std::size_t budget,
                                              const SlopePolicy& policy = {}, double tol = 0.05,
                                              Bits bits = kDefaultBits,
                                              const ClassifierConfig& cfg = {});

}  // namespace hslope
