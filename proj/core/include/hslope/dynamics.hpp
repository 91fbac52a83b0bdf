#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hslope/maps.hpp"

namespace hslope {

/// Step z_n -> z_{n+1} with its forward differences, at the working precision.
struct StepDetail {
  Real rho;  // pseudo-hyperbolic distance rho(z_{n+1}, z_n)
  Real dx;
  Real dy;
};

struct Checkpoint {
  std::size_t n = 0;
  UHPoint z;
  Real arg;
  std::optional<StepDetail> step;  // absent for the final point
};

struct OrbitOptions {
  std::size_t full_storage_limit = 10000;  // every checkpoint up to this index
  double checkpoint_ratio = 1.01;          // geometric spacing afterwards
};

/// Orbit z_0..z_N. Per-index series are kept in double; checkpoints keep the
/// full-precision values.
struct OrbitTrace {
  std::string map_id;
  Bits precision_bits = 0;
  std::vector<double> x, y, arg;         // n = 0..N
  std::vector<double> rho_step, dx, dy;  // n = 0..N-1
  std::vector<Checkpoint> checkpoints;
  double max_rho_increase = 0.0;  // max of rho_{n+1} - rho_n, computed at full precision

  std::size_t iterations() const noexcept { return arg.empty() ? 0 : arg.size() - 1; }
  const Checkpoint& final_checkpoint() const { return checkpoints.back(); }
};

/// Advances one orbit at the working precision.
class OrbitStepper {
 public:
  OrbitStepper(const MapEvaluator& eval, const UHPoint& z0);

  /// Throws NumericError if the image leaves H or Im decreases, and
  /// PrecisionError if Im stalls for a map that must increase it.
  StepDetail step();

  const Complex& z() const noexcept { return z_; }
  const Real& arg() const noexcept { return arg_; }
  std::size_t n() const noexcept { return n_; }

 private:
  const MapEvaluator* eval_;
  Complex z_;
  Real arg_;
  std::size_t n_ = 0;
};

/// Builds an OrbitTrace from successive stepper states.
class TraceBuilder {
 public:
  TraceBuilder(std::string map_id, std::size_t iterations, OrbitOptions options = {});
  void record_point(const OrbitStepper& s);
  void record_step(std::size_t n, const StepDetail& d);
  OrbitTrace finish(const OrbitStepper& s);

 private:
  bool wants_checkpoint(std::size_t n);

  OrbitTrace trace_;
  OrbitOptions options_;
  std::size_t next_checkpoint_ = 0;
  std::optional<Real> prev_rho_;
  std::optional<Real> max_increase_;
};

/// N iterations of f from z0 at `bits` of precision.
OrbitTrace iterate_orbit(const ParabolicMap& f, const UHPoint& z0, std::size_t iterations,
                         Bits bits = kDefaultBits, OrbitOptions options = {});

struct PommerenkeReport {
  double b = 0.0;            // median of dx_n / y_n over the last half
  double b_third_quarter = 0.0;
  double b_last_quarter = 0.0;
  bool converged = false;    // quarter medians agree to the Cauchy tolerance
  double max_z_ratio_dev = 0.0;  // max |z_{n+1}/z_n - 1| over [N/10, N)
  double max_y_ratio_dev = 0.0;  // max |y_{n+1}/y_n - 1| over [N/10, N)
};

/// Requires at least 100 iterations.
PommerenkeReport pommerenke_b(const OrbitTrace& trace, double cauchy_tol = 1e-4);

enum class StepLabel { zero, positive, inconclusive };
std::string to_string(StepLabel l);

struct ClassifierConfig {
  std::size_t min_budget = 1000;
  double zero_rho = 1e-3;       // final rho below this ...
  double zero_b = 1e-3;         // ... and |b| below this -> zero
  double positive_rho = 1e-2;   // rho over the final decade above this ...
  double stable_rel = 5e-2;     // ... with stable window means -> positive
};

struct StepClassification {
  StepLabel label = StepLabel::inconclusive;
  double b = 0.0;
  double rho_tail = 0.0;        // final rho step
  double rho_decade_start = 0.0;
  double rho_decade_min = 0.0;
  double rho_decade_max = 0.0;
  double window_mean_early = 0.0;  // mean rho over [N/10, N/2)
  double window_mean_late = 0.0;   // mean rho over [N/2, N)
  std::size_t iterations = 0;
};

StepClassification classify_trace(const OrbitTrace& trace, const ClassifierConfig& cfg = {});
/// Throws ContractError when budget < cfg.min_budget.
StepClassification classify_step(const ParabolicMap& f, const UHPoint& z0, std::size_t budget,
                                 const ClassifierConfig& cfg = {}, Bits bits = kDefaultBits);

}  // namespace hslope
