#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "hslope/errors.hpp"
#include "parallel.hpp"
#include "serialization.hpp"

#ifndef HSLOPE_VERSION
#define HSLOPE_VERSION "0.0.0"
#endif

namespace hslope::cli {

namespace {

const std::set<std::string> kFlags{"no-timestamp", "search", "singleton"};

struct Common {
  Bits bits = kDefaultBits;
  int digits = 30;
  unsigned jobs = 1;
  std::string config;
  bool no_timestamp = false;
};

struct SimulateArgs {
  std::string map, z0 = "0,1", out;
  std::size_t iters = 1000;
};

struct ClassifyArgs {
  std::string map, z0 = "0,1", out;
  std::size_t budget = 10000;
  ClassifierConfig cfg;
};

struct SlopeArgs {
  std::string map, z0 = "0,1", out;
  std::vector<std::string> seeds;
  std::size_t iters = 100000;
  SlopePolicy policy;
  double interval_tol = 0.05;
  double arg_tol = 0.02;
  bool singleton = false;
};

struct ConstructArgs {
  std::string variant = "full_interval", out;
  int K = 4;
  bool search = false;
  std::string a_base = "1", a_growth = "1", gamma_base = "1", gamma_growth = "1";
  SearchBounds bounds;
};

struct ValidateArgs {
  std::string spec, out;
};

struct QuadcheckArgs {
  std::string family = "alpha_right", out;
  std::vector<std::string> alphas{"0.25", "0.5", "0.75"};
  std::vector<std::string> radii{"0.5", "2", "10"};
  std::vector<std::string> angles{"1/6", "1/2", "5/6"};  // multiples of pi
};

struct LemmaArgs {
  std::string spec, out;
  std::vector<int> ks{1, 2, 3};
  int grid = 32;
  double C = 1.25;
  Bits bits = 512;
};

std::string timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json run_info(const std::string& command, const Common& c, Bits bits) {
  Json j{{"tool", "hslope"}, {"version", HSLOPE_VERSION}, {"command", command}, {"precision_bits", bits}};
  if (!c.no_timestamp) j["generated_at"] = timestamp();
  return j;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

UHPoint parse_point(const std::string& text, const std::string& name) {
  auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw InputError(name + ": expected 're,im'");
  }
  Real re, im;
  try {
    re = Real::parse(text.substr(0, comma));
    im = Real::parse(text.substr(comma + 1));
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
  if (!(im > Real(0))) throw InputError(name + " not in upper half-plane");
  return UHPoint::make(std::move(re), std::move(im));
}

ParabolicMap load_map(const std::string& path) { return map_from_json(load_json_file(path)); }

double parse_pi_multiple(const std::string& text) {
  return parse_rational(text).convert_to<double>() * std::acos(-1.0);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Replaces every occurrence of the config's options in `args` by the config
/// values, so the file takes precedence over the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  Json cfg = load_json_file(path);
  if (!cfg.is_object()) throw InputError("config: expected a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") throw InputError("config: nested 'config' is not allowed");
    const std::string opt = "--" + key;
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == opt) {
        if (!kFlags.count(key)) ++i;
        continue;
      }
      if (args[i].rfind(opt + "=", 0) == 0) continue;
      kept.push_back(args[i]);
    }
    args = std::move(kept);
    auto scalar = [&](const Json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number() || v.is_boolean()) return v.dump();
      throw InputError("config: unsupported value for '" + key + "'");
    };
    if (kFlags.count(key)) {
      if (!value.is_boolean()) throw InputError("config: '" + key + "' must be true or false");
      if (value.get<bool>()) args.push_back(opt);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        args.push_back(opt);
        args.push_back(scalar(v));
      }
    } else {
      args.push_back(opt);
      args.push_back(scalar(value));
    }
  }
  return args;
}

int cmd_simulate(const SimulateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  ParabolicMap f = load_map(a.map);
  UHPoint z0 = parse_point(a.z0, "z0");
  OrbitTrace trace = iterate_orbit(f, z0, a.iters, c.bits);
  std::ostringstream csv;
  write_trace_csv(csv, trace, c.digits);
  emit(csv.str(), a.out, out);
  const Checkpoint& last = trace.final_checkpoint();
  std::ostringstream summary;
  summary << "final z = " << real_string(last.z.re(), c.digits) << "," << real_string(last.z.im(), c.digits)
          << "  arg = " << real_string(last.arg, c.digits)
          << "  rho_step = " << (trace.rho_step.empty() ? std::string("n/a") : fmt(trace.rho_step.back())) << "\n";
  (a.out.empty() ? err : out) << summary.str();
  return kExitOk;
}

int cmd_classify(const ClassifyArgs& a, const Common& c, std::ostream& out) {
  ParabolicMap f = load_map(a.map);
  UHPoint z0 = parse_point(a.z0, "z0");
  if (a.budget < a.cfg.min_budget) {
    throw ContractError("budget below minimum (" + std::to_string(a.cfg.min_budget) + ")");
  }
  OrbitTrace trace = iterate_orbit(f, z0, a.budget, c.bits);
  StepClassification cls = classify_trace(trace, a.cfg);
  Json j = to_json(cls, a.cfg);
  j["map"] = f.label();
  j["z0"] = a.z0;
  j["pommerenke"] = to_json(pommerenke_b(trace));
  j["prediction"] = to_json(predict_slope(f));
  j["run"] = run_info("classify", c, c.bits);
  emit(dump(j), a.out, out);
  return kExitOk;
}

int cmd_slope(const SlopeArgs& a, const Common& c, std::ostream& out) {
  ParabolicMap f = load_map(a.map);
  std::vector<std::string> texts = a.seeds.empty() ? std::vector<std::string>{a.z0} : a.seeds;
  std::vector<UHPoint> seeds;
  for (const auto& s : texts) seeds.push_back(parse_point(s, "seed"));
  Json j;
  j["map"] = f.label();
  j["seeds"] = texts;
  j["prediction"] = to_json(predict_slope(f));
  if (a.singleton) {
    j["singleton"] = to_json(check_positive_step_singleton(f, seeds, a.iters, a.policy, a.interval_tol, c.bits));
  } else if (seeds.size() >= 2) {
    j["independence"] = to_json(check_initial_point_independence(f, seeds, a.iters, a.policy, a.interval_tol,
                                                                 a.arg_tol, c.bits));
  } else {
    OrbitTrace trace = iterate_orbit(f, seeds[0], a.iters, c.bits);
    j["slope"] = to_json(slope_report(trace, a.policy));
  }
  j["policy"] = {{"tail_fraction", a.policy.tail_fraction}, {"stability_tol", a.policy.stability_tol}};
  j["run"] = run_info("slope", c, c.bits);
  emit(dump(j), a.out, out);
  return kExitOk;
}

int cmd_construct(const ConstructArgs& a, const Common& c, std::ostream& out) {
  auto variant = variant_from_string(a.variant);
  if (!variant) throw InputError("variant: expected full or half");
  if (a.search) {
    SearchResult r = search_constants(*variant, a.K, a.bounds);
    if (!r.spec) {
      Json j{{"feasible", false}, {"candidates", r.candidates}, {"binding", nullptr}};
      if (r.binding) {
        j["binding"] = {{"condition", r.binding->condition},
                        {"k", r.binding->k},
                        {"statement", r.binding->statement},
                        {"lhs", to_exact_string(r.binding->lhs)},
                        {"rhs", to_exact_string(r.binding->rhs)}};
      }
      j["run"] = run_info("construct", c, c.bits);
      emit(dump(j), a.out, out);
      return kExitOk;
    }
    emit(dump(construction_to_json(*r.spec)), a.out, out);
    return kExitOk;
  }
  Generator g;
  g.a_base = parse_rational(a.a_base);
  g.a_growth = parse_rational(a.a_growth);
  g.gamma_base = parse_rational(a.gamma_base);
  g.gamma_growth = parse_rational(a.gamma_growth);
  g.K = a.K;
  if (!(g.a_base > 0) || !(g.a_growth > 0) || !(g.gamma_base > 0) || !(g.gamma_growth > 0)) {
    throw InputError("generator constants must be positive");
  }
  emit(dump(construction_to_json(build_construction(*variant, g))), a.out, out);
  return kExitOk;
}

int cmd_validate(const ValidateArgs& a, const Common& c, std::ostream& out) {
  ConstructionSpec spec = construction_from_json(load_json_file(a.spec));
  Json j = to_json(validate_conditions(spec));
  j["run"] = run_info("validate", c, c.bits);
  emit(dump(j), a.out, out);
  return kExitOk;
}

int cmd_quadcheck(const QuadcheckArgs& a, const Common& c, std::ostream& out) {
  auto family = density_family_from_string(a.family);
  if (!family) throw InputError("family: expected alpha_right, alpha_left or log_right");
  struct Row {
    std::string alpha, r, theta;
  };
  std::vector<Row> rows;
  std::vector<std::string> alphas = *family == DensityFamily::log_right ? std::vector<std::string>{"0"} : a.alphas;
  for (const auto& al : alphas) {
    for (const auto& r : a.radii) {
      for (const auto& th : a.angles) rows.push_back({al, r, th});
    }
  }
  auto lines = parallel_map(rows.size(), c.jobs, [&](std::size_t i) {
    const Row& row = rows[i];
    Density d{*family, *family == DensityFamily::log_right ? Real(0) : Real::parse(row.alpha)};
    if (*family != DensityFamily::log_right) FiniteMeasure::density_only(*family, d.alpha);
    double r = parse_rational(row.r).convert_to<double>();
    double theta = parse_pi_multiple(row.theta);
    if (!(r > 0.0) || !(theta > 0.0) || !(theta < std::acos(-1.0))) {
      throw InputError("quadcheck points need r > 0 and theta in (0, pi)");
    }
    Complex z = polar(Real(r), Real(theta));
    std::complex<double> q = density_reduced_p(d, z.to_double());
    Complex closed = closed_form_p(d, z);
    std::complex<double> cd = closed.to_double();
    double rel = std::abs(q - cd) / std::abs(cd);
    std::ostringstream os;
    os << a.family << ',' << row.alpha << ',' << row.r << ',' << row.theta << ',' << fmt(q.real()) << ','
       << fmt(q.imag()) << ',' << fmt(cd.real()) << ',' << fmt(cd.imag()) << ',' << fmt(rel) << '\n';
    return std::pair{os.str(), rel};
  });
  std::ostringstream csv;
  csv << "family,alpha,r,theta_over_pi,quad_re,quad_im,closed_re,closed_im,rel_err\n";
  double worst = 0.0;
  for (const auto& [line, rel] : lines) {
    csv << line;
    worst = std::max(worst, rel);
  }
  emit(csv.str(), a.out, out);
  return kExitOk;
}

int cmd_lemmacheck(const LemmaArgs& a, const Common& c, std::ostream& out) {
  ConstructionSpec spec = construction_from_json(load_json_file(a.spec));
  LemmaGridOptions opt;
  opt.samples = a.grid;
  opt.C = a.C;
  opt.bits = a.bits;
  auto reports = parallel_map(a.ks.size(), c.jobs, [&](std::size_t i) {
    return check_region_lemmas(spec, a.ks[i], opt);
  });
  Json list = Json::array();
  bool passed = true;
  for (const auto& r : reports) {
    passed = passed && r.passed;
    list.push_back(to_json(r));
  }
  Json j{{"passed", passed}, {"reports", list}};
  j["run"] = run_info("lemmacheck", c, a.bits);
  emit(dump(j), a.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbits, slopes and explicit constructions for parabolic self-maps of the upper half-plane",
               "hslope"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--bits", common.bits, "Working precision in bits")
      ->envname("HSLOPE_BITS")
      ->check(CLI::Range(32, 1 << 20));
  app.add_option("--digits", common.digits, "Significant digits in emitted reals")->check(CLI::Range(1, 100000));
  app.add_option("--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_option("--config", common.config, "JSON file whose keys override flags");
  app.add_flag("--no-timestamp", common.no_timestamp, "Omit the generated_at field");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Iterate a map and write the orbit as CSV");
  simulate->add_option("--map", sim.map, "Map spec JSON")->required();
  simulate->add_option("--z0", sim.z0, "Initial point re,im");
  simulate->add_option("--iters", sim.iters, "Iterations");
  simulate->add_option("--out", sim.out, "CSV output path (default stdout)");

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "Classify the hyperbolic step");
  classify->add_option("--map", cls.map, "Map spec JSON")->required();
  classify->add_option("--z0", cls.z0, "Initial point re,im");
  classify->add_option("--budget", cls.budget, "Iterations");
  classify->add_option("--zero-rho", cls.cfg.zero_rho, "Final rho below which the step is zero");
  classify->add_option("--zero-b", cls.cfg.zero_b, "|b| below which the step is zero");
  classify->add_option("--positive-rho", cls.cfg.positive_rho, "Tail rho above which the step is positive");
  classify->add_option("--stable-rel", cls.cfg.stable_rel, "Relative drift of window means for stability");
  classify->add_option("--out", cls.out, "JSON output path");

  SlopeArgs sl;
  auto* slope = app.add_subcommand("slope", "Estimate the slope set");
  slope->add_option("--map", sl.map, "Map spec JSON")->required();
  slope->add_option("--z0", sl.z0, "Initial point re,im");
  slope->add_option("--seed", sl.seeds, "Seed re,im (repeat for an independence check)");
  slope->add_option("--iters", sl.iters, "Iterations");
  slope->add_option("--tail-fraction", sl.policy.tail_fraction, "Tail [N^(1-f), N] on the index scale");
  slope->add_option("--stability-tol", sl.policy.stability_tol, "Window agreement tolerance");
  slope->add_option("--interval-tol", sl.interval_tol, "Tolerance between seed intervals");
  slope->add_option("--arg-tol", sl.arg_tol, "Tolerance between seed arguments over the final decade");
  slope->add_flag("--singleton", sl.singleton, "Check collapse to 0 or pi for positive-step maps");
  slope->add_option("--out", sl.out, "JSON output path");

  ConstructArgs con;
  auto* construct = app.add_subcommand("construct", "Build an explicit construction spec");
  construct->add_option("--variant", con.variant, "full or half");
  construct->add_option("--K", con.K, "Number of terms");
  construct->add_flag("--search", con.search, "Search growth constants passing all conditions");
  construct->add_option("--max-growth-exp", con.bounds.max_growth_exponent, "Growth factors up to 2^e");
  construct->add_option("--max-base-exp", con.bounds.max_base_exponent, "gamma_base up to 2^e");
  construct->add_option("--a-base", con.a_base);
  construct->add_option("--a-growth", con.a_growth);
  construct->add_option("--gamma-base", con.gamma_base);
  construct->add_option("--gamma-growth", con.gamma_growth);
  construct->add_option("--out", con.out, "JSON output path");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Check the construction conditions");
  validate->add_option("--spec", val.spec, "Construction spec JSON")->required();
  validate->add_option("--out", val.out, "JSON output path");

  QuadcheckArgs qc;
  auto* quadcheck = app.add_subcommand("quadcheck", "Compare quadrature with the closed forms");
  quadcheck->add_option("--family", qc.family, "alpha_right, alpha_left or log_right");
  quadcheck->add_option("--alpha", qc.alphas, "Exponents");
  quadcheck->add_option("--radius", qc.radii, "Radii of the sample points");
  quadcheck->add_option("--angle", qc.angles, "Angles as multiples of pi");
  quadcheck->add_option("--out", qc.out, "CSV output path");

  LemmaArgs lm;
  auto* lemmacheck = app.add_subcommand("lemmacheck", "Sample the region inequalities of a construction");
  lemmacheck->add_option("--spec", lm.spec, "Construction spec JSON")->required();
  lemmacheck->add_option("--k", lm.ks, "Indices to check");
  lemmacheck->add_option("--grid", lm.grid, "Samples per axis");
  lemmacheck->add_option("--C", lm.C, "Height factor of the return region");
  lemmacheck->add_option("--out", lm.out, "JSON output path");

  try {
    args = apply_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    PrecisionScope scope(common.bits);
    if (app.got_subcommand(simulate)) return cmd_simulate(sim, common, out, err);
    if (app.got_subcommand(classify)) return cmd_classify(cls, common, out);
    if (app.got_subcommand(slope)) return cmd_slope(sl, common, out);
    if (app.got_subcommand(construct)) return cmd_construct(con, common, out);
    if (app.got_subcommand(validate)) return cmd_validate(val, common, out);
    if (app.got_subcommand(quadcheck)) return cmd_quadcheck(qc, common, out);
    if (app.got_subcommand(lemmacheck)) {
      if (app.get_option("--bits")->count() > 0) lm.bits = common.bits;
      return cmd_lemmacheck(lm, common, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}

}  // namespace hslope::cli
