#include "serialization.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "hslope/errors.hpp"

namespace hslope::cli {

namespace {

struct Decimal {
  Real value;
  Rational exact;
};

Decimal read_decimal(const Json& j, const std::string& path) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    throw InputError(path + ": expected a decimal string");
  }
  try {
    return {Real::parse(text), parse_rational(text)};
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void require_object(const Json& j, const std::string& path, std::set<std::string> allowed) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw InputError(path + ": unknown field '" + key + "'");
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field '" + key + "'");
  return *it;
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": expected a string");
  return j.get<std::string>();
}

double approx(const Rational& q) { return q.convert_to<double>(); }

Json exact_json(const Rational& q) { return to_exact_string(q); }

Json nullable(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string real_string(const Real& x, int digits) { return x.to_string(digits); }

bool looks_like_construction(const Json& j) {
  return j.is_object() && j.contains("variant") && j.contains("terms");
}

ParabolicMap map_from_json(const Json& j) {
  if (looks_like_construction(j)) return to_parabolic_map(construction_from_json(j));
  require_object(j, "map", {"label", "strategy", "beta", "beta_tilde", "measure"});
  const bool has_beta = j.contains("beta");
  const bool has_tilde = j.contains("beta_tilde");
  if (has_beta == has_tilde) throw InputError("map: give exactly one of 'beta' and 'beta_tilde'");
  Decimal shift = read_decimal(has_beta ? j["beta"] : j["beta_tilde"], has_beta ? "map.beta" : "map.beta_tilde");

  std::vector<Atom> atoms;
  std::optional<Density> density;
  if (j.contains("measure")) {
    const Json& m = j["measure"];
    require_object(m, "map.measure", {"atoms", "density"});
    if (m.contains("atoms")) {
      const Json& list = m["atoms"];
      if (!list.is_array()) throw InputError("map.measure.atoms: expected an array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "map.measure.atoms[" + std::to_string(i) + "]";
        require_object(list[i], path, {"t", "mass"});
        Decimal t = read_decimal(field(list[i], "t", path), path + ".t");
        Decimal mass = read_decimal(field(list[i], "mass", path), path + ".mass");
        atoms.push_back({std::move(t.value), std::move(mass.value), t.exact, mass.exact});
      }
    }
    if (m.contains("density")) {
      const Json& d = m["density"];
      const std::string path = "map.measure.density";
      require_object(d, path, {"family", "alpha"});
      std::string name = read_string(field(d, "family", path), path + ".family");
      auto family = density_family_from_string(name);
      if (!family) {
        throw InputError(path + ".family: unknown family '" + name +
                         "' (expected alpha_right, alpha_left or log_right)");
      }
      Real alpha;
      if (*family != DensityFamily::log_right) {
        alpha = read_decimal(field(d, "alpha", path), path + ".alpha").value;
      }
      density = Density{*family, std::move(alpha)};
    }
  }
  FiniteMeasure measure = FiniteMeasure::make(std::move(atoms), density);

  EvalStrategy strategy = EvalStrategy::herglotz;
  if (j.contains("strategy")) {
    std::string name = read_string(j["strategy"], "map.strategy");
    auto s = eval_strategy_from_string(name);
    if (!s) {
      throw InputError("map.strategy: unknown strategy '" + name +
                       "' (expected herglotz, reduced, closed_alpha_right, closed_alpha_left or closed_log)");
    }
    strategy = *s;
  } else if (measure.atoms().empty() && measure.density()) {
    switch (measure.density()->family) {
      case DensityFamily::alpha_right:
        strategy = EvalStrategy::closed_alpha_right;
        break;
      case DensityFamily::alpha_left:
        strategy = EvalStrategy::closed_alpha_left;
        break;
      case DensityFamily::log_right:
        if (has_tilde && shift.exact == 0) strategy = EvalStrategy::closed_log;
        break;
    }
  }
  ParabolicMap f = has_beta ? ParabolicMap::make(std::move(shift.value), std::move(measure), strategy, shift.exact)
                            : ParabolicMap::with_beta_tilde(std::move(shift.value), std::move(measure),
                                                            strategy, shift.exact);
  if (j.contains("label")) f.set_label(read_string(j["label"], "map.label"));
  return f;
}

Json map_to_json(const ParabolicMap& f, int digits) {
  Json j;
  j["label"] = f.label();
  j["strategy"] = to_string(f.strategy());
  j["beta"] = f.exact_beta() ? to_exact_string(*f.exact_beta()) : real_string(f.beta(), digits);
  j["beta_tilde"] = f.exact_beta_tilde() ? to_exact_string(*f.exact_beta_tilde())
                                         : real_string(f.beta_tilde(), digits);
  Json m = Json::object();
  Json atoms = Json::array();
  for (const Atom& a : f.measure().atoms()) {
    atoms.push_back({{"t", a.exact_t ? to_exact_string(*a.exact_t) : real_string(a.t, digits)},
                     {"mass", a.exact_mass ? to_exact_string(*a.exact_mass) : real_string(a.mass, digits)}});
  }
  m["atoms"] = atoms;
  if (const auto& d = f.measure().density()) {
    Json dj{{"family", to_string(d->family)}};
    if (d->family != DensityFamily::log_right) dj["alpha"] = real_string(d->alpha, digits);
    m["density"] = dj;
  }
  j["measure"] = m;
  return j;
}

ConstructionSpec construction_from_json(const Json& j) {
  require_object(j, "construction", {"variant", "terms", "meta"});
  std::string name = read_string(field(j, "variant", "construction"), "construction.variant");
  auto variant = variant_from_string(name);
  if (!variant) throw InputError("construction.variant: expected full_interval or half_interval");
  const Json& list = field(j, "terms", "construction");
  if (!list.is_array()) throw InputError("construction.terms: expected an array");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string path = "construction.terms[" + std::to_string(i) + "]";
    require_object(list[i], path, {"a", "gamma"});
    terms.push_back({read_decimal(field(list[i], "a", path), path + ".a").exact,
                     read_decimal(field(list[i], "gamma", path), path + ".gamma").exact});
  }
  std::optional<Generator> meta;
  if (j.contains("meta")) {
    const Json& m = j["meta"];
    const std::string path = "construction.meta";
    require_object(m, path, {"a_base", "a_growth", "gamma_base", "gamma_growth", "K"});
    Generator g;
    g.a_base = read_decimal(field(m, "a_base", path), path + ".a_base").exact;
    g.a_growth = read_decimal(field(m, "a_growth", path), path + ".a_growth").exact;
    g.gamma_base = read_decimal(field(m, "gamma_base", path), path + ".gamma_base").exact;
    g.gamma_growth = read_decimal(field(m, "gamma_growth", path), path + ".gamma_growth").exact;
    const Json& K = field(m, "K", path);
    if (!K.is_number_integer()) throw InputError(path + ".K: expected an integer");
    g.K = K.get<int>();
    meta = g;
  }
  return ConstructionSpec::make(*variant, std::move(terms), meta);
}

Json construction_to_json(const ConstructionSpec& spec) {
  Json j;
  j["variant"] = to_string(spec.variant());
  Json terms = Json::array();
  for (const Term& t : spec.terms()) {
    terms.push_back({{"a", to_exact_string(t.a)}, {"gamma", to_exact_string(t.gamma)}});
  }
  j["terms"] = terms;
  if (const auto& g = spec.meta()) {
    j["meta"] = {{"a_base", to_exact_string(g->a_base)},
                 {"a_growth", to_exact_string(g->a_growth)},
                 {"gamma_base", to_exact_string(g->gamma_base)},
                 {"gamma_growth", to_exact_string(g->gamma_growth)},
                 {"K", g->K}};
  }
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["variant"] = to_string(r.variant);
  j["K"] = r.K;
  j["passed"] = r.passed;
  j["first_failure"] = nullptr;
  if (r.first_failure) {
    const auto& c = r.checks[*r.first_failure];
    j["first_failure"] = {{"condition", c.condition},
                          {"k", c.k},
                          {"verdict", to_string(c.verdict)},
                          {"statement", c.statement},
                          {"lhs", exact_json(c.lhs)},
                          {"rhs", exact_json(c.rhs)}};
  }
  j["tail"] = {{"method", r.tail.method},
               {"certified", r.tail.certified},
               {"ratio", exact_json(r.tail.ratio)},
               {"bound", exact_json(r.tail.tail_bound)}};
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"condition", c.condition},
                      {"k", c.k},
                      {"verdict", to_string(c.verdict)},
                      {"statement", c.statement},
                      {"lhs", exact_json(c.lhs)},
                      {"rhs", exact_json(c.rhs)},
                      {"lhs_approx", approx(c.lhs)},
                      {"rhs_approx", approx(c.rhs)}});
  }
  j["checks"] = checks;
  return j;
}

Json to_json(const LemmaReport& r) {
  Json j;
  j["variant"] = to_string(r.variant);
  j["k"] = r.k;
  j["C"] = r.C;
  j["precision_bits"] = r.bits;
  j["passed"] = r.passed;
  Json results = Json::array();
  for (const auto& q : r.results) {
    results.push_back({{"region", q.region},
                       {"inequality", q.inequality},
                       {"counted", q.counted},
                       {"points", q.points},
                       {"violations", q.violations},
                       {"worst_margin", q.worst_margin},
                       {"witness", {{"x", q.witness_x}, {"y", q.witness_y}}}});
  }
  j["results"] = results;
  return j;
}

Json to_json(const StepClassification& c, const ClassifierConfig& cfg) {
  Json j;
  j["label"] = to_string(c.label);
  j["b"] = c.b;
  j["rho_tail"] = c.rho_tail;
  j["iterations"] = c.iterations;
  j["evidence"] = {{"rho_decade_start", c.rho_decade_start},
                   {"rho_decade_min", c.rho_decade_min},
                   {"rho_decade_max", c.rho_decade_max},
                   {"window_mean_early", c.window_mean_early},
                   {"window_mean_late", c.window_mean_late}};
  j["thresholds"] = {{"min_budget", cfg.min_budget},
                     {"zero_rho", cfg.zero_rho},
                     {"zero_b", cfg.zero_b},
                     {"positive_rho", cfg.positive_rho},
                     {"stable_rel", cfg.stable_rel}};
  return j;
}

Json to_json(const PommerenkeReport& r) {
  return {{"b", r.b},
          {"b_third_quarter", r.b_third_quarter},
          {"b_last_quarter", r.b_last_quarter},
          {"converged", r.converged},
          {"max_z_ratio_dev", r.max_z_ratio_dev},
          {"max_y_ratio_dev", r.max_y_ratio_dev}};
}

Json to_json(const SlopeReport& r) {
  Json windows = Json::array();
  for (const auto& w : r.windows) {
    windows.push_back({{"first", w.first}, {"last", w.last}, {"lo", w.lo}, {"hi", w.hi}});
  }
  return {{"interval", {r.lo, r.hi}},
          {"midpoint", r.midpoint()},
          {"width", r.width()},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"tail_start", r.tail_start},
          {"max_consecutive_gap", r.max_consecutive_gap},
          {"windows", windows}};
}

Json to_json(const IndependenceReport& r) {
  Json slopes = Json::array();
  for (const auto& s : r.slopes) slopes.push_back(to_json(s));
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"seeds", {p.first, p.second}},
                     {"rho_initial", p.rho_initial},
                     {"rho_final", p.rho_final},
                     {"rho_increases", p.rho_increases},
                     {"max_arg_diff_final_decade", p.max_arg_diff_final_decade}});
  }
  return {{"passed", r.passed()},
          {"intervals_agree", r.intervals_agree},
          {"args_agree", r.args_agree},
          {"rho_monotone", r.rho_monotone},
          {"interval_tol", r.interval_tol},
          {"arg_diff_tol", r.arg_diff_tol},
          {"slopes", slopes},
          {"pairs", pairs}};
}

Json to_json(const SingletonReport& r) {
  Json slopes = Json::array();
  for (const auto& s : r.slopes) slopes.push_back(to_json(s));
  Json targets = Json::array();
  for (double t : r.targets) targets.push_back(nullable(t));
  return {{"passed", r.passed},
          {"tol", r.tol},
          {"targets", targets},
          {"final_x_over_y", r.final_x_over_y},
          {"slopes", slopes}};
}

Json to_json(const SlopePrediction& p) {
  return {{"label", to_string(p.label)}, {"reason", p.reason}, {"exact", p.exact}};
}

void write_trace_csv(std::ostream& os, const OrbitTrace& trace, int digits) {
  os << "n,re,im,arg,rho_step,dx,dy\n";
  for (const Checkpoint& c : trace.checkpoints) {
    os << c.n << ',' << real_string(c.z.re(), digits) << ',' << real_string(c.z.im(), digits) << ','
       << real_string(c.arg, digits) << ',';
    if (c.step) {
      os << real_string(c.step->rho, digits) << ',' << real_string(c.step->dx, digits) << ','
         << real_string(c.step->dy, digits);
    } else {
      os << ",,";
    }
    os << '\n';
  }
}

}  // namespace hslope::cli
