#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hslope/constructions.hpp"
#include "hslope/slope.hpp"

namespace hslope::cli {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; InputError on missing file or bad syntax.
Json load_json_file(const std::string& path);

/// Real as a decimal string with `digits` significant digits.
std::string real_string(const Real& x, int digits);

/// Map spec:
///   {"label": ..., "strategy": ..., "beta" | "beta_tilde": "<decimal>",
///    "measure": {"atoms": [{"t", "mass"}], "density": {"family", "alpha"}}}
/// or a construction spec (see construction_from_json), truncated to its terms.
/// Without "strategy" the closed form is used when one applies, else herglotz.
ParabolicMap map_from_json(const Json& j);
Json map_to_json(const ParabolicMap& f, int digits);

/// {"variant": ..., "terms": [{"a", "gamma"}], "meta": {a_base, a_growth,
///  gamma_base, gamma_growth, K}}
ConstructionSpec construction_from_json(const Json& j);
Json construction_to_json(const ConstructionSpec& spec);
bool looks_like_construction(const Json& j);

Json to_json(const ConditionReport& r);
Json to_json(const LemmaReport& r);
Json to_json(const StepClassification& c, const ClassifierConfig& cfg);
Json to_json(const PommerenkeReport& r);
Json to_json(const SlopeReport& r);
Json to_json(const IndependenceReport& r);
Json to_json(const SingletonReport& r);
Json to_json(const SlopePrediction& p);

/// Header n,re,im,arg,rho_step,dx,dy; one row per checkpoint. The final row
/// leaves the step fields empty.
void write_trace_csv(std::ostream& os, const OrbitTrace& trace, int digits);

}  // namespace hslope::cli
