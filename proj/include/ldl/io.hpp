#pragma once

// File formats. Everything is JSON except the region sweep, which is CSV.
//
// Correlation: {"scenario": {"parties":N,"inputs":[...],"outcomes":[...]},
//               "kind": "full"|"postselected",
//               "entries": [{"x":[...], "a":[...], "p": <prob>}, ...]}
// Probabilities are accepted as rational strings "p/q", decimal strings, or
// JSON floats. Inputs and outcomes are 1-based in files; the non-detection
// symbol is the string "null-outcome". Exact mode emits rational strings,
// float mode emits JSON numbers; entries are emitted in lexicographic
// (input, outcome) order, so equal data produces identical bytes.

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "ldl/correlation.hpp"
#include "ldl/geometry.hpp"
#include "ldl/inequality.hpp"
#include "ldl/quantum.hpp"
#include "ldl/rational.hpp"
#include "ldl/scenario.hpp"
#include "ldl/vertices.hpp"

namespace ldl::io {

using json = nlohmann::ordered_json;

enum class NumericMode { Exact, Float };

// --- scalars ---------------------------------------------------------------

Rat parse_probability(const json& j);
json emit_value(const Rat& q, NumericMode mode);

// --- scenario / bounds / efficiencies ---------------------------------------

Scenario parse_scenario(const json& j);
json emit_scenario(const Scenario& sc);

DetectionBounds parse_bounds(const json& j);
json emit_bounds(const DetectionBounds& b, NumericMode mode);

ObservedEfficiencies<Rat> parse_efficiencies(const json& j, const Scenario& sc);
json emit_efficiencies(const Scenario& sc, const std::vector<Rat>& eta, NumericMode mode);

// --- correlations ------------------------------------------------------------

template <bool WithNull>
CorrelationTable<Rat, WithNull> parse_correlation_table(const json& j);
FullCorrelation<Rat> parse_full_correlation(const json& j);
PostselectedCorrelation<Rat> parse_postselected_correlation(const json& j);

json emit_correlation(const FullCorrelation<Rat>& c, NumericMode mode);
json emit_correlation(const PostselectedCorrelation<Rat>& c, NumericMode mode);
json emit_correlation(const PostselectedCorrelation<double>& c);
json emit_correlation(const FullCorrelation<double>& c);

// --- vertex lists -------------------------------------------------------------

json emit_vertex_list(const Scenario& sc, const DetectionBounds& bounds,
                      const std::vector<ProductVertex>& vertices, NumericMode mode);
std::vector<FullCorrelation<Rat>> parse_vertex_list(const json& j);

// --- certificates -------------------------------------------------------------

json emit_certificate(const Certificate<Rat>& cert, NumericMode mode);
json emit_certificate(const Certificate<double>& cert);
Certificate<Rat> parse_certificate(const json& j);

// --- quantum inputs -----------------------------------------------------------

TwoQubitState parse_state(const json& j);
json emit_state(const TwoQubitState& s);
std::pair<ProjectiveSetting, ProjectiveSetting> parse_settings(const json& j);
json emit_settings(const ProjectiveSetting& alice, const ProjectiveSetting& bob);

// --- local distributions for the scheme subcommand ------------------------------

std::vector<std::vector<Rat>> parse_local_distributions(const json& j, int n_inputs,
                                                        int n_outcomes);

// --- region CSV -----------------------------------------------------------------

std::string region_csv(const std::vector<Eq5RegionRow<double>>& rows);
std::string region_csv(const std::vector<Eq5RegionRow<Rat>>& rows);

// --- error envelope ---------------------------------------------------------------

json error_json(const LdlError& e);

}  // namespace ldl::io
