#include "ldl/io.hpp"

#include <sstream>

namespace ldl::io {

namespace {

std::vector<int> parse_index_tuple(const json& j) {
    if (!j.is_array()) throw ParseError("index tuple must be an array");
    std::vector<int> t;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError("index tuple entries must be integers");
        t.push_back(v.get<int>() - 1);  // files are 1-based
    }
    return t;
}

json emit_index_tuple(const std::vector<int>& t) {
    json arr = json::array();
    for (int v : t) arr.push_back(v + 1);
    return arr;
}

// outcome tuples may contain "null-outcome"; full-table index m_i stands in
std::vector<int> parse_outcome_tuple(const json& j, const Scenario& sc, bool allow_null) {
    if (!j.is_array() || j.size() != static_cast<std::size_t>(sc.n_parties()))
        throw ParseError("outcome tuple arity mismatch");
    std::vector<int> t;
    for (int i = 0; i < sc.n_parties(); ++i) {
        const auto& v = j[static_cast<std::size_t>(i)];
        if (v.is_string()) {
            if (v.get<std::string>() != "null-outcome")
                throw ParseError("unknown outcome symbol '" + v.get<std::string>() + "'");
            if (!allow_null) throw ParseError("null-outcome not allowed in a postselected table");
            t.push_back(sc.outcomes(i));
        } else if (v.is_number_integer()) {
            t.push_back(v.get<int>() - 1);
        } else {
            throw ParseError("outcome entries must be integers or \"null-outcome\"");
        }
    }
    return t;
}

json emit_outcome_tuple(const std::vector<int>& t, const Scenario& sc) {
    json arr = json::array();
    for (int i = 0; i < sc.n_parties(); ++i) {
        int v = t[static_cast<std::size_t>(i)];
        if (v == sc.outcomes(i))
            arr.push_back("null-outcome");
        else
            arr.push_back(v + 1);
    }
    return arr;
}

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace

Rat parse_probability(const json& j) {
    if (j.is_string()) return num::parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_number_float()) return Rat(j.get<double>());
    throw ParseError("probability must be a number or a string");
}

json emit_value(const Rat& q, NumericMode mode) {
    if (mode == NumericMode::Exact) return num::format_rational(q);
    return num::to_double(q);
}

Scenario parse_scenario(const json& j) {
    if (!j.is_object()) throw ParseError("scenario must be an object");
    int parties = require(j, "parties").get<int>();
    std::vector<int> inputs = require(j, "inputs").get<std::vector<int>>();
    std::vector<int> outcomes = require(j, "outcomes").get<std::vector<int>>();
    if (static_cast<int>(inputs.size()) != parties || static_cast<int>(outcomes.size()) != parties)
        throw ParseError("scenario lists must have one entry per party");
    return Scenario(inputs, outcomes);
}

json emit_scenario(const Scenario& sc) {
    json j;
    j["parties"] = sc.n_parties();
    j["inputs"] = sc.inputs_per_party();
    j["outcomes"] = sc.outcomes_per_party();
    return j;
}

DetectionBounds parse_bounds(const json& j) {
    const json& pp = require(j, "per_party");
    if (!pp.is_array() || pp.empty()) throw ParseError("bounds need a non-empty per_party array");
    std::vector<std::pair<Rat, Rat>> b;
    for (const auto& e : pp)
        b.push_back({parse_probability(require(e, "eta_min")), parse_probability(require(e, "eta_max"))});
    return DetectionBounds(std::move(b));
}

json emit_bounds(const DetectionBounds& b, NumericMode mode) {
    json arr = json::array();
    for (int i = 0; i < b.n_parties(); ++i) {
        json e;
        e["eta_min"] = emit_value(b.eta_min(i), mode);
        e["eta_max"] = emit_value(b.eta_max(i), mode);
        arr.push_back(e);
    }
    json j;
    j["per_party"] = arr;
    return j;
}

ObservedEfficiencies<Rat> parse_efficiencies(const json& j, const Scenario& sc) {
    const json& pi = require(j, "per_input");
    if (!pi.is_array()) throw ParseError("efficiencies need a per_input array");
    std::vector<Rat> eta(sc.joint_inputs(), Rat(-1));
    for (const auto& e : pi) {
        std::vector<int> x = parse_index_tuple(require(e, "x"));
        eta[sc.input_flat(x)] = parse_probability(require(e, "eta"));
    }
    for (const Rat& v : eta)
        if (v < 0) throw ParseError("efficiencies must cover every input tuple");
    return ObservedEfficiencies<Rat>(sc, std::move(eta));
}

json emit_efficiencies(const Scenario& sc, const std::vector<Rat>& eta, NumericMode mode) {
    json arr = json::array();
    for (std::size_t x = 0; x < eta.size(); ++x) {
        json e;
        e["x"] = emit_index_tuple(sc.input_tuple(x));
        e["eta"] = emit_value(eta[x], mode);
        arr.push_back(e);
    }
    json j;
    j["per_input"] = arr;
    return j;
}

template <bool WithNull>
CorrelationTable<Rat, WithNull> parse_correlation_table(const json& j) {
    Scenario sc = parse_scenario(require(j, "scenario"));
    std::string kind = require(j, "kind").get<std::string>();
    std::string want = WithNull ? "full" : "postselected";
    if (kind != want)
        throw ParseError("expected a " + want + " correlation, found kind '" + kind + "'");
    CorrelationTable<Rat, WithNull> out(sc);
    for (const auto& e : require(j, "entries")) {
        std::vector<int> x = parse_index_tuple(require(e, "x"));
        std::vector<int> a = parse_outcome_tuple(require(e, "a"), sc, WithNull);
        out.at(sc.input_flat(x), sc.outcome_flat(a, WithNull)) = parse_probability(require(e, "p"));
    }
    return out;
}

template CorrelationTable<Rat, true> parse_correlation_table<true>(const json&);
template CorrelationTable<Rat, false> parse_correlation_table<false>(const json&);

FullCorrelation<Rat> parse_full_correlation(const json& j) {
    return parse_correlation_table<true>(j);
}
PostselectedCorrelation<Rat> parse_postselected_correlation(const json& j) {
    return parse_correlation_table<false>(j);
}

namespace {

template <class T, bool WithNull>
json emit_correlation_impl(const CorrelationTable<T, WithNull>& c, NumericMode mode) {
    const Scenario& sc = c.scenario();
    json j;
    j["scenario"] = emit_scenario(sc);
    j["kind"] = WithNull ? "full" : "postselected";
    json entries = json::array();
    for (std::size_t x = 0; x < c.n_inputs(); ++x)
        for (std::size_t a = 0; a < c.n_outcomes(); ++a) {
            json e;
            e["x"] = emit_index_tuple(sc.input_tuple(x));
            e["a"] = emit_outcome_tuple(sc.outcome_tuple(a, WithNull), sc);
            if constexpr (std::is_same_v<T, Rat>)
                e["p"] = emit_value(c.at(x, a), mode);
            else
                e["p"] = c.at(x, a);
            entries.push_back(e);
        }
    j["entries"] = entries;
    return j;
}

}  // namespace

json emit_correlation(const FullCorrelation<Rat>& c, NumericMode mode) {
    return emit_correlation_impl(c, mode);
}
json emit_correlation(const PostselectedCorrelation<Rat>& c, NumericMode mode) {
    return emit_correlation_impl(c, mode);
}
json emit_correlation(const PostselectedCorrelation<double>& c) {
    return emit_correlation_impl(c, NumericMode::Float);
}
json emit_correlation(const FullCorrelation<double>& c) {
    return emit_correlation_impl(c, NumericMode::Float);
}

json emit_vertex_list(const Scenario& sc, const DetectionBounds& bounds,
                      const std::vector<ProductVertex>& vertices, NumericMode mode) {
    json arr = json::array();
    for (const ProductVertex& v : vertices)
        arr.push_back(emit_correlation(vertex_to_full<Rat>(v, sc, bounds), mode));
    return arr;
}

std::vector<FullCorrelation<Rat>> parse_vertex_list(const json& j) {
    if (!j.is_array()) throw ParseError("vertex list must be a JSON array");
    std::vector<FullCorrelation<Rat>> out;
    for (const auto& e : j) out.push_back(parse_full_correlation(e));
    return out;
}

namespace {

template <class T>
json emit_certificate_impl(const Certificate<T>& cert, NumericMode mode) {
    const Scenario& sc = cert.scenario;
    json j;
    j["scenario"] = emit_scenario(sc);
    json coeffs = json::array();
    std::size_t n_out = sc.joint_outcomes(false);
    for (std::size_t x = 0; x < sc.joint_inputs(); ++x)
        for (std::size_t a = 0; a < n_out; ++a) {
            json e;
            e["x"] = emit_index_tuple(sc.input_tuple(x));
            e["a"] = emit_outcome_tuple(sc.outcome_tuple(a, false), sc);
            if constexpr (std::is_same_v<T, Rat>)
                e["c"] = emit_value(cert.coefficients[x * n_out + a], mode);
            else
                e["c"] = cert.coefficients[x * n_out + a];
            coeffs.push_back(e);
        }
    j["coefficients"] = coeffs;
    if constexpr (std::is_same_v<T, Rat>) {
        j["bound"] = emit_value(cert.bound, mode);
        j["violation"] = emit_value(cert.violation, mode);
    } else {
        j["bound"] = cert.bound;
        j["violation"] = cert.violation;
    }
    return j;
}

}  // namespace

json emit_certificate(const Certificate<Rat>& cert, NumericMode mode) {
    return emit_certificate_impl(cert, mode);
}
json emit_certificate(const Certificate<double>& cert) {
    return emit_certificate_impl(cert, NumericMode::Float);
}

Certificate<Rat> parse_certificate(const json& j) {
    Scenario sc = parse_scenario(require(j, "scenario"));
    Certificate<Rat> cert{sc, std::vector<Rat>(sc.joint_inputs() * sc.joint_outcomes(false), Rat(0)),
                          Rat(0), Rat(0)};
    std::size_t n_out = sc.joint_outcomes(false);
    for (const auto& e : require(j, "coefficients")) {
        std::vector<int> x = parse_index_tuple(require(e, "x"));
        std::vector<int> a = parse_outcome_tuple(require(e, "a"), sc, false);
        cert.coefficients[sc.input_flat(x) * n_out + sc.outcome_flat(a, false)] =
            parse_probability(require(e, "c"));
    }
    cert.bound = parse_probability(require(j, "bound"));
    cert.violation = parse_probability(require(j, "violation"));
    return cert;
}

TwoQubitState parse_state(const json& j) {
    const json& amps = require(j, "amplitudes");
    if (!amps.is_array() || amps.size() != 4)
        throw ParseError("state needs 4 [re, im] amplitude pairs");
    TwoQubitState s{};
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& a = amps[i];
        if (!a.is_array() || a.size() != 2) throw ParseError("amplitudes are [re, im] pairs");
        s.amplitudes[i] = {a[0].get<double>(), a[1].get<double>()};
    }
    if (s.norm_error() > 1e-9) throw ParseError("state is not normalized");
    return s;
}

json emit_state(const TwoQubitState& s) {
    json amps = json::array();
    for (const auto& a : s.amplitudes) amps.push_back(json::array({a.real(), a.imag()}));
    json j;
    j["amplitudes"] = amps;
    return j;
}

namespace {

ProjectiveSetting parse_one_setting(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("settings need one direction per input");
    ProjectiveSetting s{};
    for (std::size_t x = 0; x < 2; ++x) {
        s.per_input[x].theta = require(j[x], "theta").get<double>();
        s.per_input[x].phi = require(j[x], "phi").get<double>();
    }
    return s;
}

json emit_one_setting(const ProjectiveSetting& s) {
    json arr = json::array();
    for (const auto& d : s.per_input) {
        json e;
        e["theta"] = d.theta;
        e["phi"] = d.phi;
        arr.push_back(e);
    }
    return arr;
}

}  // namespace

std::pair<ProjectiveSetting, ProjectiveSetting> parse_settings(const json& j) {
    return {parse_one_setting(require(j, "alice")), parse_one_setting(require(j, "bob"))};
}

json emit_settings(const ProjectiveSetting& alice, const ProjectiveSetting& bob) {
    json j;
    j["alice"] = emit_one_setting(alice);
    j["bob"] = emit_one_setting(bob);
    return j;
}

std::vector<std::vector<Rat>> parse_local_distributions(const json& j, int n_inputs,
                                                        int n_outcomes) {
    const json& d = require(j, "distributions");
    if (!d.is_array() || static_cast<int>(d.size()) != n_inputs)
        throw ParseError("need one local distribution per input");
    std::vector<std::vector<Rat>> out;
    for (const auto& row : d) {
        if (!row.is_array() || static_cast<int>(row.size()) != n_outcomes)
            throw ParseError("local distribution arity mismatch");
        std::vector<Rat> r;
        for (const auto& v : row) r.push_back(parse_probability(v));
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

// CSV with '.' decimal separator, locale-independent
std::string csv_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string region_csv(const std::vector<Eq5RegionRow<double>>& rows) {
    std::string out = "eta_min,eta_max,lhs,violated\n";
    for (const auto& r : rows) {
        out += csv_number(r.eta_min) + "," + csv_number(r.eta_max) + "," + csv_number(r.lhs) + "," +
               (r.violated ? "1" : "0") + "\n";
    }
    return out;
}

std::string region_csv(const std::vector<Eq5RegionRow<Rat>>& rows) {
    std::string out = "eta_min,eta_max,lhs,violated\n";
    for (const auto& r : rows) {
        out += num::format_rational(r.eta_min) + "," + num::format_rational(r.eta_max) + "," +
               num::format_rational(r.lhs) + "," + (r.violated ? "1" : "0") + "\n";
    }
    return out;
}

json error_json(const LdlError& e) {
    json j;
    j["error"] = e.name();
    j["message"] = e.what();
    j["exit_code"] = e.exit_code();
    return j;
}

}  // namespace ldl::io
