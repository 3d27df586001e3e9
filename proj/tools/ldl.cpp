// ldl: command-line frontend for the limited-detection-locality toolkit.
//
// Subcommands: vertices, membership, eq5, eq5-region, hardy, born, scheme,
// mdl-map, validate. Inputs and outputs are JSON (CSV for eq5-region);
// --exact switches to rational arithmetic and rational output. Exit codes:
// 0 success (NonMember verdicts included), 1 usage/parse errors,
// 2 infeasibility (ZeroEfficiency, InconsistentEfficiencies), 3 resource caps.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ldl/geometry.hpp"
#include "ldl/inequality.hpp"
#include "ldl/io.hpp"
#include "ldl/quantum.hpp"
#include "ldl/schemes.hpp"

namespace {

using ldl::Rat;
using json = ldl::io::json;

json read_json(const std::string& path) {
    try {
        if (path.empty() || path == "-") {
            std::ostringstream buf;
            buf << std::cin.rdbuf();
            return json::parse(buf.str());
        }
        std::ifstream in(path);
        if (!in) throw ldl::ParseError("cannot open '" + path + "'");
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ldl::ParseError(std::string("JSON parse failure: ") + e.what());
    }
}

void write_output(const std::string& content, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw ldl::ParseError("cannot write '" + path + "'");
    out << content;
    if (content.empty() || content.back() != '\n') out << '\n';
}

void write_json(const json& j, const std::string& path) { write_output(j.dump(2), path); }

struct CommonOpts {
    std::string out;
    bool exact = false;
    double tol = -1;  // sentinel: pick per-mode default
    std::uint64_t seed = 0;
    std::size_t cap = ldl::kDefaultVertexCap;

    double tol_or(double dflt) const { return tol < 0 ? dflt : tol; }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_cap = false) {
    cmd->add_option("--out", opts.out, "output path (default: stdout)");
    cmd->add_flag("--exact", opts.exact, "exact rational arithmetic and output");
    cmd->add_option("--tol", opts.tol, "numeric tolerance (default depends on mode)");
    cmd->add_option("--seed", opts.seed, "seed for sampling-based verification");
    if (with_cap) cmd->add_option("--cap", opts.cap, "vertex enumeration cap");
}

// membership solve shared by exact and float modes
json run_membership(const ldl::PostselectedCorrelation<Rat>& target_in,
                    const ldl::ObservedEfficiencies<Rat>& effs,
                    const ldl::DetectionBounds& bounds, const CommonOpts& opts,
                    double rationalize_tol, std::size_t verify_samples) {
    json out;
    if (opts.exact) {
        ldl::PostselectedCorrelation<Rat> target = target_in;
        if (rationalize_tol > 0)
            target = ldl::rationalize_correlation(target.convert<double>(), rationalize_tol);
        target = ldl::renormalize(target);  // the exact LP needs exact columns
        auto problem = ldl::make_membership_problem(target, effs, bounds, opts.cap);
        auto res = ldl::check_membership(problem, Rat(0));
        out["member"] = res.member;
        out["arithmetic"] = "exact";
        if (res.member) {
            json ws = json::array();
            for (const auto& [idx, w] : res.witness) {
                json e;
                e["index"] = idx;
                e["weight"] = ldl::io::emit_value(w, ldl::io::NumericMode::Exact);
                ws.push_back(e);
            }
            out["weights"] = ws;
        } else {
            out["certificate"] =
                ldl::io::emit_certificate(*res.certificate_exact, ldl::io::NumericMode::Exact);
            out["exact_certificate"] = true;
        }
        if (verify_samples > 0 && !res.member) {
            auto rep = ldl::certificate_check(*res.certificate, problem, verify_samples, Rat(0),
                                              opts.seed);
            json v;
            v["pass"] = rep.pass;
            v["samples_feasible"] = rep.samples_feasible;
            v["no_feasible_sample"] = rep.no_feasible_sample;
            v["constructive_sampler"] = rep.used_constructive_sampler;
            out["verification"] = v;
        }
        return out;
    }

    double tol = opts.tol_or(1e-9);
    auto target = target_in.convert<double>();
    std::vector<double> eta;
    for (const Rat& e : effs.values()) eta.push_back(ldl::num::to_double(e));
    ldl::ObservedEfficiencies<double> effs_d(target.scenario(), eta);
    auto problem = ldl::make_membership_problem(target, effs_d, bounds, opts.cap);
    auto res = ldl::check_membership(problem, tol);
    out["member"] = res.member;
    out["arithmetic"] = "float";
    if (res.member) {
        json ws = json::array();
        for (const auto& [idx, w] : res.witness) {
            json e;
            e["index"] = idx;
            e["weight"] = w;
            ws.push_back(e);
        }
        out["weights"] = ws;
    } else {
        if (res.certificate_exact)
            out["certificate"] =
                ldl::io::emit_certificate(*res.certificate_exact, ldl::io::NumericMode::Exact);
        else
            out["certificate"] = ldl::io::emit_certificate(*res.certificate);
        out["exact_certificate"] = res.exact_certificate;
    }
    if (verify_samples > 0 && !res.member) {
        auto rep = ldl::certificate_check(*res.certificate, problem, verify_samples, tol, opts.seed);
        json v;
        v["pass"] = rep.pass;
        v["samples_feasible"] = rep.samples_feasible;
        v["no_feasible_sample"] = rep.no_feasible_sample;
        v["constructive_sampler"] = rep.used_constructive_sampler;
        out["verification"] = v;
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"limited-detection-locality toolkit"};
    app.require_subcommand(1);

    // vertices
    auto* c_vertices = app.add_subcommand("vertices", "enumerate extremal LDL behaviors");
    CommonOpts o_vertices;
    std::string vertices_scenario, vertices_bounds;
    c_vertices->add_option("--scenario", vertices_scenario, "scenario JSON")->required();
    c_vertices->add_option("--bounds", vertices_bounds, "detection bounds JSON")->required();
    add_common(c_vertices, o_vertices, true);

    // membership
    auto* c_membership = app.add_subcommand("membership", "LP membership test with certificate");
    CommonOpts o_membership;
    std::string mem_target, mem_effs, mem_bounds;
    double mem_rationalize = 0;
    std::size_t mem_verify = 0;
    c_membership->add_option("--target", mem_target, "postselected correlation JSON (default: stdin)");
    c_membership->add_option("--effs", mem_effs, "observed efficiencies JSON")->required();
    c_membership->add_option("--bounds", mem_bounds, "detection bounds JSON")->required();
    c_membership->add_option("--rationalize", mem_rationalize,
                             "continued-fraction tolerance applied to the target in exact mode");
    c_membership->add_option("--verify-samples", mem_verify,
                             "re-check an emitted certificate on sampled feasible mixtures");
    add_common(c_membership, o_membership, true);

    // eq5
    auto* c_eq5 = app.add_subcommand("eq5", "evaluate the explicit LDL inequality");
    CommonOpts o_eq5;
    std::string eq5_target, eq5_emin, eq5_emax;
    c_eq5->add_option("--target", eq5_target, "postselected correlation JSON (default: stdin)");
    c_eq5->add_option("--eta-min", eq5_emin, "eta_min (number or rational)")->required();
    c_eq5->add_option("--eta-max", eq5_emax, "eta_max (number or rational)")->required();
    add_common(c_eq5, o_eq5);

    // eq5-region
    auto* c_region = app.add_subcommand("eq5-region", "sweep the (eta_min, eta_max) triangle");
    CommonOpts o_region;
    std::string region_target;
    int region_grid = 200;
    c_region->add_option("--target", region_target, "postselected correlation JSON (default: stdin)");
    c_region->add_option("--grid", region_grid, "grid points per axis");
    add_common(c_region, o_region);

    // hardy
    auto* c_hardy = app.add_subcommand("hardy", "Hardy-paradox correlation for a given tau");
    CommonOpts o_hardy;
    double hardy_tau = 0.5;
    std::string hardy_state_out, hardy_settings_out;
    c_hardy->add_option("--tau", hardy_tau, "entanglement parameter in (0,1)")->required();
    c_hardy->add_option("--state-out", hardy_state_out, "also write the state JSON");
    c_hardy->add_option("--settings-out", hardy_settings_out, "also write the settings JSON");
    add_common(c_hardy, o_hardy);

    // born
    auto* c_born = app.add_subcommand("born", "Born-rule correlation from state and settings");
    CommonOpts o_born;
    std::string born_state, born_settings;
    c_born->add_option("--state", born_state, "two-qubit state JSON")->required();
    c_born->add_option("--settings", born_settings, "measurement settings JSON")->required();
    add_common(c_born, o_born);

    // scheme
    auto* c_scheme = app.add_subcommand("scheme", "generalized detection-inefficiency scheme");
    CommonOpts o_scheme;
    std::string scheme_input, scheme_eta, scheme_assign, scheme_la, scheme_lb;
    c_scheme->add_option("--input", scheme_input, "nonlocal correlation JSON (default: stdin)");
    c_scheme->add_option("--eta", scheme_eta, "detector efficiency")->required();
    c_scheme->add_option("--assign", scheme_assign, "assignment probability eta_min")->required();
    c_scheme->add_option("--local-a", scheme_la, "Alice local distributions JSON")->required();
    c_scheme->add_option("--local-b", scheme_lb, "Bob local distributions JSON")->required();
    add_common(c_scheme, o_scheme);

    // mdl-map
    auto* c_mdl = app.add_subcommand("mdl-map", "LDL -> MDL parameter bridge");
    c_mdl->set_help_flag("--help", "print help");  // frees -h for the --h option below
    CommonOpts o_mdl;
    std::string mdl_l, mdl_h, mdl_emin, mdl_emax;
    bool mdl_joint = false;
    int mdl_n = 2;
    c_mdl->add_option("--l", mdl_l, "MDL lower bound")->required();
    c_mdl->add_option("--h", mdl_h, "MDL upper bound")->required();
    c_mdl->add_option("--eta-min", mdl_emin, "eta_min")->required();
    c_mdl->add_option("--eta-max", mdl_emax, "eta_max")->required();
    c_mdl->add_flag("--joint", mdl_joint, "joint-detection reading (first-power factors)");
    c_mdl->add_option("--n-inputs", mdl_n, "inputs per party (for the validity range)");
    add_common(c_mdl, o_mdl);

    // validate
    auto* c_validate = app.add_subcommand("validate", "check normalization and nonnegativity");
    CommonOpts o_validate;
    std::string validate_input;
    c_validate->add_option("--input", validate_input, "correlation JSON (default: stdin)");
    add_common(c_validate, o_validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json j;
        j["error"] = "UsageError";
        j["message"] = e.what();
        j["exit_code"] = 1;
        std::cerr << j.dump(2) << "\n";
        return 1;
    }

    if (c_vertices->parsed()) {
        ldl::Scenario sc = ldl::io::parse_scenario(read_json(vertices_scenario));
        ldl::DetectionBounds bounds = ldl::io::parse_bounds(read_json(vertices_bounds));
        if (bounds.n_parties() != sc.n_parties())
            throw ldl::ScenarioMismatch("bounds party count does not match the scenario");
        auto vs = ldl::enumerate_ldl_vertices(sc, bounds, o_vertices.cap);
        json out = ldl::io::emit_vertex_list(sc, bounds, vs,
                                             o_vertices.exact ? ldl::io::NumericMode::Exact
                                                              : ldl::io::NumericMode::Float);
        write_json(out, o_vertices.out);
        return 0;
    }

    if (c_membership->parsed()) {
        auto target = ldl::io::parse_postselected_correlation(read_json(mem_target));
        auto bounds = ldl::io::parse_bounds(read_json(mem_bounds));
        auto effs = ldl::io::parse_efficiencies(read_json(mem_effs), target.scenario());
        json out = run_membership(target, effs, bounds, o_membership, mem_rationalize, mem_verify);
        write_json(out, o_membership.out);
        return 0;
    }

    if (c_eq5->parsed()) {
        auto target = ldl::io::parse_postselected_correlation(read_json(eq5_target));
        Rat emin = ldl::num::parse_rational(eq5_emin);
        Rat emax = ldl::num::parse_rational(eq5_emax);
        json out;
        if (o_eq5.exact) {
            Rat tol = ldl::num::rationalize(o_eq5.tol_or(1e-12), 0);
            auto r = ldl::eval_eq5(target, emin, emax, tol);
            out["lhs"] = ldl::io::emit_value(r.lhs, ldl::io::NumericMode::Exact);
            out["margin"] = ldl::io::emit_value(r.margin, ldl::io::NumericMode::Exact);
            out["violated"] = r.violated;
        } else {
            auto r = ldl::eval_eq5(target.convert<double>(), ldl::num::to_double(emin),
                                   ldl::num::to_double(emax), o_eq5.tol_or(1e-9));
            out["lhs"] = r.lhs;
            out["margin"] = r.margin;
            out["violated"] = r.violated;
        }
        out["eta_min"] = eq5_emin;
        out["eta_max"] = eq5_emax;
        write_json(out, o_eq5.out);
        return 0;
    }

    if (c_region->parsed()) {
        auto target = ldl::io::parse_postselected_correlation(read_json(region_target));
        std::string csv;
        if (o_region.exact) {
            Rat tol = ldl::num::rationalize(o_region.tol_or(1e-12), 0);
            csv = ldl::io::region_csv(ldl::eq5_region(target, region_grid, tol));
        } else {
            csv = ldl::io::region_csv(
                ldl::eq5_region(target.convert<double>(), region_grid, o_region.tol_or(1e-9)));
        }
        write_output(csv, o_region.out);
        return 0;
    }

    if (c_hardy->parsed()) {
        ldl::HardyPoint hp = ldl::hardy_point(hardy_tau);
        write_json(ldl::io::emit_correlation(hp.correlation), o_hardy.out);
        if (!hardy_state_out.empty()) write_json(ldl::io::emit_state(hp.state), hardy_state_out);
        if (!hardy_settings_out.empty())
            write_json(ldl::io::emit_settings(hp.alice, hp.bob), hardy_settings_out);
        return 0;
    }

    if (c_born->parsed()) {
        ldl::TwoQubitState state = ldl::io::parse_state(read_json(born_state));
        auto [alice, bob] = ldl::io::parse_settings(read_json(born_settings));
        write_json(ldl::io::emit_correlation(ldl::born_correlation(state, alice, bob)), o_born.out);
        return 0;
    }

    if (c_scheme->parsed()) {
        auto input = ldl::io::parse_postselected_correlation(read_json(scheme_input));
        const ldl::Scenario& sc = input.scenario();
        if (sc.n_parties() != 2) throw ldl::ScenarioMismatch("scheme needs a two-party scenario");
        ldl::SchemeParams<Rat> params;
        params.eta = ldl::num::parse_rational(scheme_eta);
        params.eta_min_assign = ldl::num::parse_rational(scheme_assign);
        params.pl_a =
            ldl::io::parse_local_distributions(read_json(scheme_la), sc.inputs(0), sc.outcomes(0));
        params.pl_b =
            ldl::io::parse_local_distributions(read_json(scheme_lb), sc.inputs(1), sc.outcomes(1));
        if (o_scheme.exact) {
            Rat tol = ldl::num::rationalize(o_scheme.tol_or(0), 0);
            auto out = ldl::apply_scheme(input, params, tol);
            write_json(ldl::io::emit_correlation(out, ldl::io::NumericMode::Exact), o_scheme.out);
        } else {
            ldl::SchemeParams<double> pd;
            pd.eta = ldl::num::to_double(params.eta);
            pd.eta_min_assign = ldl::num::to_double(params.eta_min_assign);
            auto to_d = [](const std::vector<std::vector<Rat>>& v) {
                std::vector<std::vector<double>> out;
                for (const auto& row : v) {
                    std::vector<double> r;
                    for (const Rat& q : row) r.push_back(ldl::num::to_double(q));
                    out.push_back(std::move(r));
                }
                return out;
            };
            pd.pl_a = to_d(params.pl_a);
            pd.pl_b = to_d(params.pl_b);
            auto out = ldl::apply_scheme(input.convert<double>(), pd, o_scheme.tol_or(1e-9));
            write_json(ldl::io::emit_correlation(out), o_scheme.out);
        }
        return 0;
    }

    if (c_mdl->parsed()) {
        auto res = ldl::ldl_to_mdl(ldl::num::parse_rational(mdl_l), ldl::num::parse_rational(mdl_h),
                                   ldl::num::parse_rational(mdl_emin),
                                   ldl::num::parse_rational(mdl_emax), mdl_joint, mdl_n);
        json out;
        auto mode = o_mdl.exact ? ldl::io::NumericMode::Exact : ldl::io::NumericMode::Float;
        out["l"] = ldl::io::emit_value(res.params.l, mode);
        out["h"] = ldl::io::emit_value(res.params.h, mode);
        out["n_inputs"] = res.params.n_inputs;
        out["mode"] = res.joint ? "joint" : "per-party";
        out["clamped_h"] = res.clamped_h;
        out["valid_mdl_range"] = res.params.valid();
        write_json(out, o_mdl.out);
        return 0;
    }

    if (c_validate->parsed()) {
        json j = read_json(validate_input);
        std::string kind = j.value("kind", "postselected");
        json out;
        Rat tol = ldl::num::rationalize(o_validate.tol_or(1e-9), 0);
        if (kind == "full") {
            auto c = ldl::io::parse_full_correlation(j);
            auto rep = ldl::validate(c, tol);
            out["valid"] = rep.valid;
            out["worst_negative"] = ldl::num::to_double(rep.worst_negative);
            out["worst_normalization_error"] = ldl::num::to_double(rep.worst_norm_error);
            out["detail"] = rep.describe();
        } else {
            auto c = ldl::io::parse_postselected_correlation(j);
            auto rep = ldl::validate(c, tol);
            out["valid"] = rep.valid;
            out["worst_negative"] = ldl::num::to_double(rep.worst_negative);
            out["worst_normalization_error"] = ldl::num::to_double(rep.worst_norm_error);
            out["detail"] = rep.describe();
        }
        write_json(out, o_validate.out);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ldl::LdlError& e) {
        std::cerr << ldl::io::error_json(e).dump(2) << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        json j;
        j["error"] = "Error";
        j["message"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 1;
    }
}
