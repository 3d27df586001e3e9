#pragma once

// The generalized detection-inefficiency scheme (postselection <-> outcome
// assignment continuum) and the parameter bridge from limited detection to
// measurement-dependent locality.

#include <vector>

#include "ldl/correlation.hpp"
#include "ldl/errors.hpp"
#include "ldl/vertices.hpp"

namespace ldl {

template <class T>
struct SchemeParams {
    T eta = T(1);              // detector efficiency, (0,1]
    T eta_min_assign = T(0);   // probability of assigning an outcome on non-detection
    std::vector<std::vector<T>> pl_a;  // local outcome distribution per Alice input
    std::vector<std::vector<T>> pl_b;  // same for Bob
};

namespace detail {

template <class T>
void require_distributions(const std::vector<std::vector<T>>& pl, int n_inputs, int n_outcomes,
                           const T& tol, const char* who) {
    if (static_cast<int>(pl.size()) != n_inputs)
        throw ScenarioMismatch(std::string(who) + ": one local distribution per input required");
    for (const auto& d : pl) {
        if (static_cast<int>(d.size()) != n_outcomes)
            throw ScenarioMismatch(std::string(who) + ": distribution arity mismatch");
        T sum(0);
        for (const T& v : d) {
            if (v < T(0) - tol) throw ScenarioMismatch(std::string(who) + ": negative probability");
            sum += v;
        }
        if (num::abs_val(T(sum - T(1))) > tol)
            throw ScenarioMismatch(std::string(who) + ": distribution not normalized");
    }
}

}  // namespace detail

// Postselected correlation produced when each party's box, on non-detection
// (efficiency eta), still answers with probability eta_min_assign from its
// local distribution:
//
//   P = [ eta^2 P_NL
//         + eta(1-eta) eta_assign (P_NL^A P_L^B + P_L^A P_NL^B)
//         + (1-eta)^2 eta_assign^2 P_L^A P_L^B ] / (eta + (1-eta) eta_assign)^2.
//
// The denominator equals the numerator's total mass, so the output is
// normalized exactly (rational mode: exact equality).
template <class T>
PostselectedCorrelation<T> apply_scheme(const PostselectedCorrelation<T>& p_nl,
                                        const SchemeParams<T>& params, const T& tol) {
    const Scenario& sc = p_nl.scenario();
    if (sc.n_parties() != 2) throw ScenarioMismatch("the scheme formula is two-party");
    if (!(params.eta > T(0)) || params.eta > T(1))
        throw ScenarioMismatch("eta must lie in (0,1]");
    if (params.eta_min_assign < T(0) || params.eta_min_assign > T(1))
        throw ScenarioMismatch("eta_min_assign must lie in [0,1]");
    detail::require_distributions(params.pl_a, sc.inputs(0), sc.outcomes(0), tol, "pl_a");
    detail::require_distributions(params.pl_b, sc.inputs(1), sc.outcomes(1), tol, "pl_b");

    // The formula's marginals are only well defined for non-signalling input.
    T resid = signalling_residual(p_nl);
    if (resid > tol)
        throw SignallingInput("input correlation is signalling; marginals are ill-defined");

    std::vector<std::vector<T>> nl_a(static_cast<std::size_t>(sc.inputs(0)));
    std::vector<std::vector<T>> nl_b(static_cast<std::size_t>(sc.inputs(1)));
    for (int x = 0; x < sc.inputs(0); ++x) nl_a[static_cast<std::size_t>(x)] = party_marginal(p_nl, 0, x);
    for (int y = 0; y < sc.inputs(1); ++y) nl_b[static_cast<std::size_t>(y)] = party_marginal(p_nl, 1, y);

    const T& e = params.eta;
    const T& g = params.eta_min_assign;
    T w_nl = e * e;
    T w_cross = e * (T(1) - e) * g;
    T w_ll = (T(1) - e) * (T(1) - e) * g * g;
    T denom = (e + (T(1) - e) * g) * (e + (T(1) - e) * g);

    PostselectedCorrelation<T> out(sc);
    for (std::size_t x = 0; x < out.n_inputs(); ++x) {
        std::vector<int> xt = sc.input_tuple(x);
        std::size_t xa = static_cast<std::size_t>(xt[0]), xb = static_cast<std::size_t>(xt[1]);
        for (std::size_t o = 0; o < out.n_outcomes(); ++o) {
            std::vector<int> ot = sc.outcome_tuple(o, false);
            std::size_t a = static_cast<std::size_t>(ot[0]), b = static_cast<std::size_t>(ot[1]);
            T val = w_nl * p_nl.at(x, o)
                  + w_cross * (nl_a[xa][a] * params.pl_b[xb][b] + params.pl_a[xa][a] * nl_b[xb][b])
                  + w_ll * params.pl_a[xa][a] * params.pl_b[xb][b];
            out.at(x, o) = T(val / denom);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// LDL -> MDL parameter bridge

struct MdlParams {
    Rat l = Rat(0);
    Rat h = Rat(1);
    int n_inputs = 2;

    // 0 <= l <= 1/N^2 <= h <= 1
    bool valid() const {
        Rat mid(1, static_cast<long>(n_inputs) * n_inputs);
        return l >= 0 && l <= mid && mid <= h && h <= 1;
    }
};

struct MdlMapResult {
    MdlParams params;
    bool joint = false;      // Appendix-style first-power factors vs squared
    bool clamped_h = false;  // h' exceeded 1 and was clamped
};

// joint = true: bounds constrain the joint detection probability, factors
// eta_min/eta_max. joint = false: per-party bounds composing to the joint,
// squared factors.
inline MdlMapResult ldl_to_mdl(const Rat& l, const Rat& h, const Rat& eta_min, const Rat& eta_max,
                               bool joint, int n_inputs = 2) {
    if (!(eta_min > 0)) throw ZeroEtaMin("eta_min must be positive for the MDL bridge");
    if (eta_min > eta_max || eta_max > 1)
        throw ScenarioMismatch("need 0 < eta_min <= eta_max <= 1");
    if (l < 0 || l > h || h > 1) throw ScenarioMismatch("need 0 <= l <= h <= 1");
    Rat ratio = eta_min / eta_max;
    Rat factor = joint ? ratio : Rat(ratio * ratio);
    MdlMapResult res;
    res.joint = joint;
    res.params.n_inputs = n_inputs;
    res.params.l = l * factor;
    Rat h_raw = h / factor;
    res.clamped_h = h_raw > 1;
    res.params.h = res.clamped_h ? Rat(1) : h_raw;
    return res;
}

// Conjunction eta_min^2/eta_max^2 >= N^2 l  and  eta_max^2/eta_min^2 <= N^2 h.
template <class T>
bool mdl_nonlocality_condition(const T& eta_min, const T& eta_max, int n_inputs, const T& l,
                               const T& h) {
    if (!(eta_min > T(0))) throw ZeroEtaMin("eta_min must be positive");
    T nn = T(n_inputs) * T(n_inputs);
    T r = T((eta_min * eta_min) / (eta_max * eta_max));
    return r >= nn * l && T(T(1) / r) <= nn * h;
}

// ---------------------------------------------------------------------------
// Operational side of the bridge: postselected input distribution of one
// LDL vertex under an (l,h)-bounded input distribution q(x),
//   P(x | all detected, vertex) = q(x) D_v(x) / sum_x' q(x') D_v(x').

template <class T>
std::vector<T> postselect_input_distribution(const ProductVertex& v, const DetectionBounds& bounds,
                                             const Scenario& sc, const std::vector<T>& input_dist) {
    if (input_dist.size() != sc.joint_inputs())
        throw ScenarioMismatch("input distribution does not cover every input tuple");
    std::vector<T> out(input_dist.size());
    T total(0);
    for (std::size_t x = 0; x < input_dist.size(); ++x) {
        T mass = input_dist[x] * num::from_rat<T>(detected_mass(v, bounds, sc.input_tuple(x)));
        out[x] = mass;
        total += mass;
    }
    if (!(total > T(0))) throw ZeroEfficiency("vertex detects nothing under this input distribution");
    for (T& p : out) p = T(p / total);
    return out;
}

}  // namespace ldl
