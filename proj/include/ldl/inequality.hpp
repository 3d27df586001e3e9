#pragma once

// The explicit LDL inequality for the two-party binary scenario with equal
// observed efficiencies across inputs:
//
//   eta_min^2 P(00|00) - eta_min eta_max P(01|01)
//                      - eta_min eta_max P(10|10) - eta_max^2 P(00|11) <= 0,
//
// all probabilities postselected. Outcome labels 0/1 are alphabet indices
// 1/2, i.e. internal indices 0/1.

#include <vector>

#include "ldl/correlation.hpp"
#include "ldl/errors.hpp"

namespace ldl {

template <class T>
struct LdlIneqResult {
    T lhs = T(0);
    bool violated = false;
    T margin = T(0);  // equals lhs; the polytope bound is 0
};

template <class T>
void require_binary_two_party(const PostselectedCorrelation<T>& p) {
    const Scenario& sc = p.scenario();
    if (sc.n_parties() != 2 || sc.inputs(0) != 2 || sc.inputs(1) != 2 || sc.outcomes(0) < 2 ||
        sc.outcomes(1) < 2)
        throw ScenarioMismatch("the explicit inequality needs 2 parties, binary inputs, outcomes >= 2");
}

template <class T>
LdlIneqResult<T> eval_eq5(const PostselectedCorrelation<T>& target, const T& eta_min,
                          const T& eta_max, const T& tol) {
    require_binary_two_party(target);
    if (eta_min < T(0) || eta_min > eta_max || eta_max > T(1))
        throw ScenarioMismatch("need 0 <= eta_min <= eta_max <= 1");
    T lhs = eta_min * eta_min * target.at({0, 0}, {0, 0})
          - eta_min * eta_max * target.at({0, 1}, {0, 1})
          - eta_min * eta_max * target.at({1, 0}, {1, 0})
          - eta_max * eta_max * target.at({1, 1}, {0, 0});
    LdlIneqResult<T> res;
    res.lhs = lhs;
    res.margin = lhs;
    res.violated = lhs > tol;
    return res;
}

template <class T>
struct Eq5RegionRow {
    T eta_min, eta_max, lhs;
    bool violated;
};

// Sweep of the triangle 0 <= eta_min <= eta_max <= 1 on a uniform grid of
// `grid` points per axis (endpoints included).
template <class T>
std::vector<Eq5RegionRow<T>> eq5_region(const PostselectedCorrelation<T>& target, int grid,
                                        const T& tol) {
    require_binary_two_party(target);
    if (grid < 2) throw ScenarioMismatch("grid must be at least 2");
    std::vector<Eq5RegionRow<T>> rows;
    rows.reserve(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid + 1) / 2);
    for (int i = 0; i < grid; ++i) {
        for (int j = i; j < grid; ++j) {
            T emin = T(T(i) / T(grid - 1));
            T emax = T(T(j) / T(grid - 1));
            LdlIneqResult<T> r = eval_eq5(target, emin, emax, tol);
            rows.push_back({emin, emax, r.lhs, r.violated});
        }
    }
    return rows;
}

}  // namespace ldl
