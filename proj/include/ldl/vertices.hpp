#pragma once

// Extremal limited-detection behaviors. A single-party vertex picks, for
// every input, one outcome and one efficiency level (eta_min or eta_max);
// the implied behavior fires that outcome with the chosen efficiency and
// returns the non-detection symbol otherwise. N-party vertices are products
// of single-party vertices.
//
// Enumeration order is deterministic: per input the symbol order is
// (outcome, level) with eta_min before eta_max; input 0 is the most
// significant digit, and product vertices iterate party 0 slowest. When
// eta_min == eta_max for a party the level choice is dropped (k_i = 1)
// instead of emitting duplicates.

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <vector>

#include "ldl/correlation.hpp"
#include "ldl/errors.hpp"
#include "ldl/rational.hpp"
#include "ldl/scenario.hpp"

namespace ldl {

constexpr std::size_t kDefaultVertexCap = 10'000'000;

struct SinglePartyVertex {
    int party = 0;
    std::vector<int> outcome;      // chosen outcome per input, 0-based
    std::vector<std::uint8_t> level;  // 0 = eta_min, 1 = eta_max

    const Rat& eta(const DetectionBounds& b, int input) const {
        return b.eta(party, level[static_cast<std::size_t>(input)]);
    }
    bool operator==(const SinglePartyVertex& o) const {
        return party == o.party && outcome == o.outcome && level == o.level;
    }
};

struct ProductVertex {
    std::vector<SinglePartyVertex> parts;  // one per party

    bool operator==(const ProductVertex& o) const { return parts == o.parts; }
};

// Closed-form counts (m_i * k_i)^(n_i); throws SizeOverflow beyond cap.
inline std::size_t count_party_vertices(const Scenario& sc, int party,
                                        const DetectionBounds& bounds,
                                        std::size_t cap = kDefaultVertexCap) {
    unsigned __int128 count = 1;
    std::size_t base = static_cast<std::size_t>(sc.outcomes(party)) *
                       static_cast<std::size_t>(bounds.levels(party));
    for (int x = 0; x < sc.inputs(party); ++x) {
        count *= base;
        if (count > cap) {
            std::ostringstream os;
            os << "party " << party << " vertex count exceeds cap " << cap;
            throw SizeOverflow(os.str());
        }
    }
    return static_cast<std::size_t>(count);
}

inline std::size_t count_ldl_vertices(const Scenario& sc, const DetectionBounds& bounds,
                                      std::size_t cap = kDefaultVertexCap) {
    unsigned __int128 count = 1;
    for (int i = 0; i < sc.n_parties(); ++i) {
        count *= count_party_vertices(sc, i, bounds, cap);
        if (count > cap) {
            std::ostringstream os;
            os << "LDL vertex count exceeds cap " << cap;
            throw SizeOverflow(os.str());
        }
    }
    return static_cast<std::size_t>(count);
}

inline std::vector<SinglePartyVertex> enumerate_party_vertices(
    const Scenario& sc, int party, const DetectionBounds& bounds,
    std::size_t cap = kDefaultVertexCap) {
    if (party < 0 || party >= sc.n_parties()) throw ScenarioMismatch("party index out of range");
    if (bounds.n_parties() != sc.n_parties())
        throw ScenarioMismatch("bounds do not cover every party");
    std::size_t total = count_party_vertices(sc, party, bounds, cap);

    int n = sc.inputs(party), m = sc.outcomes(party), k = bounds.levels(party);
    std::vector<SinglePartyVertex> out;
    out.reserve(total);
    // Mixed-radix counter over per-input symbols (outcome, level), lex order.
    std::vector<int> digit(static_cast<std::size_t>(n), 0);
    int base = m * k;
    for (std::size_t idx = 0; idx < total; ++idx) {
        SinglePartyVertex v;
        v.party = party;
        v.outcome.resize(static_cast<std::size_t>(n));
        v.level.resize(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            v.outcome[static_cast<std::size_t>(x)] = digit[static_cast<std::size_t>(x)] / k;
            v.level[static_cast<std::size_t>(x)] =
                static_cast<std::uint8_t>(digit[static_cast<std::size_t>(x)] % k);
        }
        out.push_back(std::move(v));
        for (int x = n - 1; x >= 0; --x) {
            if (++digit[static_cast<std::size_t>(x)] < base) break;
            digit[static_cast<std::size_t>(x)] = 0;
        }
    }
    return out;
}

inline std::vector<ProductVertex> enumerate_ldl_vertices(const Scenario& sc,
                                                         const DetectionBounds& bounds,
                                                         std::size_t cap = kDefaultVertexCap) {
    std::size_t total = count_ldl_vertices(sc, bounds, cap);
    std::vector<std::vector<SinglePartyVertex>> per_party;
    per_party.reserve(static_cast<std::size_t>(sc.n_parties()));
    for (int i = 0; i < sc.n_parties(); ++i)
        per_party.push_back(enumerate_party_vertices(sc, i, bounds, cap));

    std::vector<ProductVertex> out;
    out.reserve(total);
    std::vector<std::size_t> idx(per_party.size(), 0);
    for (std::size_t c = 0; c < total; ++c) {
        ProductVertex v;
        v.parts.reserve(per_party.size());
        for (std::size_t i = 0; i < per_party.size(); ++i) v.parts.push_back(per_party[i][idx[i]]);
        out.push_back(std::move(v));
        for (std::size_t i = per_party.size(); i-- > 0;) {
            if (++idx[i] < per_party[i].size()) break;
            idx[i] = 0;
        }
    }
    return out;
}

// Behavior of one party at one input: probability of `outcome` (full-table
// indexing; index m_i is the non-detection symbol).
inline Rat party_response(const SinglePartyVertex& v, const DetectionBounds& bounds,
                          const Scenario& sc, int input, int outcome) {
    const Rat& eta = v.eta(bounds, input);
    if (outcome == sc.outcomes(v.party)) return Rat(1) - eta;
    return outcome == v.outcome[static_cast<std::size_t>(input)] ? eta : Rat(0);
}

template <class T>
FullCorrelation<T> vertex_to_full(const ProductVertex& v, const Scenario& sc,
                                  const DetectionBounds& bounds) {
    FullCorrelation<T> out(sc);
    for (std::size_t x = 0; x < out.n_inputs(); ++x) {
        std::vector<int> xt = sc.input_tuple(x);
        for (std::size_t a = 0; a < out.n_outcomes(); ++a) {
            std::vector<int> at = sc.outcome_tuple(a, true);
            Rat p(1);
            for (int i = 0; i < sc.n_parties(); ++i) {
                p *= party_response(v.parts[static_cast<std::size_t>(i)], bounds, sc,
                                    xt[static_cast<std::size_t>(i)],
                                    at[static_cast<std::size_t>(i)]);
                if (p == 0) break;
            }
            out.at(x, a) = num::from_rat<T>(p);
        }
    }
    return out;
}

// All-detected mass of a product vertex at a joint input: prod_i eta_i(x_i).
inline Rat detected_mass(const ProductVertex& v, const DetectionBounds& bounds,
                         const std::vector<int>& x_tuple) {
    Rat p(1);
    for (std::size_t i = 0; i < v.parts.size(); ++i)
        p *= v.parts[i].eta(bounds, static_cast<int>(x_tuple[i]));
    return p;
}

}  // namespace ldl
