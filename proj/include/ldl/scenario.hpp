#pragma once

// Scenario descriptions: party count, per-party input/outcome alphabet sizes,
// per-party detection bounds and per-input observed efficiencies.
//
// Conventions used throughout the library:
//  - inputs and outcomes are 0-based internally, 1-based in file I/O;
//  - the non-detection outcome is index m_i (one past the real outcomes) in
//    full tables and is serialized as the string "null-outcome";
//  - joint tuples flatten in mixed radix with party 0 as the most
//    significant digit, which fixes all "lexicographic" orders below.

#include <cstddef>
#include <string>
#include <vector>

#include "ldl/errors.hpp"
#include "ldl/rational.hpp"

namespace ldl {

class Scenario {
public:
    Scenario() = default;
    Scenario(std::vector<int> inputs_per_party, std::vector<int> outcomes_per_party)
        : inputs_(std::move(inputs_per_party)), outcomes_(std::move(outcomes_per_party)) {
        if (inputs_.empty() || inputs_.size() != outcomes_.size())
            throw ScenarioMismatch("scenario needs matching non-empty input/outcome lists");
        for (std::size_t i = 0; i < inputs_.size(); ++i)
            if (inputs_[i] < 1 || outcomes_[i] < 1)
                throw ScenarioMismatch("alphabet sizes must be >= 1");
    }

    int n_parties() const { return static_cast<int>(inputs_.size()); }
    int inputs(int party) const { return inputs_[static_cast<std::size_t>(party)]; }
    int outcomes(int party) const { return outcomes_[static_cast<std::size_t>(party)]; }
    const std::vector<int>& inputs_per_party() const { return inputs_; }
    const std::vector<int>& outcomes_per_party() const { return outcomes_; }

    std::size_t joint_inputs() const {
        std::size_t n = 1;
        for (int v : inputs_) n *= static_cast<std::size_t>(v);
        return n;
    }
    // Joint outcome count; with_null includes the non-detection symbol.
    std::size_t joint_outcomes(bool with_null) const {
        std::size_t n = 1;
        for (int v : outcomes_) n *= static_cast<std::size_t>(v) + (with_null ? 1 : 0);
        return n;
    }

    std::size_t input_flat(const std::vector<int>& x) const {
        return flatten(x, inputs_, 0);
    }
    std::vector<int> input_tuple(std::size_t flat) const {
        return unflatten(flat, inputs_, 0);
    }
    std::size_t outcome_flat(const std::vector<int>& a, bool with_null) const {
        return flatten(a, outcomes_, with_null ? 1 : 0);
    }
    std::vector<int> outcome_tuple(std::size_t flat, bool with_null) const {
        return unflatten(flat, outcomes_, with_null ? 1 : 0);
    }

    // True when the outcome tuple (full-table indexing) contains the
    // non-detection symbol for some party.
    bool has_null(const std::vector<int>& a) const {
        for (int i = 0; i < n_parties(); ++i)
            if (a[static_cast<std::size_t>(i)] == outcomes_[static_cast<std::size_t>(i)]) return true;
        return false;
    }

    bool operator==(const Scenario& o) const {
        return inputs_ == o.inputs_ && outcomes_ == o.outcomes_;
    }
    bool operator!=(const Scenario& o) const { return !(*this == o); }

private:
    static std::size_t flatten(const std::vector<int>& t, const std::vector<int>& radix, int extra) {
        if (t.size() != radix.size()) throw ScenarioMismatch("tuple arity does not match scenario");
        std::size_t flat = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            int r = radix[i] + extra;
            if (t[i] < 0 || t[i] >= r) throw ScenarioMismatch("tuple entry out of range");
            flat = flat * static_cast<std::size_t>(r) + static_cast<std::size_t>(t[i]);
        }
        return flat;
    }
    static std::vector<int> unflatten(std::size_t flat, const std::vector<int>& radix, int extra) {
        std::vector<int> t(radix.size());
        for (std::size_t i = radix.size(); i-- > 0;) {
            std::size_t r = static_cast<std::size_t>(radix[i] + extra);
            t[i] = static_cast<int>(flat % r);
            flat /= r;
        }
        return t;
    }

    std::vector<int> inputs_;
    std::vector<int> outcomes_;
};

// Per-party detection probability window [eta_min, eta_max]. Bounds are kept
// as exact rationals; the float pipeline converts on use.
class DetectionBounds {
public:
    DetectionBounds() = default;
    explicit DetectionBounds(std::vector<std::pair<Rat, Rat>> per_party)
        : per_party_(std::move(per_party)) {
        for (const auto& [lo, hi] : per_party_)
            if (lo < 0 || lo > hi || hi > 1)
                throw ScenarioMismatch("detection bounds need 0 <= eta_min <= eta_max <= 1");
    }
    // Same window for every party.
    static DetectionBounds symmetric(int n_parties, const Rat& lo, const Rat& hi) {
        return DetectionBounds(std::vector<std::pair<Rat, Rat>>(
            static_cast<std::size_t>(n_parties), {lo, hi}));
    }

    int n_parties() const { return static_cast<int>(per_party_.size()); }
    const Rat& eta_min(int party) const { return per_party_[static_cast<std::size_t>(party)].first; }
    const Rat& eta_max(int party) const { return per_party_[static_cast<std::size_t>(party)].second; }
    bool degenerate(int party) const { return eta_min(party) == eta_max(party); }
    // Efficiency levels available to a vertex of this party: {min} or {min,max}.
    int levels(int party) const { return degenerate(party) ? 1 : 2; }
    const Rat& eta(int party, int level) const {
        return level == 0 ? eta_min(party) : eta_max(party);
    }

    Rat joint_eta_min() const {
        Rat p(1);
        for (const auto& b : per_party_) p *= b.first;
        return p;
    }
    Rat joint_eta_max() const {
        Rat p(1);
        for (const auto& b : per_party_) p *= b.second;
        return p;
    }

private:
    std::vector<std::pair<Rat, Rat>> per_party_;
};

// Observed all-detected probability per joint input, eta_x > 0 (Eq. (3) is
// strict). Indexed by flattened input tuple.
template <class T>
class ObservedEfficiencies {
public:
    ObservedEfficiencies() = default;
    ObservedEfficiencies(Scenario scenario, std::vector<T> per_input)
        : scenario_(std::move(scenario)), eta_(std::move(per_input)) {
        if (eta_.size() != scenario_.joint_inputs())
            throw ScenarioMismatch("efficiency table does not cover every input tuple");
        for (const T& e : eta_)
            if (!(e > T(0)) || e > T(1))
                throw ZeroEfficiency("observed efficiencies must lie in (0,1]");
    }
    static ObservedEfficiencies constant(const Scenario& sc, const T& value) {
        return ObservedEfficiencies(sc, std::vector<T>(sc.joint_inputs(), value));
    }

    const Scenario& scenario() const { return scenario_; }
    const T& at(std::size_t x_flat) const { return eta_[x_flat]; }
    const std::vector<T>& values() const { return eta_; }

    // Eq. (3) compatibility with the bounds: prod eta_min_i <= eta_x <= prod eta_max_i.
    bool consistent_with(const DetectionBounds& b, const T& tol) const {
        T lo = num::from_rat<T>(b.joint_eta_min());
        T hi = num::from_rat<T>(b.joint_eta_max());
        for (const T& e : eta_)
            if (e < lo - tol || e > hi + tol) return false;
        return true;
    }

private:
    Scenario scenario_;
    std::vector<T> eta_;
};

}  // namespace ldl
