#pragma once

// Correlation tables P(a|x), stored dense over flattened (input, outcome)
// tuples. FullCorrelation includes the non-detection symbol in the outcome
// alphabet, PostselectedCorrelation does not. Both are immutable in spirit:
// operations return new tables.

#include <cstddef>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ldl/errors.hpp"
#include "ldl/rational.hpp"
#include "ldl/scenario.hpp"

namespace ldl {

template <class T, bool WithNull>
class CorrelationTable {
public:
    static constexpr bool with_null = WithNull;

    CorrelationTable() = default;
    explicit CorrelationTable(Scenario sc)
        : scenario_(std::move(sc)),
          probs_(scenario_.joint_inputs() * scenario_.joint_outcomes(WithNull), T(0)) {}
    CorrelationTable(Scenario sc, std::vector<T> probs)
        : scenario_(std::move(sc)), probs_(std::move(probs)) {
        if (probs_.size() != scenario_.joint_inputs() * scenario_.joint_outcomes(WithNull))
            throw ScenarioMismatch("correlation table size does not match scenario");
    }

    const Scenario& scenario() const { return scenario_; }
    std::size_t n_inputs() const { return scenario_.joint_inputs(); }
    std::size_t n_outcomes() const { return scenario_.joint_outcomes(WithNull); }

    const T& at(std::size_t x_flat, std::size_t a_flat) const {
        return probs_[x_flat * n_outcomes() + a_flat];
    }
    T& at(std::size_t x_flat, std::size_t a_flat) {
        return probs_[x_flat * n_outcomes() + a_flat];
    }
    const T& at(const std::vector<int>& x, const std::vector<int>& a) const {
        return at(scenario_.input_flat(x), scenario_.outcome_flat(a, WithNull));
    }
    T& at(const std::vector<int>& x, const std::vector<int>& a) {
        return at(scenario_.input_flat(x), scenario_.outcome_flat(a, WithNull));
    }

    const std::vector<T>& data() const { return probs_; }
    std::vector<T>& data() { return probs_; }

    template <class U>
    CorrelationTable<U, WithNull> convert() const {
        std::vector<U> out(probs_.size());
        for (std::size_t i = 0; i < probs_.size(); ++i) {
            if constexpr (std::is_same_v<U, double>)
                out[i] = num::to_double(probs_[i]);
            else
                out[i] = num::to_rat(probs_[i]);
        }
        return CorrelationTable<U, WithNull>(scenario_, std::move(out));
    }

private:
    Scenario scenario_;
    std::vector<T> probs_;
};

template <class T>
using FullCorrelation = CorrelationTable<T, true>;
template <class T>
using PostselectedCorrelation = CorrelationTable<T, false>;

// ---------------------------------------------------------------------------
// Validation

template <class T>
struct ValidationReport {
    bool valid = true;
    T worst_negative = T(0);        // most negative entry (0 if none)
    T worst_norm_error = T(0);      // max |column sum - 1|
    std::size_t negative_input = 0, negative_outcome = 0;
    std::size_t norm_input = 0;

    std::string describe() const {
        std::ostringstream os;
        if (valid) return "valid";
        os << "invalid:";
        if (worst_negative < T(0))
            os << " entry (" << negative_input << "," << negative_outcome << ") = "
               << num::to_double(worst_negative);
        os << " max normalization error " << num::to_double(worst_norm_error) << " at input "
           << norm_input;
        return os.str();
    }
};

template <class T, bool WithNull>
ValidationReport<T> validate(const CorrelationTable<T, WithNull>& corr, const T& tol) {
    ValidationReport<T> rep;
    for (std::size_t x = 0; x < corr.n_inputs(); ++x) {
        T sum(0);
        for (std::size_t a = 0; a < corr.n_outcomes(); ++a) {
            const T& p = corr.at(x, a);
            sum += p;
            if (p < rep.worst_negative) {
                rep.worst_negative = p;
                rep.negative_input = x;
                rep.negative_outcome = a;
            }
        }
        T err = num::abs_val(T(sum - T(1)));
        if (err > rep.worst_norm_error) {
            rep.worst_norm_error = err;
            rep.norm_input = x;
        }
    }
    rep.valid = rep.worst_negative >= T(0) - tol && rep.worst_norm_error <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Postselection (conditioning on every party detecting)

template <class T>
struct PostselectResult {
    PostselectedCorrelation<T> table;
    ObservedEfficiencies<T> efficiencies;
};

// Maps a full-table outcome index to the postselected index, or npos if the
// tuple contains a non-detection.
inline std::size_t detected_outcome_index(const Scenario& sc, std::size_t a_full) {
    std::vector<int> a = sc.outcome_tuple(a_full, true);
    if (sc.has_null(a)) return static_cast<std::size_t>(-1);
    return sc.outcome_flat(a, false);
}

template <class T>
PostselectResult<T> postselect(const FullCorrelation<T>& full) {
    const Scenario& sc = full.scenario();
    PostselectedCorrelation<T> out(sc);
    std::vector<T> eta(sc.joint_inputs(), T(0));
    for (std::size_t x = 0; x < full.n_inputs(); ++x) {
        for (std::size_t a = 0; a < full.n_outcomes(); ++a) {
            std::size_t d = detected_outcome_index(sc, a);
            if (d != static_cast<std::size_t>(-1)) eta[x] += full.at(x, a);
        }
        if (!(eta[x] > T(0))) {
            std::ostringstream os;
            os << "all-detected mass is zero at input " << x << "; postselection undefined";
            throw ZeroEfficiency(os.str());
        }
        for (std::size_t a = 0; a < full.n_outcomes(); ++a) {
            std::size_t d = detected_outcome_index(sc, a);
            if (d != static_cast<std::size_t>(-1)) out.at(x, d) = T(full.at(x, a) / eta[x]);
        }
    }
    return {std::move(out), ObservedEfficiencies<T>(sc, std::move(eta))};
}

// ---------------------------------------------------------------------------
// Small constructions used all over the test and tool code

template <class T>
PostselectedCorrelation<T> uniform_postselected(const Scenario& sc) {
    PostselectedCorrelation<T> out(sc);
    T u = T(T(1) / T(static_cast<int>(sc.joint_outcomes(false))));
    for (T& p : out.data()) p = u;
    return out;
}

template <class T, bool WithNull>
CorrelationTable<T, WithNull> mix(const CorrelationTable<T, WithNull>& a,
                                  const CorrelationTable<T, WithNull>& b, const T& weight_a) {
    if (a.scenario() != b.scenario()) throw ScenarioMismatch("mixing tables over different scenarios");
    CorrelationTable<T, WithNull> out(a.scenario());
    for (std::size_t i = 0; i < out.data().size(); ++i)
        out.data()[i] = T(weight_a * a.data()[i] + (T(1) - weight_a) * b.data()[i]);
    return out;
}

// Marginal of one party at one of its inputs, averaged over the other
// parties' inputs (the average is exact under non-signalling).
template <class T, bool WithNull>
std::vector<T> party_marginal(const CorrelationTable<T, WithNull>& corr, int party, int input) {
    const Scenario& sc = corr.scenario();
    std::size_t n_out = static_cast<std::size_t>(sc.outcomes(party)) + (WithNull ? 1 : 0);
    std::vector<T> marg(n_out, T(0));
    std::size_t contexts = 0;
    for (std::size_t x = 0; x < corr.n_inputs(); ++x) {
        std::vector<int> xt = sc.input_tuple(x);
        if (xt[static_cast<std::size_t>(party)] != input) continue;
        ++contexts;
        for (std::size_t a = 0; a < corr.n_outcomes(); ++a) {
            std::vector<int> at = sc.outcome_tuple(a, WithNull);
            marg[static_cast<std::size_t>(at[static_cast<std::size_t>(party)])] += corr.at(x, a);
        }
    }
    for (T& m : marg) m /= T(static_cast<int>(contexts));
    return marg;
}

// Largest deviation of any single-party marginal across the other parties'
// input choices. Zero for exactly non-signalling tables.
template <class T, bool WithNull>
T signalling_residual(const CorrelationTable<T, WithNull>& corr) {
    const Scenario& sc = corr.scenario();
    T worst(0);
    for (int party = 0; party < sc.n_parties(); ++party) {
        for (int input = 0; input < sc.inputs(party); ++input) {
            std::size_t n_out = static_cast<std::size_t>(sc.outcomes(party)) + (WithNull ? 1 : 0);
            // marginal per fixed context of the other parties
            std::vector<std::vector<T>> per_context;
            for (std::size_t x = 0; x < corr.n_inputs(); ++x) {
                std::vector<int> xt = sc.input_tuple(x);
                if (xt[static_cast<std::size_t>(party)] != input) continue;
                std::vector<T> m(n_out, T(0));
                for (std::size_t a = 0; a < corr.n_outcomes(); ++a) {
                    std::vector<int> at = sc.outcome_tuple(a, WithNull);
                    m[static_cast<std::size_t>(at[static_cast<std::size_t>(party)])] += corr.at(x, a);
                }
                per_context.push_back(std::move(m));
            }
            for (std::size_t c = 1; c < per_context.size(); ++c)
                for (std::size_t o = 0; o < n_out; ++o) {
                    T d = num::abs_val(T(per_context[c][o] - per_context[0][o]));
                    if (d > worst) worst = d;
                }
        }
    }
    return worst;
}

// Continued-fraction rationalization of a float table followed by an exact
// per-input renormalization, so the result satisfies the normalization
// invariant exactly (required by the equality-constrained exact LP).
inline PostselectedCorrelation<Rat> rationalize_correlation(
    const PostselectedCorrelation<double>& corr, double tol) {
    PostselectedCorrelation<Rat> out(corr.scenario());
    for (std::size_t x = 0; x < corr.n_inputs(); ++x) {
        Rat sum(0);
        for (std::size_t a = 0; a < corr.n_outcomes(); ++a) {
            Rat q = num::rationalize(corr.at(x, a), tol);
            if (q < 0) q = 0;
            out.at(x, a) = q;
            sum += q;
        }
        if (sum == 0) throw ZeroEfficiency("rationalized table has an all-zero input column");
        for (std::size_t a = 0; a < corr.n_outcomes(); ++a) out.at(x, a) /= sum;
    }
    return out;
}

// Exact per-input renormalization (used when exact mode ingests tables whose
// columns sum only approximately to one).
template <class T, bool WithNull>
CorrelationTable<T, WithNull> renormalize(const CorrelationTable<T, WithNull>& corr) {
    CorrelationTable<T, WithNull> out = corr;
    for (std::size_t x = 0; x < corr.n_inputs(); ++x) {
        T sum(0);
        for (std::size_t a = 0; a < corr.n_outcomes(); ++a) sum += corr.at(x, a);
        if (!(sum > T(0))) throw ZeroEfficiency("cannot renormalize an all-zero input column");
        for (std::size_t a = 0; a < corr.n_outcomes(); ++a) out.at(x, a) = T(corr.at(x, a) / sum);
    }
    return out;
}

}  // namespace ldl
