#pragma once

// Shared helpers for the test suites: seeded RNG plus random table builders.

#include <random>
#include <vector>

#include "ldl/correlation.hpp"
#include "ldl/rational.hpp"
#include "ldl/scenario.hpp"

namespace ldl::test {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Uniform rational in [0,1) on a fine dyadic grid; exact in both modes.
inline Rat random_fraction(std::mt19937_64& rng) {
    return num::frac(static_cast<long>(rng() >> 34), 1073741824L);  // denominator 2^30
}

template <class T>
T random_unit(std::mt19937_64& rng) {
    return num::from_rat<T>(random_fraction(rng));
}

// Random normalized distribution over n outcomes (exact in rational mode).
template <class T>
std::vector<T> random_distribution(std::mt19937_64& rng, std::size_t n) {
    std::vector<T> d(n);
    T sum(0);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = T(random_unit<T>(rng) + num::from_rat<T>(Rat(1, 1000)));
        sum += d[i];
    }
    for (T& v : d) v = T(v / sum);
    return d;
}

// Random full correlation: independent random distribution per input column.
template <class T>
FullCorrelation<T> random_full(std::mt19937_64& rng, const Scenario& sc) {
    FullCorrelation<T> out(sc);
    for (std::size_t x = 0; x < out.n_inputs(); ++x) {
        std::vector<T> d = random_distribution<T>(rng, out.n_outcomes());
        for (std::size_t a = 0; a < out.n_outcomes(); ++a) out.at(x, a) = d[a];
    }
    return out;
}

inline Scenario chsh_scenario() { return Scenario({2, 2}, {2, 2}); }

// PR box: a xor b = x*y, uniform over the two winning outcomes.
template <class T>
PostselectedCorrelation<T> pr_box() {
    PostselectedCorrelation<T> p(chsh_scenario());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a ^ b) == (x & y))
                        p.at({x, y}, {a, b}) = num::from_rat<T>(Rat(1, 2));
    return p;
}

// Deterministic local point: outcome functions a(x), b(y) given as digits.
template <class T>
PostselectedCorrelation<T> deterministic_point(int a0, int a1, int b0, int b1) {
    PostselectedCorrelation<T> p(chsh_scenario());
    const int af[2] = {a0, a1}, bf[2] = {b0, b1};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) p.at({x, y}, {af[x], bf[y]}) = T(1);
    return p;
}

}  // namespace ldl::test
