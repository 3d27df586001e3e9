#pragma once

// Two-qubit Born-rule correlations with projective measurements, plus the
// Hardy family: partially entangled states and settings with
// P(01|01) = P(10|10) = P(00|11) = 0 and P(00|00) > 0.

#include <array>
#include <complex>

#include "ldl/correlation.hpp"
#include "ldl/errors.hpp"

namespace ldl {

struct TwoQubitState {
    // basis order |00>, |01>, |10>, |11>
    std::array<std::complex<double>, 4> amplitudes;

    double norm_error() const;  // | sum |amp|^2 - 1 |
};

struct BlochDirection {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2pi)
};

// One measurement direction per binary input; outcome 0 is the +1 eigenspace.
struct ProjectiveSetting {
    std::array<BlochDirection, 2> per_input;
};

// P(ab|xy) = |<v_a^x (x) v_b^y | psi>|^2 over the 2x2 binary scenario.
PostselectedCorrelation<double> born_correlation(const TwoQubitState& state,
                                                 const ProjectiveSetting& alice,
                                                 const ProjectiveSetting& bob);

struct HardyPoint {
    TwoQubitState state;
    ProjectiveSetting alice;
    ProjectiveSetting bob;
    PostselectedCorrelation<double> correlation;
    double hardy_probability = 0.0;  // P(00|00)
};

// Hardy construction for entanglement parameter tau in (0,1): the state is
// cos(alpha)|00> + sin(alpha)|11> with alpha = tau * pi/4. Settings are
// solved numerically from the three Born-rule zero constraints; the
// endpoints (product / maximally entangled states) admit no Hardy paradox.
HardyPoint hardy_point(double tau);

template <class T>
PostselectedCorrelation<T> mix_with_white_noise(const PostselectedCorrelation<T>& p,
                                                const T& visibility) {
    if (visibility < T(0) || visibility > T(1))
        throw ScenarioMismatch("visibility must lie in [0,1]");
    return mix(p, uniform_postselected<T>(p.scenario()), visibility);
}

}  // namespace ldl
