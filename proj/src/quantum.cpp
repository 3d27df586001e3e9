#include "ldl/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ldl {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Eigenvectors of the Bloch-direction observable; outcome 0 is +1.
std::array<cplx, 2> eigenvector(const BlochDirection& d, int outcome) {
    double c = std::cos(d.theta / 2), s = std::sin(d.theta / 2);
    cplx phase = std::polar(1.0, d.phi);
    if (outcome == 0) return {cplx(c, 0.0), phase * s};
    return {cplx(s, 0.0), -phase * c};
}

cplx amplitude(const TwoQubitState& psi, const std::array<cplx, 2>& va,
               const std::array<cplx, 2>& vb) {
    cplx amp(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            amp += std::conj(va[static_cast<std::size_t>(i)] * vb[static_cast<std::size_t>(j)]) *
                   psi.amplitudes[static_cast<std::size_t>(2 * i + j)];
    return amp;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2;
        double fm = f(mid);
        if ((fm >= 0) == (flo >= 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

}  // namespace

double TwoQubitState::norm_error() const {
    double n = 0;
    for (const cplx& a : amplitudes) n += std::norm(a);
    return std::fabs(n - 1.0);
}

PostselectedCorrelation<double> born_correlation(const TwoQubitState& state,
                                                 const ProjectiveSetting& alice,
                                                 const ProjectiveSetting& bob) {
    PostselectedCorrelation<double> out(Scenario({2, 2}, {2, 2}));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    cplx amp = amplitude(state,
                                         eigenvector(alice.per_input[static_cast<std::size_t>(x)], a),
                                         eigenvector(bob.per_input[static_cast<std::size_t>(y)], b));
                    out.at({x, y}, {a, b}) = std::norm(amp);
                }
    return out;
}

HardyPoint hardy_point(double tau) {
    if (!(tau > 0.0) || !(tau < 1.0))
        throw DegenerateTau(
            "tau must lie strictly inside (0,1); the Hardy probability vanishes at the endpoints");

    double alpha = tau * kPi / 4;
    TwoQubitState psi{{cplx(std::cos(alpha), 0), cplx(0, 0), cplx(0, 0), cplx(std::sin(alpha), 0)}};

    // With the phases pinned to the +-i plane both zero constraints become
    // sign changes of a real Born amplitude in a single polar angle, so two
    // nested bisections solve them.
    //  1. P(00|11) = 0: amplitude <v+(t1) v+(t1), psi>, phi = pi/2.
    double theta1 = bisect_root(
        [&](double t) {
            BlochDirection d{t, kPi / 2};
            return amplitude(psi, eigenvector(d, 0), eigenvector(d, 0)).real();
        },
        0.0, kPi);
    //  2. P(01|01) = 0: amplitude <v+(t0) v-(t1), psi>, phi0 = 3pi/2.
    double theta0 = bisect_root(
        [&](double t) {
            BlochDirection d0{t, 3 * kPi / 2}, d1{theta1, kPi / 2};
            return amplitude(psi, eigenvector(d0, 0), eigenvector(d1, 1)).real();
        },
        0.0, kPi);

    ProjectiveSetting setting{
        {BlochDirection{theta0, 3 * kPi / 2}, BlochDirection{theta1, kPi / 2}}};
    HardyPoint hp{psi, setting, setting, born_correlation(psi, setting, setting), 0.0};
    hp.hardy_probability = hp.correlation.at({0, 0}, {0, 0});

    double resid = std::max({hp.correlation.at({0, 1}, {0, 1}), hp.correlation.at({1, 0}, {1, 0}),
                             hp.correlation.at({1, 1}, {0, 0})});
    if (resid > 1e-9 || !(hp.hardy_probability > 0))
        throw DegenerateTau("Hardy constraints not satisfied at this tau");
    return hp;
}

}  // namespace ldl
