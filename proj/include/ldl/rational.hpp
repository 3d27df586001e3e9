#pragma once

// Numeric layer. The toolkit runs in one of two scalar modes:
//   exact  - GMP rationals (ldl::Rat), used whenever all inputs are rational,
//   float  - IEEE doubles with explicit tolerances.
// Generic code is templated on the scalar; the helpers below paper over the
// few places where the two types differ (abs, conversion, parsing).

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "ldl/errors.hpp"

namespace ldl {

using Rat = mpq_class;

namespace num {

inline double to_double(const Rat& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Every finite double is an exact dyadic rational; mpq_class keeps it exact.
inline Rat to_rat(double x) { return Rat(x); }
inline Rat to_rat(const Rat& q) { return q; }

template <class T>
T from_rat(const Rat& q);
template <>
inline Rat from_rat<Rat>(const Rat& q) { return q; }
template <>
inline double from_rat<double>(const Rat& q) { return q.get_d(); }

inline Rat abs_val(const Rat& q) { return q < 0 ? Rat(-q) : q; }
inline double abs_val(double x) { return std::fabs(x); }

// mpq_class(n, d) does not canonicalize; mpq_equal assumes canonical form.
// Every runtime-valued fraction must go through here.
inline Rat frac(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

template <class T>
T zero() { return T(0); }
template <class T>
T one() { return T(1); }

// Smallest-denominator rational within |x - p/q| <= tol, by walking the
// Stern-Brocot tree. tol <= 0 returns the exact dyadic value of x.
Rat rationalize(double x, double tol);

// Accepts "p/q", decimal strings ("0.125", "1e-3", "-2.5e2") and plain
// integers. Throws ParseError on anything else.
Rat parse_rational(const std::string& text);

// Canonical form: "p" for integers, "p/q" otherwise (q > 0, gcd(p,q)=1).
std::string format_rational(const Rat& q);

}  // namespace num
}  // namespace ldl
