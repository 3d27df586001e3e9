#include "ldl/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace ldl {
namespace num {

Rat rationalize(double x, double tol) {
    if (!std::isfinite(x)) throw ParseError("cannot rationalize non-finite value");
    if (tol <= 0.0) return Rat(x);

    Rat target(x);
    Rat eps = Rat(tol);
    if (abs_val(target) <= eps) return Rat(0);

    bool neg = target < 0;
    if (neg) target = -target;

    // Stern-Brocot search: left = lo_n/lo_d, right = hi_n/hi_d enclose the
    // target; mediants converge with minimal denominators.
    mpz_class lo_n = target.get_num() / target.get_den();  // floor
    mpz_class lo_d = 1, hi_n = lo_n + 1, hi_d = 1;
    Rat lo(lo_n, lo_d), hi(hi_n, hi_d);
    if (abs_val(lo - target) <= eps) return neg ? Rat(-lo) : lo;
    if (abs_val(hi - target) <= eps) return neg ? Rat(-hi) : hi;

    for (int iter = 0; iter < 100000; ++iter) {
        mpz_class mid_n = lo_n + hi_n;
        mpz_class mid_d = lo_d + hi_d;
        Rat mid(mid_n, mid_d);
        mid.canonicalize();
        if (abs_val(mid - target) <= eps) return neg ? Rat(-mid) : mid;
        if (mid < target) {
            // Step several mediants at once when the target is far off to
            // keep convergence linear for lopsided continued fractions.
            lo_n = mid_n;
            lo_d = mid_d;
        } else {
            hi_n = mid_n;
            hi_d = mid_d;
        }
    }
    return Rat(neg ? -x : x);  // fallback: exact dyadic
}

namespace {

Rat parse_decimal(const std::string& s) {
    // [sign] digits [. digits] [e|E [sign] digits]
    std::size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool saw_digit = false, saw_dot = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            saw_digit = true;
            if (saw_dot) ++frac_digits;
        } else if (c == '.' && !saw_dot) {
            saw_dot = true;
        } else {
            break;
        }
    }
    if (!saw_digit) throw ParseError("bad numeric literal: '" + s + "'");

    long exp10 = 0;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool eneg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            eneg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size()) throw ParseError("bad exponent in '" + s + "'");
        long e = 0;
        for (; pos < s.size(); ++pos) {
            if (!std::isdigit(static_cast<unsigned char>(s[pos])))
                throw ParseError("bad exponent in '" + s + "'");
            e = e * 10 + (s[pos] - '0');
            if (e > 100000) throw ParseError("exponent out of range in '" + s + "'");
        }
        exp10 = eneg ? -e : e;
    }
    if (pos != s.size()) throw ParseError("bad numeric literal: '" + s + "'");

    mpz_class mant(digits.empty() ? std::string("0") : digits, 10);
    long shift = exp10 - frac_digits;
    Rat value(mant);
    if (shift > 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        value *= Rat(p);
    } else if (shift < 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        value /= Rat(p);
    }
    return neg ? Rat(-value) : value;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty numeric literal");

    std::size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        if (ns.empty() || ds.empty()) throw ParseError("bad rational literal: '" + text + "'");
        try {
            mpz_class n(ns, 10), d(ds, 10);
            if (d == 0) throw ParseError("zero denominator in '" + text + "'");
            Rat q(n, d);
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal: '" + text + "'");
        }
    }
    return parse_decimal(s);
}

std::string format_rational(const Rat& q) { return q.get_str(); }

}  // namespace num
}  // namespace ldl
