// Exact rational scalar type used by the exact LP mode and by the
// commensurable-weight recognition in the continuous-majorization witness.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "majkit/numeric.hpp"

namespace majkit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion: every finite double is a dyadic rational.
inline Rational to_rational(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("to_rational: value must be finite");
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(mant);
    if (exp >= 0) {
        r *= Rational(BigInt(1) << exp);
    } else {
        r /= Rational(BigInt(1) << (-exp));
    }
    return r;
}

inline std::vector<Rational> to_rational(const std::vector<double>& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(to_rational(x));
    return out;
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r);
}

// Best rational approximation of v with denominator <= max_den, by walking
// the continued-fraction convergents. Returns nothing if no convergent with
// an admissible denominator lands within tol of v.
inline std::optional<Rational> approx_rational(double v, std::uint64_t max_den,
                                               double tol) {
    if (!std::isfinite(v)) return std::nullopt;
    bool neg = v < 0.0;
    double x = std::fabs(v);
    // Convergent recurrences h/k.
    BigInt h_prev = 1, h = BigInt(static_cast<long long>(std::floor(x)));
    BigInt k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    for (int step = 0; step < 64; ++step) {
        Rational cand(h, k);
        if (std::fabs(to_double(cand) - x) <= tol) {
            return neg ? Rational(-cand) : cand;
        }
        if (frac <= 0.0) break;
        double inv = 1.0 / frac;
        double a_d = std::floor(inv);
        if (a_d > 9.0e15) break;
        auto a = BigInt(static_cast<long long>(a_d));
        frac = inv - a_d;
        BigInt h_next = a * h + h_prev;
        BigInt k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h; h = h_next;
        k_prev = k; k = k_next;
    }
    Rational cand(h, k);
    if (std::fabs(to_double(cand) - x) <= tol) {
        return neg ? Rational(-cand) : cand;
    }
    return std::nullopt;
}

inline Rational rational_gcd(const Rational& a, const Rational& b) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (a == 0) return b < 0 ? Rational(-b) : b;
    if (b == 0) return a < 0 ? Rational(-a) : a;
    BigInt num = gcd(boost::multiprecision::abs(numerator(a)),
                     boost::multiprecision::abs(numerator(b)));
    BigInt den = lcm(denominator(a), denominator(b));
    return Rational(num, den);
}

}  // namespace majkit
