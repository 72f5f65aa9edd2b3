// Shared numeric helpers: the scale-aware tolerance rule used across the
// library, plus a few small dense-vector conveniences.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace majkit {

// Default base for scale-aware comparisons. Everything in the library that
// compares floating-point quantities goes through eps_scaled so tolerances
// stay proportional to the magnitude of the data.
inline constexpr double kEpsBase = 1e-9;

inline double eps_scaled(double magnitude, double base = kEpsBase) {
    return base * (1.0 + std::fabs(magnitude));
}

inline bool approx_eq(double a, double b, double base = kEpsBase) {
    return std::fabs(a - b) <= eps_scaled(std::fmax(std::fabs(a), std::fabs(b)), base);
}

// a <= b up to scale-aware slack.
inline bool approx_le(double a, double b, double base = kEpsBase) {
    return a <= b + eps_scaled(std::fmax(std::fabs(a), std::fabs(b)), base);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline void require_finite(double v, const std::string& what) {
    if (!std::isfinite(v)) throw std::invalid_argument(what + " must be finite");
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double l1(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += std::fabs(v);
    return s;
}

inline double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("linf_diff: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
    return m;
}

inline double linf(const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::fmax(m, std::fabs(v));
    return m;
}

inline double linf_diff(const std::vector<std::vector<double>>& a,
                        const std::vector<std::vector<double>>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("linf_diff: row count mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::fmax(m, linf_diff(a[i], b[i]));
    return m;
}

}  // namespace majkit
