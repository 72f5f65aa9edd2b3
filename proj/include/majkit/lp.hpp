// Equality-form feasibility solver: decide whether {x >= 0 : Ax = b} is
// nonempty, returning either a feasible point or a Farkas certificate
// (y with A^T y <= 0 and b^T y > 0). The engine is a phase-I simplex with
// Bland's rule, templated on the scalar so the same tableau code runs in
// double and in exact rational arithmetic. Every outcome is verified against
// the advertised tolerances before being returned; outcomes that cannot be
// verified escalate (tighter pivots, then exact rationals) and only then
// fail with AmbiguousFeasibilityError.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "majkit/numeric.hpp"
#include "majkit/rational.hpp"

namespace majkit {

struct FeasibilitySystem {
    std::vector<std::vector<double>> a;  // r rows, c columns
    std::vector<double> b;               // r entries
};

struct SolveOptions {
    double pivot_tol = 1e-9;
    bool exact = false;                   // skip doubles, go straight to rationals
    std::size_t max_entries = 1'000'000;  // r * c cap
};

struct FeasibilityOutcome {
    bool feasible = false;
    std::vector<double> point;   // set when feasible: x >= -1e-12, Ax ~= b
    std::vector<double> farkas;  // set when infeasible: A^T y <= 1e-9, b^T y >= 1e-7
};

class AmbiguousFeasibilityError : public std::runtime_error {
public:
    explicit AmbiguousFeasibilityError(const std::string& msg)
        : std::runtime_error(msg) {}
};

class IterationLimitError : public std::runtime_error {
public:
    explicit IterationLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

template <class S>
struct PhaseOneResult {
    S objective{};          // minimum of the artificial mass
    std::vector<S> x;       // candidate point (meaningful when objective ~ 0)
    std::vector<S> y;       // simplex multipliers in original row coordinates
    std::size_t iterations = 0;
};

// Phase-I simplex for Ax = b, x >= 0. Rows are sign-flipped so the right
// hand side is nonnegative, one artificial variable is added per row, and
// sum of artificials is minimized. Bland's rule (lowest-index entering
// column; ties in the ratio test broken by lowest basic index) prevents
// cycling. pivot_tol is the dead zone for reduced costs and pivot entries;
// pass exact zero for rational scalars.
template <class S>
PhaseOneResult<S> phase_one(const std::vector<std::vector<S>>& a,
                            const std::vector<S>& b, const S& pivot_tol) {
    const std::size_t r = b.size();
    const std::size_t c = a.at(0).size();
    const std::size_t cols = c + r;

    std::vector<int> sign(r, 1);
    std::vector<std::vector<S>> t(r, std::vector<S>(cols, S(0)));
    std::vector<S> rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        sign[i] = b[i] < S(0) ? -1 : 1;
        for (std::size_t j = 0; j < c; ++j) {
            t[i][j] = sign[i] < 0 ? S(-a[i][j]) : a[i][j];
        }
        t[i][c + i] = S(1);
        rhs[i] = sign[i] < 0 ? S(-b[i]) : b[i];
    }

    std::vector<std::size_t> basis(r);
    for (std::size_t i = 0; i < r; ++i) basis[i] = c + i;

    // Reduced costs with the artificial basis priced out.
    std::vector<S> d(cols, S(0));
    for (std::size_t j = 0; j < c; ++j) {
        S s(0);
        for (std::size_t i = 0; i < r; ++i) s += t[i][j];
        d[j] = -s;
    }

    const std::size_t max_iters = 50 * (r + c) * (r + c);
    std::size_t iters = 0;
    while (true) {
        // Entering column: lowest index with a negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (d[j] < -pivot_tol) { enter = j; break; }
        }
        if (enter == cols) break;

        // Ratio test over rows with a usable pivot entry.
        std::size_t leave = r;
        S best_ratio(0);
        for (std::size_t i = 0; i < r; ++i) {
            if (!(t[i][enter] > pivot_tol)) continue;
            S ratio = rhs[i] / t[i][enter];
            if (leave == r || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == r) {
            // The phase-I objective is bounded below by zero, so a genuinely
            // unbounded column cannot occur; hitting this means the dead zone
            // swallowed every pivot entry. Drop the column and move on.
            d[enter] = S(0);
            continue;
        }

        if (++iters > max_iters) {
            throw IterationLimitError("phase-I simplex exceeded 50 (r+c)^2 pivots");
        }

        S piv = t[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
        rhs[leave] /= piv;
        t[leave][enter] = S(1);
        for (std::size_t i = 0; i < r; ++i) {
            if (i == leave) continue;
            S f = t[i][enter];
            if (f == S(0)) continue;
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
            rhs[i] -= f * rhs[leave];
            t[i][enter] = S(0);
            if (rhs[i] < S(0)) rhs[i] = S(0);  // clip roundoff, keeps doubles sane
        }
        S f = d[enter];
        if (f != S(0)) {
            for (std::size_t j = 0; j < cols; ++j) d[j] -= f * t[leave][j];
            d[enter] = S(0);
        }
        basis[leave] = enter;
    }

    PhaseOneResult<S> out;
    out.iterations = iters;
    out.objective = S(0);
    out.x.assign(c, S(0));
    for (std::size_t i = 0; i < r; ++i) {
        if (basis[i] >= c) {
            out.objective += rhs[i];
        } else {
            out.x[basis[i]] = rhs[i];
        }
    }
    // Simplex multipliers read off the artificial columns: each artificial
    // had cost 1, so y_i = 1 - d[c+i], flipped back to the original row signs.
    out.y.assign(r, S(0));
    for (std::size_t i = 0; i < r; ++i) {
        S yi = S(1) - d[c + i];
        out.y[i] = sign[i] < 0 ? S(-yi) : yi;
    }
    return out;
}

inline double residual_inf(const FeasibilitySystem& sys, const std::vector<double>& x) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sys.b.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += sys.a[i][j] * x[j];
        worst = std::fmax(worst, std::fabs(s - sys.b[i]));
    }
    return worst;
}

inline bool verify_feasible(const FeasibilitySystem& sys, const std::vector<double>& x,
                            double bscale) {
    for (double v : x) {
        if (!(v >= -1e-12) || !std::isfinite(v)) return false;
    }
    return residual_inf(sys, x) <= 1e-9 * bscale;
}

inline bool verify_infeasible(const FeasibilitySystem& sys, const std::vector<double>& y) {
    for (double v : y) {
        if (!std::isfinite(v)) return false;
    }
    const std::size_t c = sys.a[0].size();
    for (std::size_t j = 0; j < c; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < sys.b.size(); ++i) s += sys.a[i][j] * y[i];
        if (s > 1e-9) return false;
    }
    double by = 0.0;
    for (std::size_t i = 0; i < sys.b.size(); ++i) by += sys.b[i] * y[i];
    return by >= 1e-7;
}

// Exact-rational decision. Feasibility is settled exactly; only the final
// conversion back to doubles can fail the advertised tolerances, in which
// case the system genuinely sits on the numeric knife edge.
inline FeasibilityOutcome solve_exact(const FeasibilitySystem& sys, double bscale) {
    const std::size_t r = sys.b.size();
    const std::size_t c = sys.a[0].size();
    std::vector<std::vector<Rational>> a(r);
    for (std::size_t i = 0; i < r; ++i) a[i] = to_rational(sys.a[i]);
    std::vector<Rational> b = to_rational(sys.b);

    auto res = phase_one<Rational>(a, b, Rational(0));
    FeasibilityOutcome out;
    if (res.objective == 0) {
        out.feasible = true;
        out.point.reserve(c);
        for (const auto& v : res.x) out.point.push_back(to_double(v));
        if (!verify_feasible(sys, out.point, bscale)) {
            throw AmbiguousFeasibilityError(
                "exact solve found a feasible point that does not survive "
                "conversion to double precision");
        }
        return out;
    }

    // res.objective > 0: res.y is an exact Farkas certificate with
    // b^T y = objective. Try it raw, then normalized to b^T y = 1.
    std::vector<double> raw(r);
    for (std::size_t i = 0; i < r; ++i) raw[i] = to_double(res.y[i]);
    out.feasible = false;
    if (verify_infeasible(sys, raw)) {
        out.farkas = std::move(raw);
        return out;
    }
    std::vector<double> scaled(r);
    for (std::size_t i = 0; i < r; ++i) {
        scaled[i] = to_double(Rational(res.y[i] / res.objective));
    }
    if (verify_infeasible(sys, scaled)) {
        out.farkas = std::move(scaled);
        return out;
    }
    throw AmbiguousFeasibilityError(
        "exact solve proved infeasibility but no double-precision certificate "
        "meets the advertised tolerances");
}

}  // namespace detail

inline FeasibilityOutcome solve_feasibility(const FeasibilitySystem& sys,
                                            const SolveOptions& opts = {}) {
    const std::size_t r = sys.b.size();
    require(r >= 1, "feasibility system needs at least one row");
    require(sys.a.size() == r, "feasibility system: row count mismatch");
    const std::size_t c = sys.a[0].size();
    require(c >= 1, "feasibility system needs at least one column");
    for (const auto& row : sys.a) {
        require(row.size() == c, "feasibility system rows must share one length");
        for (double v : row) require_finite(v, "coefficient");
    }
    for (double v : sys.b) require_finite(v, "right hand side");
    require(r * c <= opts.max_entries,
            "feasibility system exceeds the configured entry budget");

    const double bscale = 1.0 + linf(sys.b);

    if (!opts.exact) {
        double pivot_tol = opts.pivot_tol;
        for (int attempt = 0; attempt < 2; ++attempt) {
            auto res = detail::phase_one<double>(sys.a, sys.b, pivot_tol);
            const double zero_tol = 1e-11 * bscale;
            if (res.objective <= zero_tol) {
                FeasibilityOutcome out;
                out.feasible = true;
                out.point = std::move(res.x);
                if (detail::verify_feasible(sys, out.point, bscale)) return out;
                break;  // roundoff claim did not verify, go exact
            }
            if (res.objective >= 1e-7) {
                FeasibilityOutcome out;
                out.feasible = false;
                out.farkas = std::move(res.y);
                if (detail::verify_infeasible(sys, out.farkas)) return out;
                break;
            }
            // Phase-I optimum in the ambiguous band: retry once with tighter
            // pivots before falling back to exact arithmetic.
            pivot_tol = 1e-12;
        }
    }
    return detail::solve_exact(sys, bscale);
}

}  // namespace majkit
