// Finite atomic measure spaces, vector-valued step functions on them, and
// decreasing rearrangements with their partial integrals. The rearrangement
// of a step function on finitely many atoms is itself a step function on
// [0, total_mass); RearrangedStep stores it as breakpoints plus levels.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "majkit/numeric.hpp"

namespace majkit {

class FiniteMeasureSpace {
public:
    explicit FiniteMeasureSpace(std::vector<double> weights)
        : weights_(std::move(weights)) {
        require(!weights_.empty(), "measure space needs at least one atom");
        double total = 0.0;
        for (double w : weights_) {
            require_finite(w, "atom weight");
            require(w > 0.0, "atom weights must be strictly positive");
            total += w;
        }
        total_mass_ = total;
    }

    // Counting measure on n atoms.
    static FiniteMeasureSpace counting(std::size_t n) {
        return FiniteMeasureSpace(std::vector<double>(n, 1.0));
    }

    std::size_t size() const { return weights_.size(); }
    double weight(std::size_t i) const { return weights_.at(i); }
    const std::vector<double>& weights() const { return weights_; }
    double total_mass() const { return total_mass_; }

private:
    std::vector<double> weights_;
    double total_mass_ = 0.0;
};

inline bool same_space(const FiniteMeasureSpace& a, const FiniteMeasureSpace& b,
                       double eps_base = kEpsBase) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!approx_eq(a.weight(i), b.weight(i), eps_base)) return false;
    }
    return true;
}

// A function from the atoms of a FiniteMeasureSpace into R^n, stored as one
// row of n values per atom.
class VectorStepFunction {
public:
    VectorStepFunction(FiniteMeasureSpace space, std::vector<std::vector<double>> values)
        : space_(std::move(space)), values_(std::move(values)) {
        require(values_.size() == space_.size(),
                "step function needs one value row per atom");
        require(!values_.empty() && !values_[0].empty(),
                "step function values must be nonempty");
        dimension_ = values_[0].size();
        for (const auto& row : values_) {
            require(row.size() == dimension_, "all value rows must share one dimension");
            for (double v : row) require_finite(v, "step function value");
        }
    }

    // Scalar convenience: one value per atom.
    static VectorStepFunction scalar(FiniteMeasureSpace space, const std::vector<double>& vals) {
        std::vector<std::vector<double>> rows;
        rows.reserve(vals.size());
        for (double v : vals) rows.push_back({v});
        return VectorStepFunction(std::move(space), std::move(rows));
    }

    const FiniteMeasureSpace& space() const { return space_; }
    std::size_t atom_count() const { return space_.size(); }
    std::size_t dimension() const { return dimension_; }
    double value(std::size_t atom, std::size_t coord) const {
        return values_.at(atom).at(coord);
    }
    const std::vector<double>& row(std::size_t atom) const { return values_.at(atom); }
    const std::vector<std::vector<double>>& values() const { return values_; }

    // Values of a scalar function as a flat vector.
    std::vector<double> scalar_values() const {
        require(dimension_ == 1, "scalar_values requires a 1-dimensional function");
        std::vector<double> out(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i][0];
        return out;
    }

private:
    FiniteMeasureSpace space_;
    std::vector<std::vector<double>> values_;
    std::size_t dimension_ = 0;
};

inline VectorStepFunction component(const VectorStepFunction& f, std::size_t k) {
    require(k < f.dimension(), "component index out of range");
    std::vector<double> vals(f.atom_count());
    for (std::size_t i = 0; i < f.atom_count(); ++i) vals[i] = f.value(i, k);
    return VectorStepFunction::scalar(f.space(), vals);
}

// Pointwise difference of two functions on the same space.
inline VectorStepFunction operator-(const VectorStepFunction& a, const VectorStepFunction& b) {
    require(same_space(a.space(), b.space()), "difference requires one common space");
    require(a.dimension() == b.dimension(), "difference requires equal dimensions");
    std::vector<std::vector<double>> rows(a.atom_count());
    for (std::size_t i = 0; i < a.atom_count(); ++i) {
        rows[i].resize(a.dimension());
        for (std::size_t k = 0; k < a.dimension(); ++k) {
            rows[i][k] = a.value(i, k) - b.value(i, k);
        }
    }
    return VectorStepFunction(a.space(), std::move(rows));
}

// Appends the columns of g to those of f; both must live on the same space.
// Used to bundle a function with a weight function into one vector function.
inline VectorStepFunction stack(const VectorStepFunction& f, const VectorStepFunction& g) {
    require(same_space(f.space(), g.space()), "stack requires one common space");
    std::vector<std::vector<double>> rows(f.atom_count());
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        rows[i] = f.row(i);
        const auto& extra = g.row(i);
        rows[i].insert(rows[i].end(), extra.begin(), extra.end());
    }
    return VectorStepFunction(f.space(), std::move(rows));
}

// Appends a constant trailing coordinate (default 1). The lifted rows (v, 1)
// are where positively homogeneous functionals can see affine behaviour.
inline VectorStepFunction lift_constant(const VectorStepFunction& f, double c = 1.0) {
    std::vector<std::vector<double>> rows(f.atom_count());
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        rows[i] = f.row(i);
        rows[i].push_back(c);
    }
    return VectorStepFunction(f.space(), std::move(rows));
}

// Componentwise integral over the whole space: sum_i mu_i f(i).
inline std::vector<double> integral(const VectorStepFunction& f) {
    std::vector<double> out(f.dimension(), 0.0);
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        double w = f.space().weight(i);
        for (std::size_t k = 0; k < f.dimension(); ++k) out[k] += w * f.value(i, k);
    }
    return out;
}

// Integral of the pointwise l1 norm: sum_i mu_i * |f(i)|_1.
inline double l1_norm(const VectorStepFunction& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        s += f.space().weight(i) * l1(f.row(i));
    }
    return s;
}

// mu{ f > s } for scalar f.
inline double distribution_function(const VectorStepFunction& f, double s) {
    require(f.dimension() == 1, "distribution_function requires a scalar function");
    require_finite(s, "threshold");
    double m = 0.0;
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        if (f.value(i, 0) > s) m += f.space().weight(i);
    }
    return m;
}

// Decreasing rearrangement of a scalar step function, as a right-continuous
// step function on [0, total_mass): levels_[j] on [breakpoints_[j],
// breakpoints_[j+1]). Levels are strictly decreasing; equal values merge.
class RearrangedStep {
public:
    RearrangedStep(std::vector<double> breakpoints, std::vector<double> levels)
        : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
        require(!levels_.empty(), "rearrangement needs at least one level");
        require(breakpoints_.size() == levels_.size() + 1,
                "rearrangement needs one more breakpoint than levels");
        require(breakpoints_.front() == 0.0, "rearrangement domain must start at 0");
        for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j) {
            require(breakpoints_[j] < breakpoints_[j + 1],
                    "rearrangement breakpoints must increase");
        }
        for (std::size_t j = 0; j + 1 < levels_.size(); ++j) {
            require(levels_[j] > levels_[j + 1], "rearrangement levels must decrease");
        }
    }

    double total_mass() const { return breakpoints_.back(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& levels() const { return levels_; }

    double value_at(double t) const {
        require(t >= 0.0 && t < total_mass(), "rearrangement evaluated outside [0, mass)");
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
        auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
        // idx >= 1 since breakpoints_[0] == 0 <= t.
        return levels_[std::min(idx - 1, levels_.size() - 1)];
    }

private:
    std::vector<double> breakpoints_;
    std::vector<double> levels_;
};

inline RearrangedStep decreasing_rearrangement(const VectorStepFunction& f) {
    require(f.dimension() == 1, "decreasing_rearrangement requires a scalar function");
    std::vector<std::size_t> order(f.atom_count());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return f.value(a, 0) > f.value(b, 0);
    });
    std::vector<double> breakpoints{0.0};
    std::vector<double> levels;
    for (std::size_t i : order) {
        double v = f.value(i, 0);
        double w = f.space().weight(i);
        if (!levels.empty() && levels.back() == v) {
            breakpoints.back() += w;  // merge the plateau
        } else {
            levels.push_back(v);
            breakpoints.push_back(breakpoints.back() + w);
        }
    }
    return RearrangedStep(std::move(breakpoints), std::move(levels));
}

// Integral of the rearrangement over [0, t].
inline double partial_integral(const RearrangedStep& r, double t) {
    require_finite(t, "partial integral bound");
    require(t >= 0.0 && t <= r.total_mass() * (1.0 + 1e-12) + 1e-12,
            "partial integral bound outside [0, total mass]");
    t = std::min(t, r.total_mass());
    double acc = 0.0;
    const auto& bp = r.breakpoints();
    const auto& lv = r.levels();
    for (std::size_t j = 0; j < lv.size(); ++j) {
        if (t <= bp[j]) break;
        double hi = std::min(t, bp[j + 1]);
        acc += lv[j] * (hi - bp[j]);
    }
    return acc;
}

inline double full_integral(const RearrangedStep& r) {
    return partial_integral(r, r.total_mass());
}

// Scalar majorization in the partial-integral sense: f is majorized by g when
// every partial integral of f's rearrangement is dominated by g's and the
// total integrals agree. Requires equal total masses.
inline bool continuous_majorize_check(const VectorStepFunction& f,
                                      const VectorStepFunction& g,
                                      double eps_base = kEpsBase) {
    require(f.dimension() == 1 && g.dimension() == 1,
            "continuous_majorize_check requires scalar functions");
    require(approx_eq(f.space().total_mass(), g.space().total_mass(), eps_base),
            "continuous_majorize_check requires equal total masses");
    RearrangedStep rf = decreasing_rearrangement(f);
    RearrangedStep rg = decreasing_rearrangement(g);
    double mass = std::min(rf.total_mass(), rg.total_mass());
    // Partial integrals are piecewise linear and concave in t; comparing at
    // the union of breakpoints decides domination everywhere.
    std::vector<double> ts;
    for (double b : rf.breakpoints()) ts.push_back(std::min(b, mass));
    for (double b : rg.breakpoints()) ts.push_back(std::min(b, mass));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    double scale = std::fmax(std::fabs(full_integral(rf)), std::fabs(full_integral(rg)));
    for (double t : ts) {
        double a = partial_integral(rf, t);
        double b = partial_integral(rg, t);
        if (a > b + eps_scaled(std::fmax(scale, std::fmax(std::fabs(a), std::fabs(b))), eps_base)) {
            return false;
        }
    }
    return approx_eq(full_integral(rf), full_integral(rg), eps_base);
}

}  // namespace majkit
