// Stochastic and doubly stochastic kernels between finite atomic measure
// spaces.
//
// A kernel K from (Y, nu) to (X, mu) is a nonnegative table with one row per
// atom of X and one column per atom of Y, acting on functions by
//     (K g)(i) = sum_j K(i, j) nu_j g(j),
// and is stochastic when sum_i mu_i K(i, j) = 1 for every column j (it then
// maps nonnegative functions to nonnegative functions and preserves
// integrals). Doubly stochastic adds sum_j nu_j K(i, j) = 1 for every row,
// which forces the two total masses to agree and makes K fix constants.
#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "majkit/measure.hpp"
#include "majkit/numeric.hpp"

namespace majkit {

class StochasticKernel {
public:
    StochasticKernel(FiniteMeasureSpace domain, FiniteMeasureSpace codomain,
                     std::vector<std::vector<double>> table,
                     double eps_base = kEpsBase)
        : domain_(std::move(domain)), codomain_(std::move(codomain)),
          table_(std::move(table)) {
        require(table_.size() == codomain_.size(),
                "kernel table needs one row per codomain atom");
        for (auto& row : table_) {
            require(row.size() == domain_.size(),
                    "kernel table needs one column per domain atom");
            for (double& v : row) {
                require_finite(v, "kernel entry");
                // Tolerate roundoff-level negatives from solvers, nothing more.
                require(v >= -1e-12, "kernel entries must be nonnegative");
                if (v < 0.0) v = 0.0;
            }
        }
        for (std::size_t j = 0; j < domain_.size(); ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < codomain_.size(); ++i) {
                s += codomain_.weight(i) * table_[i][j];
            }
            require(approx_eq(s, 1.0, eps_base),
                    "kernel column " + std::to_string(j) +
                        " is not normalized against the codomain measure");
        }
    }

    const FiniteMeasureSpace& domain() const { return domain_; }
    const FiniteMeasureSpace& codomain() const { return codomain_; }
    double entry(std::size_t i, std::size_t j) const { return table_.at(i).at(j); }
    const std::vector<std::vector<double>>& table() const { return table_; }

private:
    FiniteMeasureSpace domain_;
    FiniteMeasureSpace codomain_;
    std::vector<std::vector<double>> table_;
};

class DoublyStochasticKernel : public StochasticKernel {
public:
    DoublyStochasticKernel(FiniteMeasureSpace domain, FiniteMeasureSpace codomain,
                           std::vector<std::vector<double>> table,
                           double eps_base = kEpsBase)
        : StochasticKernel(std::move(domain), std::move(codomain), std::move(table),
                           eps_base) {
        require(approx_eq(this->domain().total_mass(), this->codomain().total_mass(),
                          eps_base),
                "doubly stochastic kernel requires equal total masses");
        for (std::size_t i = 0; i < this->codomain().size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < this->domain().size(); ++j) {
                s += this->domain().weight(j) * entry(i, j);
            }
            require(approx_eq(s, 1.0, eps_base),
                    "kernel row " + std::to_string(i) +
                        " is not normalized against the domain measure");
        }
    }
};

inline DoublyStochasticKernel as_doubly(const StochasticKernel& k,
                                        double eps_base = kEpsBase) {
    return DoublyStochasticKernel(k.domain(), k.codomain(), k.table(), eps_base);
}

inline DoublyStochasticKernel identity_kernel(const FiniteMeasureSpace& space) {
    std::vector<std::vector<double>> t(space.size(), std::vector<double>(space.size(), 0.0));
    for (std::size_t i = 0; i < space.size(); ++i) t[i][i] = 1.0 / space.weight(i);
    return DoublyStochasticKernel(space, space, std::move(t));
}

// Rank-one kernel sending every function to its mean value.
inline DoublyStochasticKernel averaging_kernel(const FiniteMeasureSpace& space) {
    double total = space.total_mass();
    std::vector<std::vector<double>> t(
        space.size(), std::vector<double>(space.size(), 1.0 / total));
    return DoublyStochasticKernel(space, space, std::move(t));
}

inline VectorStepFunction apply(const StochasticKernel& k, const VectorStepFunction& g) {
    require(same_space(k.domain(), g.space()),
            "apply: function does not live on the kernel's domain");
    std::size_t m = k.codomain().size();
    std::size_t p = k.domain().size();
    std::size_t n = g.dimension();
    std::vector<std::vector<double>> rows(m, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double c = k.entry(i, j) * k.domain().weight(j);
            if (c == 0.0) continue;
            for (std::size_t kk = 0; kk < n; ++kk) rows[i][kk] += c * g.value(j, kk);
        }
    }
    return VectorStepFunction(k.codomain(), std::move(rows));
}

// Composition (outer after inner): inner maps (A, alpha) to (B, beta), outer
// maps (B, beta) to (C, gamma); the result maps A to C with table
//     R(i, j) = sum_t outer(i, t) beta_t inner(t, j),
// which matches apply(outer, apply(inner, g)) for every g.
inline StochasticKernel compose(const StochasticKernel& outer, const StochasticKernel& inner) {
    require(same_space(outer.domain(), inner.codomain()),
            "compose: inner codomain must match outer domain");
    const auto& mid = outer.domain();
    std::size_t m = outer.codomain().size();
    std::size_t q = mid.size();
    std::size_t p = inner.domain().size();
    std::vector<std::vector<double>> r(m, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t t = 0; t < q; ++t) {
            double c = outer.entry(i, t) * mid.weight(t);
            if (c == 0.0) continue;
            for (std::size_t j = 0; j < p; ++j) r[i][j] += c * inner.entry(t, j);
        }
    }
    return StochasticKernel(inner.domain(), outer.codomain(), std::move(r));
}

inline DoublyStochasticKernel compose(const DoublyStochasticKernel& outer,
                                      const DoublyStochasticKernel& inner) {
    return as_doubly(compose(static_cast<const StochasticKernel&>(outer),
                             static_cast<const StochasticKernel&>(inner)));
}

// Pointwise multiplication by a positive scalar function s, viewed as a
// stochastic kernel. The atoms are shared; only the weights change, and the
// stochasticity condition pins the codomain weights to domain_w / s. The
// codomain is passed explicitly so the caller states the intended reweighting
// and we can verify it rather than silently derive it.
inline StochasticKernel multiplication_kernel(const VectorStepFunction& s,
                                              const FiniteMeasureSpace& codomain,
                                              double eps_base = kEpsBase) {
    require(s.dimension() == 1, "multiplication kernel needs a scalar factor");
    const auto& from = s.space();
    require(codomain.size() == from.size(),
            "multiplication kernel keeps the atom set; sizes must match");
    std::size_t n = from.size();
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        double sj = s.value(j, 0);
        require(sj > 0.0, "multiplication factor must be strictly positive");
        require(approx_eq(codomain.weight(j), from.weight(j) / sj, eps_base),
                "codomain weights must equal domain weights divided by the factor");
        t[j][j] = sj / from.weight(j);
    }
    return StochasticKernel(from, codomain, std::move(t), eps_base);
}

// Returns (|K g| integrated over the codomain, |g| integrated over the
// domain). A stochastic kernel never increases this pair's first entry past
// the second.
inline std::pair<double, double> l1_contraction_check(const StochasticKernel& k,
                                                      const VectorStepFunction& g) {
    return {l1_norm(apply(k, g)), l1_norm(g)};
}

// Rescales each column of a nonnegative table so it becomes stochastic.
// Columns with vanishing mass cannot be fixed and are rejected.
inline StochasticKernel renormalize(const FiniteMeasureSpace& domain,
                                    const FiniteMeasureSpace& codomain,
                                    std::vector<std::vector<double>> table) {
    require(table.size() == codomain.size(), "renormalize: one row per codomain atom");
    for (const auto& row : table) {
        require(row.size() == domain.size(), "renormalize: one column per domain atom");
        for (double v : row) {
            require_finite(v, "table entry");
            require(v >= 0.0, "renormalize needs nonnegative entries");
        }
    }
    for (std::size_t j = 0; j < domain.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < codomain.size(); ++i) {
            s += codomain.weight(i) * table[i][j];
        }
        require(s > 0.0, "renormalize: column " + std::to_string(j) + " has zero mass");
        for (std::size_t i = 0; i < codomain.size(); ++i) table[i][j] /= s;
    }
    return StochasticKernel(domain, codomain, std::move(table));
}

}  // namespace majkit
