// Majorization decision procedures. Vector majorization with constructive
// doubly stochastic witnesses, matrix and multivariate majorization via LP
// feasibility with stochastic-kernel witnesses and separating sublinear
// certificates from the Farkas dual, randomized certificate sweeps, the
// reweighting that turns a stochastic witness into a doubly stochastic one
// between rescaled measures, witnesses for scalar majorization on
// commensurable weights, and the three-way scalar equivalence report.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "majkit/functionals.hpp"
#include "majkit/kernels.hpp"
#include "majkit/lp.hpp"
#include "majkit/measure.hpp"
#include "majkit/numeric.hpp"
#include "majkit/random.hpp"
#include "majkit/rational.hpp"

namespace majkit {

struct MajorizeOptions {
    bool exact = false;        // decide the LP in exact rational arithmetic
    double eps_base = kEpsBase;
    double min_margin = 1e-7;  // certificates below this margin escalate to exact
};

struct MajorizationVerdict {
    bool holds = false;
    std::optional<StochasticKernel> witness;
    bool witness_doubly = false;
    std::optional<SublinearFunctional> certificate;
    std::optional<double> margin;
};

// Classical majorization of plain vectors: descending partial sums of x never
// exceed those of y, with equal totals.
inline bool vector_majorize(const std::vector<double>& x, const std::vector<double>& y,
                            double eps_base = kEpsBase) {
    require(x.size() == y.size(), "vector_majorize requires equal lengths");
    require(!x.empty(), "vector_majorize requires nonempty vectors");
    for (double v : x) require_finite(v, "entry");
    for (double v : y) require_finite(v, "entry");
    std::vector<double> xs = x, ys = y;
    std::sort(xs.begin(), xs.end(), std::greater<double>());
    std::sort(ys.begin(), ys.end(), std::greater<double>());
    double scale = std::fmax(linf(xs), linf(ys)) * static_cast<double>(x.size());
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        px += xs[i];
        py += ys[i];
        if (px > py + eps_scaled(scale, eps_base)) return false;
    }
    return approx_eq(px, py, eps_base * (1.0 + scale));
}

// Constructive witness for x majorized by y: a doubly stochastic matrix S
// (as a kernel between counting spaces) with S y = x, built from at most
// n - 1 two-coordinate averaging steps on the sorted vectors and conjugated
// back through the sorting permutations.
inline DoublyStochasticKernel hlp_witness(const std::vector<double>& x,
                                          const std::vector<double>& y,
                                          double eps_base = kEpsBase) {
    require(vector_majorize(x, y, eps_base),
            "hlp_witness requires x to be majorized by y");
    const std::size_t n = x.size();
    std::vector<std::size_t> ox(n), oy(n);
    std::iota(ox.begin(), ox.end(), std::size_t{0});
    std::iota(oy.begin(), oy.end(), std::size_t{0});
    std::sort(ox.begin(), ox.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    std::sort(oy.begin(), oy.end(), [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
    std::vector<double> xs(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = x[ox[i]];
        w[i] = y[oy[i]];
    }
    double tol = eps_scaled(std::fmax(linf(xs), linf(w)), eps_base);

    // s maps sorted y to the current working vector w.
    std::vector<std::vector<double>> s(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) s[i][i] = 1.0;

    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Largest j where w still sits above the target, then the first
        // index past it where w sits below. Everything between matches.
        std::size_t j = n;
        for (std::size_t i = n; i-- > 0;) {
            if (w[i] - xs[i] > tol) { j = i; break; }
        }
        if (j == n) break;
        std::size_t k = n;
        for (std::size_t i = j + 1; i < n; ++i) {
            if (xs[i] - w[i] > tol) { k = i; break; }
        }
        if (k == n) break;

        double delta = std::fmin(w[j] - xs[j], xs[k] - w[k]);
        double theta = delta / (w[j] - w[k]);
        std::vector<double> row_j = s[j];
        for (std::size_t t = 0; t < n; ++t) {
            s[j][t] = (1.0 - theta) * row_j[t] + theta * s[k][t];
            s[k][t] = theta * row_j[t] + (1.0 - theta) * s[k][t];
        }
        // Land one endpoint exactly on its target so roundoff cannot stall.
        if (w[j] - xs[j] <= xs[k] - w[k]) {
            w[k] += w[j] - xs[j];
            w[j] = xs[j];
        } else {
            w[j] -= xs[k] - w[k];
            w[k] = xs[k];
        }
    }

    // Undo the sorting permutations.
    std::vector<std::vector<double>> full(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) full[ox[a]][oy[b]] = s[a][b];
    }
    auto counting = FiniteMeasureSpace::counting(n);
    DoublyStochasticKernel kernel(counting, counting, std::move(full), eps_base);
    auto image = apply(kernel, VectorStepFunction::scalar(counting, y));
    for (std::size_t i = 0; i < n; ++i) {
        require(approx_eq(image.value(i, 0), x[i], eps_base * static_cast<double>(n)),
                "hlp_witness failed to reproduce the target vector");
    }
    return kernel;
}

namespace detail {

// Transport feasibility system for "f = K g with K (doubly) stochastic":
// unknowns K(i, j) laid out row-major at column i*p + j; first the m*n value
// constraints sum_j K(i,j) nu_j g_j^k = f_i^k ordered by (i, k), then the p
// column normalizations, then (doubly only) the m row normalizations.
inline FeasibilitySystem transport_system(const VectorStepFunction& f,
                                          const VectorStepFunction& g, bool doubly) {
    const std::size_t m = f.atom_count();
    const std::size_t p = g.atom_count();
    const std::size_t n = f.dimension();
    const std::size_t rows = m * n + p + (doubly ? m : 0);
    FeasibilitySystem sys;
    sys.a.assign(rows, std::vector<double>(m * p, 0.0));
    sys.b.assign(rows, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            auto& row = sys.a[i * n + k];
            for (std::size_t j = 0; j < p; ++j) {
                row[i * p + j] = g.space().weight(j) * g.value(j, k);
            }
            sys.b[i * n + k] = f.value(i, k);
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        auto& row = sys.a[m * n + j];
        for (std::size_t i = 0; i < m; ++i) row[i * p + j] = f.space().weight(i);
        sys.b[m * n + j] = 1.0;
    }
    if (doubly) {
        for (std::size_t i = 0; i < m; ++i) {
            auto& row = sys.a[m * n + p + i];
            for (std::size_t j = 0; j < p; ++j) row[i * p + j] = g.space().weight(j);
            sys.b[m * n + p + i] = 1.0;
        }
    }
    return sys;
}

inline double certificate_margin(const SublinearFunctional& phi,
                                 const VectorStepFunction& f,
                                 const VectorStepFunction& g) {
    return sublinear_integral(phi, f) - sublinear_integral(phi, g);
}

// Shared decision core for matrix (doubly = false) and multivariate
// (doubly = true) majorization. On failure the Farkas row prices the value
// constraints into the pieces of a separating functional: plain max-linear
// pieces y_i / mu_i for the matrix case, and for the multivariate case the
// same pieces extended by the row-normalization multipliers u_i / mu_i,
// which live on rows lifted by a trailing constant 1.
inline MajorizationVerdict decide_transport(const VectorStepFunction& f,
                                            const VectorStepFunction& g, bool doubly,
                                            const MajorizeOptions& opts) {
    const std::size_t m = f.atom_count();
    const std::size_t p = g.atom_count();
    const std::size_t n = f.dimension();

    MajorizationVerdict verdict;
    if (same_space(f.space(), g.space(), opts.eps_base) && f.values() == g.values()) {
        verdict.holds = true;
        verdict.witness = identity_kernel(f.space());
        verdict.witness_doubly = true;
        return verdict;
    }

    FeasibilitySystem sys = transport_system(f, g, doubly);
    SolveOptions solve_opts;
    solve_opts.exact = opts.exact;
    FeasibilityOutcome outcome = solve_feasibility(sys, solve_opts);
    const double bscale = 1.0 + linf(sys.b);
    const double kernel_eps = opts.eps_base * bscale;

    if (outcome.feasible) {
        std::vector<std::vector<double>> table(m, std::vector<double>(p, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                table[i][j] = std::fmax(outcome.point[i * p + j], 0.0);
            }
        }
        verdict.holds = true;
        if (doubly) {
            verdict.witness = DoublyStochasticKernel(g.space(), f.space(),
                                                     std::move(table), kernel_eps);
            verdict.witness_doubly = true;
        } else {
            verdict.witness = StochasticKernel(g.space(), f.space(), std::move(table),
                                               kernel_eps);
        }
        auto image = apply(*verdict.witness, g);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                require(approx_eq(image.value(i, k), f.value(i, k), kernel_eps),
                        "transport witness failed to reproduce f");
            }
        }
        return verdict;
    }

    std::vector<std::vector<double>> pieces(m, std::vector<double>(doubly ? n + 1 : n));
    for (std::size_t i = 0; i < m; ++i) {
        double mu = f.space().weight(i);
        for (std::size_t k = 0; k < n; ++k) {
            pieces[i][k] = outcome.farkas[i * n + k] / mu;
        }
        if (doubly) pieces[i][n] = outcome.farkas[m * n + p + i] / mu;
    }
    SublinearFunctional phi(std::move(pieces));
    double margin = doubly
                        ? certificate_margin(phi, lift_constant(f), lift_constant(g))
                        : certificate_margin(phi, f, g);
    if (margin < opts.min_margin) {
        if (!opts.exact) {
            MajorizeOptions exact_opts = opts;
            exact_opts.exact = true;
            return decide_transport(f, g, doubly, exact_opts);
        }
        throw AmbiguousFeasibilityError(
            "separating certificate margin fell below the advertised floor "
            "even in exact arithmetic");
    }
    verdict.holds = false;
    verdict.certificate = std::move(phi);
    verdict.margin = margin;
    return verdict;
}

}  // namespace detail

// Does a stochastic kernel K exist with f = K g? Witness on success; on
// failure, a max-linear sublinear phi with
//     integral of phi(f) over mu  >  integral of phi(g) over nu
// by at least the reported margin.
inline MajorizationVerdict matrix_majorize(const VectorStepFunction& f,
                                           const VectorStepFunction& g,
                                           const MajorizeOptions& opts = {}) {
    require(f.dimension() == g.dimension(),
            "matrix_majorize requires equal dimensions");
    return detail::decide_transport(f, g, false, opts);
}

// Same question for a doubly stochastic kernel; requires equal total masses.
// The certificate lives one dimension higher and is evaluated on rows lifted
// by a trailing 1 (its slice at last coordinate 1 is a separating max-affine
// convex functional; plain positively homogeneous certificates cannot
// separate all doubly stochastic failures).
inline MajorizationVerdict multivariate_majorize(const VectorStepFunction& f,
                                                 const VectorStepFunction& g,
                                                 const MajorizeOptions& opts = {}) {
    require(f.dimension() == g.dimension(),
            "multivariate_majorize requires equal dimensions");
    require(approx_eq(f.space().total_mass(), g.space().total_mass(), opts.eps_base),
            "multivariate_majorize requires equal total masses");
    return detail::decide_transport(f, g, true, opts);
}

// Minimum of integral(phi(g)) - integral(phi(f)) over `trials` sampled
// nonnegative max-linear functionals plus any supplied extras. Nonnegative
// results are consistent with f majorized by g; a negative result exhibits a
// violated inequality. Extras let a caller replay a stored certificate.
inline double sublinear_sweep(const VectorStepFunction& f, const VectorStepFunction& g,
                              std::size_t trials, std::uint64_t seed,
                              const std::vector<SublinearFunctional>& extras = {}) {
    require(f.dimension() == g.dimension(), "sublinear_sweep requires equal dimensions");
    require(trials > 0 || !extras.empty(), "sublinear_sweep needs at least one functional");
    bool have = false;
    double worst = 0.0;
    auto consider = [&](const SublinearFunctional& phi) {
        double margin = sublinear_integral(phi, g) - sublinear_integral(phi, f);
        if (!have || margin < worst) worst = margin;
        have = true;
    };
    for (const auto& phi : extras) {
        require(phi.dimension() == f.dimension(), "extra functional has wrong dimension");
        consider(phi);
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        consider(sample_sublinear(rng, f.dimension(),
                                  1 + static_cast<std::size_t>(rng.below(4)), true));
    }
    return worst;
}

struct ReweightResult {
    DoublyStochasticKernel kernel;    // doubly stochastic between the scaled spaces
    VectorStepFunction f_scaled;      // f / h on (X, h d mu)
    VectorStepFunction g_scaled;      // g / k on (Y, k d nu)
};

// Given a stochastic witness S with f = S g and h = S k (h, k strictly
// positive scalars), conjugating by the multiplications with k and 1/h gives
// a doubly stochastic kernel between the reweighted spaces carrying g/k to
// f/h. This is the bridge from matrix majorization to multivariate
// majorization of the ratio functions.
inline ReweightResult reweight_to_multivariate(const VectorStepFunction& f,
                                               const VectorStepFunction& h,
                                               const VectorStepFunction& g,
                                               const VectorStepFunction& k,
                                               const StochasticKernel& s,
                                               double eps_base = kEpsBase) {
    require(h.dimension() == 1 && k.dimension() == 1,
            "reweight_to_multivariate needs scalar weight functions");
    require(f.dimension() == g.dimension(), "f and g must share a dimension");
    require(same_space(f.space(), h.space()) && same_space(g.space(), k.space()),
            "weight functions must live with their value functions");
    require(same_space(s.domain(), g.space()) && same_space(s.codomain(), f.space()),
            "witness kernel does not connect g's space to f's space");
    for (std::size_t j = 0; j < k.atom_count(); ++j) {
        require(k.value(j, 0) > 0.0, "k must be strictly positive");
    }
    for (std::size_t i = 0; i < h.atom_count(); ++i) {
        require(h.value(i, 0) > 0.0, "h must be strictly positive");
    }
    {
        auto sf = apply(s, g);
        auto sh = apply(s, k);
        for (std::size_t i = 0; i < f.atom_count(); ++i) {
            require(approx_eq(sh.value(i, 0), h.value(i, 0), eps_base),
                    "witness does not map k to h");
            for (std::size_t c = 0; c < f.dimension(); ++c) {
                require(approx_eq(sf.value(i, c), f.value(i, c), eps_base),
                        "witness does not map g to f");
            }
        }
    }

    std::vector<double> alpha_w(f.atom_count()), beta_w(g.atom_count());
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        alpha_w[i] = f.space().weight(i) * h.value(i, 0);
    }
    for (std::size_t j = 0; j < g.atom_count(); ++j) {
        beta_w[j] = g.space().weight(j) * k.value(j, 0);
    }
    FiniteMeasureSpace alpha(alpha_w), beta(beta_w);

    // Multiplication by k carries (Y, beta) back to (Y, nu); multiplication
    // by 1/h carries (X, mu) on to (X, alpha).
    auto t_k = multiplication_kernel(
        VectorStepFunction::scalar(beta, k.scalar_values()), g.space(), eps_base);
    std::vector<double> inv_h(h.atom_count());
    for (std::size_t i = 0; i < h.atom_count(); ++i) inv_h[i] = 1.0 / h.value(i, 0);
    auto t_inv_h = multiplication_kernel(
        VectorStepFunction::scalar(f.space(), inv_h), alpha, eps_base);

    auto composed = compose(t_inv_h, compose(s, t_k));
    // Row sums equal 1 because the chain fixes the constant function:
    // T_k turns 1 into k, S carries k to h, and T_{1/h} brings h back to 1.
    DoublyStochasticKernel d = as_doubly(composed, eps_base * 10.0);

    std::vector<std::vector<double>> fr(f.atom_count()), gr(g.atom_count());
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        fr[i].resize(f.dimension());
        for (std::size_t c = 0; c < f.dimension(); ++c) {
            fr[i][c] = f.value(i, c) / h.value(i, 0);
        }
    }
    for (std::size_t j = 0; j < g.atom_count(); ++j) {
        gr[j].resize(g.dimension());
        for (std::size_t c = 0; c < g.dimension(); ++c) {
            gr[j][c] = g.value(j, c) / k.value(j, 0);
        }
    }
    return ReweightResult{std::move(d), VectorStepFunction(alpha, std::move(fr)),
                          VectorStepFunction(beta, std::move(gr))};
}

class UnsupportedWeightsError : public std::runtime_error {
public:
    explicit UnsupportedWeightsError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ContinuousWitnessOptions {
    std::uint64_t max_denominator = 1'000'000;
    std::size_t max_grid = 2048;  // fine-grid atom cap; witness assembly is O(grid^2)
    double eps_base = kEpsBase;
};

// Constructive doubly stochastic witness for scalar majorization between
// spaces whose weights are commensurable rationals: both spaces refine to a
// common equal-weight grid, a witness is built there by two-coordinate
// averaging, and averaging it back over the grid blocks yields the kernel.
inline DoublyStochasticKernel continuous_majorize_witness(
    const VectorStepFunction& f, const VectorStepFunction& g,
    const ContinuousWitnessOptions& opts = {}) {
    require(f.dimension() == 1 && g.dimension() == 1,
            "continuous_majorize_witness requires scalar functions");
    require(continuous_majorize_check(f, g, opts.eps_base),
            "continuous_majorize_witness requires f majorized by g");

    auto rationalize = [&](const FiniteMeasureSpace& space) {
        std::vector<Rational> out;
        out.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) {
            double w = space.weight(i);
            auto r = approx_rational(w, opts.max_denominator,
                                     eps_scaled(w, opts.eps_base));
            if (!r || *r <= 0) {
                throw UnsupportedWeightsError(
                    "weights are not recognizable as rationals with denominator <= " +
                    std::to_string(opts.max_denominator));
            }
            out.push_back(*r);
        }
        return out;
    };
    std::vector<Rational> mu = rationalize(f.space());
    std::vector<Rational> nu = rationalize(g.space());

    Rational grid(0);
    for (const auto& w : mu) grid = rational_gcd(grid, w);
    for (const auto& w : nu) grid = rational_gcd(grid, w);

    auto counts = [&](const std::vector<Rational>& ws) {
        std::vector<std::size_t> out;
        out.reserve(ws.size());
        for (const auto& w : ws) {
            Rational q = w / grid;
            out.push_back(static_cast<std::size_t>(static_cast<BigInt>(numerator(q))));
        }
        return out;
    };
    std::vector<std::size_t> cf = counts(mu), cg = counts(nu);
    std::size_t total_f = std::accumulate(cf.begin(), cf.end(), std::size_t{0});
    std::size_t total_g = std::accumulate(cg.begin(), cg.end(), std::size_t{0});
    if (total_f != total_g) {
        throw UnsupportedWeightsError(
            "total masses disagree once weights are put on a common grid");
    }
    if (total_f > opts.max_grid) {
        throw UnsupportedWeightsError(
            "common grid needs " + std::to_string(total_f) + " cells, above the cap of " +
            std::to_string(opts.max_grid));
    }

    std::vector<double> xf, yf;
    xf.reserve(total_f);
    yf.reserve(total_f);
    for (std::size_t i = 0; i < cf.size(); ++i) {
        xf.insert(xf.end(), cf[i], f.value(i, 0));
    }
    for (std::size_t j = 0; j < cg.size(); ++j) {
        yf.insert(yf.end(), cg[j], g.value(j, 0));
    }
    DoublyStochasticKernel fine = hlp_witness(xf, yf, opts.eps_base);

    double cell = to_double(grid);
    std::vector<std::size_t> start_f(cf.size() + 1, 0), start_g(cg.size() + 1, 0);
    for (std::size_t i = 0; i < cf.size(); ++i) start_f[i + 1] = start_f[i] + cf[i];
    for (std::size_t j = 0; j < cg.size(); ++j) start_g[j + 1] = start_g[j] + cg[j];
    std::vector<std::vector<double>> table(f.atom_count(),
                                           std::vector<double>(g.atom_count(), 0.0));
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        for (std::size_t j = 0; j < g.atom_count(); ++j) {
            double acc = 0.0;
            for (std::size_t s = start_f[i]; s < start_f[i + 1]; ++s) {
                for (std::size_t t = start_g[j]; t < start_g[j + 1]; ++t) {
                    acc += fine.entry(s, t);
                }
            }
            table[i][j] = acc / (static_cast<double>(cf[i]) *
                                 static_cast<double>(cg[j]) * cell);
        }
    }
    DoublyStochasticKernel kernel(g.space(), f.space(), std::move(table),
                                  opts.eps_base * 10.0);
    auto image = apply(kernel, g);
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        require(approx_eq(image.value(i, 0), f.value(i, 0),
                          opts.eps_base * static_cast<double>(total_f)),
                "continuous witness failed to reproduce f");
    }
    return kernel;
}

struct ScalarEquivalenceReport {
    bool matrix_feasible = false;        // stochastic kernel carrying (g,k) to (f,h)
    bool hinge_inequalities = false;     // hinge-integral inequalities for f/h vs g/k
    bool multivariate_feasible = false;  // doubly stochastic kernel on the ratios
    bool agree = false;
};

// The three faces of scalar majorization with weight functions h and k
// (both strictly positive, equal weighted masses): a stochastic kernel moving
// the pair (g, k) to (f, h); the hinge inequalities between the ratio
// functions f/h on h d mu and g/k on k d nu; and a doubly stochastic kernel
// between those reweighted ratio functions. The three answers are expected
// to coincide, and `agree` records whether they did.
inline ScalarEquivalenceReport scalar_equivalence_report(const VectorStepFunction& f,
                                                         const VectorStepFunction& h,
                                                         const VectorStepFunction& g,
                                                         const VectorStepFunction& k,
                                                         const MajorizeOptions& opts = {}) {
    require(f.dimension() == 1 && g.dimension() == 1 && h.dimension() == 1 &&
                k.dimension() == 1,
            "scalar_equivalence_report requires scalar functions");
    require(same_space(f.space(), h.space()) && same_space(g.space(), k.space()),
            "weight functions must live with their value functions");
    for (std::size_t i = 0; i < h.atom_count(); ++i) {
        require(h.value(i, 0) > 0.0, "h must be strictly positive");
    }
    for (std::size_t j = 0; j < k.atom_count(); ++j) {
        require(k.value(j, 0) > 0.0, "k must be strictly positive");
    }
    double mass_h = dot(f.space().weights(), h.scalar_values());
    double mass_k = dot(g.space().weights(), k.scalar_values());
    require(approx_eq(mass_h, mass_k, opts.eps_base),
            "scalar_equivalence_report requires equal weighted masses");

    ScalarEquivalenceReport report;
    report.matrix_feasible = matrix_majorize(stack(f, h), stack(g, k), opts).holds;

    std::vector<double> rf(f.atom_count()), rg(g.atom_count());
    std::vector<double> aw(f.atom_count()), bw(g.atom_count());
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        rf[i] = f.value(i, 0) / h.value(i, 0);
        aw[i] = f.space().weight(i) * h.value(i, 0);
    }
    for (std::size_t j = 0; j < g.atom_count(); ++j) {
        rg[j] = g.value(j, 0) / k.value(j, 0);
        bw[j] = g.space().weight(j) * k.value(j, 0);
    }
    FiniteMeasureSpace alpha(aw), beta(bw);
    auto f_ratio = VectorStepFunction::scalar(alpha, rf);
    auto g_ratio = VectorStepFunction::scalar(beta, rg);

    // Hinge test: equal integrals plus, for every threshold t drawn from the
    // ratio values, integral of (f/h - t)+ bounded by integral of (g/k - t)+.
    // Hinges at the data values decide the full family.
    {
        double int_f = dot(aw, rf);
        double int_g = dot(bw, rg);
        double scale = std::fmax(std::fabs(int_f), std::fabs(int_g)) +
                       std::fmax(linf(rf), linf(rg));
        bool ok = approx_eq(int_f, int_g, opts.eps_base * (1.0 + scale));
        std::vector<double> thresholds = rf;
        thresholds.insert(thresholds.end(), rg.begin(), rg.end());
        for (double t : thresholds) {
            if (!ok) break;
            double lhs = 0.0, rhs = 0.0;
            for (std::size_t i = 0; i < rf.size(); ++i) {
                lhs += aw[i] * std::fmax(rf[i] - t, 0.0);
            }
            for (std::size_t j = 0; j < rg.size(); ++j) {
                rhs += bw[j] * std::fmax(rg[j] - t, 0.0);
            }
            ok = lhs <= rhs + eps_scaled(scale, opts.eps_base);
        }
        report.hinge_inequalities = ok;
    }

    report.multivariate_feasible = multivariate_majorize(f_ratio, g_ratio, opts).holds;
    report.agree = report.matrix_feasible == report.hinge_inequalities &&
                   report.hinge_inequalities == report.multivariate_feasible;
    return report;
}

}  // namespace majkit
