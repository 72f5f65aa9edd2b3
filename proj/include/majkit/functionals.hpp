// Max-linear sublinear functionals, max-affine convex functionals, the
// perspective transform connecting them, and the integral inequalities they
// satisfy against step functions (Jensen on normalized spaces, the sublinear
// form on arbitrary finite measures, phi-divergences).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "majkit/measure.hpp"
#include "majkit/numeric.hpp"
#include "majkit/random.hpp"

namespace majkit {

// psi(v) = max_k <c_k, v>. Positively homogeneous and subadditive by
// construction; nonnegative everywhere iff some piece is identically zero
// (a max of linear forms is nonnegative iff 0 is in the polytope they span,
// and including the zero piece is how samplers guarantee it).
class SublinearFunctional {
public:
    explicit SublinearFunctional(std::vector<std::vector<double>> pieces)
        : pieces_(std::move(pieces)) {
        require(!pieces_.empty(), "sublinear functional needs at least one piece");
        dimension_ = pieces_[0].size();
        require(dimension_ >= 1, "sublinear pieces must have positive dimension");
        for (const auto& c : pieces_) {
            require(c.size() == dimension_, "sublinear pieces must share one dimension");
            for (double v : c) require_finite(v, "sublinear coefficient");
        }
    }

    std::size_t dimension() const { return dimension_; }
    const std::vector<std::vector<double>>& pieces() const { return pieces_; }

    double evaluate(const std::vector<double>& v) const {
        require(v.size() == dimension_, "sublinear functional applied to wrong dimension");
        double best = dot(pieces_[0], v);
        for (std::size_t k = 1; k < pieces_.size(); ++k) {
            best = std::fmax(best, dot(pieces_[k], v));
        }
        return best;
    }

    bool has_zero_piece() const {
        for (const auto& c : pieces_) {
            bool zero = true;
            for (double v : c) zero = zero && v == 0.0;
            if (zero) return true;
        }
        return false;
    }

private:
    std::vector<std::vector<double>> pieces_;
    std::size_t dimension_ = 0;
};

struct AffinePiece {
    std::vector<double> slope;
    double intercept = 0.0;
};

// phi(v) = max_k (<a_k, v> + b_k), a finite max of affine maps.
class ConvexFunctional {
public:
    explicit ConvexFunctional(std::vector<AffinePiece> pieces)
        : pieces_(std::move(pieces)) {
        require(!pieces_.empty(), "convex functional needs at least one piece");
        dimension_ = pieces_[0].slope.size();
        require(dimension_ >= 1, "convex pieces must have positive dimension");
        for (const auto& p : pieces_) {
            require(p.slope.size() == dimension_, "convex pieces must share one dimension");
            for (double v : p.slope) require_finite(v, "convex slope");
            require_finite(p.intercept, "convex intercept");
        }
    }

    std::size_t dimension() const { return dimension_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }

    double evaluate(const std::vector<double>& v) const {
        require(v.size() == dimension_, "convex functional applied to wrong dimension");
        double best = dot(pieces_[0].slope, v) + pieces_[0].intercept;
        for (std::size_t k = 1; k < pieces_.size(); ++k) {
            best = std::fmax(best, dot(pieces_[k].slope, v) + pieces_[k].intercept);
        }
        return best;
    }

private:
    std::vector<AffinePiece> pieces_;
    std::size_t dimension_ = 0;
};

// Perspective of a max-affine phi: psi(v, x) = x * phi(v / x) for x > 0,
// extended by homogeneity. For max-affine inputs this is exact algebra, not
// a limit: each piece <a, v> + b turns into the linear piece <(a, b), (v, x)>.
inline SublinearFunctional perspective(const ConvexFunctional& phi) {
    std::vector<std::vector<double>> pieces;
    pieces.reserve(phi.pieces().size());
    for (const auto& p : phi.pieces()) {
        std::vector<double> c = p.slope;
        c.push_back(p.intercept);
        pieces.push_back(std::move(c));
    }
    return SublinearFunctional(std::move(pieces));
}

// Inverse direction of the perspective: restrict a sublinear psi on R^{n+1}
// to the slice where the last coordinate is 1.
inline ConvexFunctional affine_slice(const SublinearFunctional& psi) {
    require(psi.dimension() >= 2, "affine_slice needs dimension at least 2");
    std::vector<AffinePiece> pieces;
    pieces.reserve(psi.pieces().size());
    for (const auto& c : psi.pieces()) {
        AffinePiece p;
        p.slope.assign(c.begin(), c.end() - 1);
        p.intercept = c.back();
        pieces.push_back(std::move(p));
    }
    return ConvexFunctional(std::move(pieces));
}

// sum_i mu_i h_i phi(f_i / h_i) for a strictly positive scalar h on the same
// space as f.
inline double phi_divergence(const ConvexFunctional& phi, const VectorStepFunction& f,
                             const VectorStepFunction& h) {
    require(h.dimension() == 1, "phi_divergence needs a scalar weight function");
    require(same_space(f.space(), h.space()),
            "phi_divergence: f and h live on different spaces");
    require(phi.dimension() == f.dimension(),
            "phi_divergence: functional dimension must match f");
    double acc = 0.0;
    std::vector<double> ratio(f.dimension());
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        double hi = h.value(i, 0);
        require(hi > 0.0, "phi_divergence weight must be strictly positive");
        for (std::size_t k = 0; k < f.dimension(); ++k) ratio[k] = f.value(i, k) / hi;
        acc += f.space().weight(i) * hi * phi.evaluate(ratio);
    }
    return acc;
}

// sum_i mu_i psi(f_i).
inline double sublinear_integral(const SublinearFunctional& psi, const VectorStepFunction& f) {
    require(psi.dimension() == f.dimension(),
            "sublinear_integral: functional dimension must match f");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        acc += f.space().weight(i) * psi.evaluate(f.row(i));
    }
    return acc;
}

// Jensen for convex phi: returns (phi(integral of f), integral of phi(f)).
// The convex form is only valid on probability spaces, so any other total
// mass is rejected; the sublinear overload below has no such restriction.
inline std::pair<double, double> jensen_check(const ConvexFunctional& phi,
                                              const VectorStepFunction& f) {
    require(phi.dimension() == f.dimension(), "jensen_check: dimension mismatch");
    require(approx_eq(f.space().total_mass(), 1.0),
            "jensen_check with a convex functional needs a probability space");
    double rhs = 0.0;
    for (std::size_t i = 0; i < f.atom_count(); ++i) {
        rhs += f.space().weight(i) * phi.evaluate(f.row(i));
    }
    return {phi.evaluate(integral(f)), rhs};
}

// The sublinear counterpart needs no normalization: psi(integral of f) is at
// most the integral of psi(f) over any finite measure.
inline std::pair<double, double> jensen_check(const SublinearFunctional& psi,
                                              const VectorStepFunction& f) {
    require(psi.dimension() == f.dimension(), "jensen_check: dimension mismatch");
    return {psi.evaluate(integral(f)), sublinear_integral(psi, f)};
}

// Largest l1 piece norm; a Lipschitz constant for evaluate in the sup norm.
inline double lipschitz_bound(const SublinearFunctional& psi) {
    double best = 0.0;
    for (const auto& c : psi.pieces()) best = std::fmax(best, l1(c));
    return best;
}

// Draws a random max-linear functional from gaussian pieces. With
// nonnegative=true a zero piece is appended, which clamps the functional to
// be nonnegative everywhere.
inline SublinearFunctional sample_sublinear(Rng& rng, std::size_t dim,
                                            std::size_t piece_count, bool nonnegative) {
    require(dim >= 1, "sample_sublinear: dimension must be positive");
    require(piece_count >= 1, "sample_sublinear: need at least one piece");
    std::vector<std::vector<double>> pieces;
    pieces.reserve(piece_count + (nonnegative ? 1 : 0));
    for (std::size_t k = 0; k < piece_count; ++k) pieces.push_back(rng.gaussians(dim));
    if (nonnegative) pieces.push_back(std::vector<double>(dim, 0.0));
    return SublinearFunctional(std::move(pieces));
}

inline SublinearFunctional sample_sublinear(std::size_t dim, std::size_t piece_count,
                                            bool nonnegative, std::uint64_t seed) {
    Rng rng(seed);
    return sample_sublinear(rng, dim, piece_count, nonnegative);
}

}  // namespace majkit
