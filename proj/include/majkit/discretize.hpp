// Partitions of a finite atomic space, conditional-expectation averaging over
// a partition, and the level-set discretization scheme that approximates a
// stochastic kernel by partition averages of its images.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "majkit/kernels.hpp"
#include "majkit/measure.hpp"
#include "majkit/numeric.hpp"

namespace majkit {

class Partition {
public:
    Partition(FiniteMeasureSpace space, std::vector<std::vector<std::size_t>> blocks)
        : space_(std::move(space)), blocks_(std::move(blocks)) {
        require(!blocks_.empty(), "partition needs at least one block");
        block_of_.assign(space_.size(), blocks_.size());
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            require(!blocks_[b].empty(), "partition blocks must be nonempty");
            for (std::size_t atom : blocks_[b]) {
                require(atom < space_.size(), "partition refers to a missing atom");
                require(block_of_[atom] == blocks_.size(),
                        "partition blocks must be disjoint");
                block_of_[atom] = b;
            }
        }
        for (std::size_t atom = 0; atom < space_.size(); ++atom) {
            require(block_of_[atom] != blocks_.size(), "partition must cover every atom");
        }
        block_mass_.resize(blocks_.size());
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            double m = 0.0;
            for (std::size_t atom : blocks_[b]) m += space_.weight(atom);
            block_mass_[b] = m;
        }
    }

    const FiniteMeasureSpace& space() const { return space_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    std::size_t block_of(std::size_t atom) const { return block_of_.at(atom); }
    double block_mass(std::size_t b) const { return block_mass_.at(b); }

private:
    FiniteMeasureSpace space_;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> block_of_;
    std::vector<double> block_mass_;
};

inline Partition singleton_partition(const FiniteMeasureSpace& space) {
    std::vector<std::vector<std::size_t>> blocks(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) blocks[i] = {i};
    return Partition(space, std::move(blocks));
}

// Replaces f on each block by the block's measure-weighted mean.
inline VectorStepFunction partition_average(const Partition& p, const VectorStepFunction& f) {
    require(same_space(p.space(), f.space()),
            "partition_average: partition and function live on different spaces");
    std::size_t n = f.dimension();
    std::vector<std::vector<double>> means(p.block_count(), std::vector<double>(n, 0.0));
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        for (std::size_t atom : p.blocks()[b]) {
            double w = f.space().weight(atom);
            for (std::size_t k = 0; k < n; ++k) means[b][k] += w * f.value(atom, k);
        }
        for (std::size_t k = 0; k < n; ++k) means[b][k] /= p.block_mass(b);
    }
    std::vector<std::vector<double>> rows(f.atom_count());
    for (std::size_t atom = 0; atom < f.atom_count(); ++atom) {
        rows[atom] = means[p.block_of(atom)];
    }
    return VectorStepFunction(f.space(), std::move(rows));
}

// The averaging operator of a partition as a kernel: constant 1/mass(B) on
// each diagonal block B, zero across blocks. Doubly stochastic, and
// apply(mp_kernel(P), f) == partition_average(P, f).
inline DoublyStochasticKernel mp_kernel(const Partition& p) {
    std::size_t n = p.space().size();
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    for (std::size_t b = 0; b < p.block_count(); ++b) {
        double inv = 1.0 / p.block_mass(b);
        for (std::size_t i : p.blocks()[b]) {
            for (std::size_t j : p.blocks()[b]) t[i][j] = inv;
        }
    }
    return DoublyStochasticKernel(p.space(), p.space(), std::move(t));
}

// Partition of the space by value bins of a scalar function at resolution n:
// one unbounded bin below -n, then 2n^2 half-open bins of width 1/n covering
// [-n, n), then one unbounded bin from n upward. Empty bins are dropped;
// blocks are ordered by ascending bin.
inline Partition level_set_partition(const VectorStepFunction& f, std::size_t n) {
    require(f.dimension() == 1, "level_set_partition requires a scalar function");
    require(n >= 1, "level_set_partition requires resolution >= 1");
    double nd = static_cast<double>(n);
    std::size_t top = 2 * n * n + 1;
    std::map<std::size_t, std::vector<std::size_t>> bins;
    for (std::size_t atom = 0; atom < f.atom_count(); ++atom) {
        double v = f.value(atom, 0);
        std::size_t bin;
        if (v < -nd) {
            bin = 0;
        } else if (v >= nd) {
            bin = top;
        } else {
            double idx = std::floor((v + nd) * nd);
            if (idx < 0.0) idx = 0.0;
            double max_idx = 2.0 * nd * nd - 1.0;
            if (idx > max_idx) idx = max_idx;
            bin = static_cast<std::size_t>(idx) + 1;
        }
        bins[bin].push_back(atom);
    }
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(bins.size());
    for (auto& [bin, atoms] : bins) blocks.push_back(std::move(atoms));
    return Partition(f.space(), std::move(blocks));
}

// Common refinement: blocks are the nonempty pairwise intersections, ordered
// by (block of p, block of q).
inline Partition intersection_partition(const Partition& p, const Partition& q) {
    require(same_space(p.space(), q.space()),
            "intersection_partition: partitions live on different spaces");
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> cells;
    for (std::size_t atom = 0; atom < p.space().size(); ++atom) {
        cells[{p.block_of(atom), q.block_of(atom)}].push_back(atom);
    }
    std::vector<std::vector<std::size_t>> blocks;
    blocks.reserve(cells.size());
    for (auto& [key, atoms] : cells) blocks.push_back(std::move(atoms));
    return Partition(p.space(), std::move(blocks));
}

struct ApproximationRow {
    std::size_t level = 0;
    std::size_t basis_index = 0;
    double l1_error = 0.0;
};

// Approximates the action of a kernel on a basis of functions by partition
// averages of increasing resolution. At level n the codomain is partitioned
// by the level sets (resolution n) of every component of every image K b,
// intersected with all coarser levels so that the partitions refine; the
// reported error is | M_P (K b) - K b | in the integral l1 sense. As long as
// the image values stay inside [-n, n], each block sits inside one value bin
// of width 1/n and the error is at most mass / n per component.
inline std::vector<ApproximationRow> approximate_operator(
    const StochasticKernel& k, const std::vector<VectorStepFunction>& basis,
    std::size_t depth) {
    require(!basis.empty(), "approximate_operator needs at least one basis function");
    require(depth >= 1, "approximate_operator needs depth >= 1");
    std::vector<VectorStepFunction> images;
    images.reserve(basis.size());
    for (const auto& b : basis) images.push_back(apply(k, b));

    std::vector<ApproximationRow> rows;
    Partition current = Partition(k.codomain(),
                                  {[&] {
                                      std::vector<std::size_t> all(k.codomain().size());
                                      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
                                      return all;
                                  }()});
    for (std::size_t level = 1; level <= depth; ++level) {
        for (const auto& img : images) {
            for (std::size_t comp = 0; comp < img.dimension(); ++comp) {
                current = intersection_partition(
                    current, level_set_partition(component(img, comp), level));
            }
        }
        DoublyStochasticKernel avg = mp_kernel(current);
        for (std::size_t bi = 0; bi < images.size(); ++bi) {
            double err = l1_norm(apply(avg, images[bi]) - images[bi]);
            rows.push_back({level, bi, err});
        }
    }
    return rows;
}

}  // namespace majkit
