#pragma once

#include <vector>

#include "zarlab/scalar.hpp"

namespace zarlab {

/// (d_1, ..., d_r)-grid: r finite blocks of points, block i of dimension
/// d_i. Points within a block are pairwise distinct.
struct Grid {
    std::vector<int> block_dims;
    std::vector<std::vector<Point>> blocks;

    int r() const { return int(block_dims.size()); }
    int ambient() const {
        int n = 0;
        for (int d : block_dims) n += d;
        return n;
    }
    size_t n_max() const {
        size_t m = 0;
        for (auto& b : blocks) m = std::max(m, b.size());
        return m;
    }
    bool any_empty() const {
        for (auto& b : blocks)
            if (b.empty()) return true;
        return false;
    }
    size_t tuple_count() const {
        size_t t = 1;
        for (auto& b : blocks) t *= b.size();
        return t;
    }
    Point tuple_at(const std::vector<size_t>& choice) const;
};

/// delta(B): sum over all (r-1)-element subsets of blocks of the
/// product of their sizes.
Int grid_delta(const Grid& b);

struct BlockedSet {
    std::vector<int> block_dims;
    std::vector<Point> points;  // full n-dim points

    Point block_of(size_t point_idx, int block) const;
};

/// Same grid-configuration: a bijection preserving per-block equality
/// patterns exists.
bool config_equiv(const BlockedSet& a, const BlockedSet& b);

/// A embeddable into the grid B preserving configuration (A <= B).
bool config_embeddable(const BlockedSet& a, const Grid& b);

/// Gen(D): the grid of per-block projections of a point set.
Grid gen_grid(const BlockedSet& d);

enum class DistantMode { MaxNorm, ZDistant };

/// Every block pairwise m-distant (|x-y| > m in max-norm) or Z-distant
/// (x - y not in Z^d).
bool distant_check(const Grid& b, const Scalar& m, DistantMode mode = DistantMode::MaxNorm);

/// Iterate all tuples of a grid.
template <typename F>
void for_each_tuple(const Grid& g, F&& f) {
    if (g.any_empty()) return;
    std::vector<size_t> choice(g.r(), 0);
    while (true) {
        f(g.tuple_at(choice));
        int i = g.r() - 1;
        while (i >= 0) {
            if (++choice[i] < g.blocks[i].size()) break;
            choice[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
}

}  // namespace zarlab
