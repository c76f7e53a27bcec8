#include "zarlab/grid.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "zarlab/errors.hpp"

namespace zarlab {

Point Grid::tuple_at(const std::vector<size_t>& choice) const {
    Point p;
    p.reserve(ambient());
    for (int i = 0; i < r(); ++i)
        for (auto& c : blocks[i][choice[i]]) p.push_back(c);
    return p;
}

Int grid_delta(const Grid& b) {
    Int total = 0;
    for (int skip = 0; skip < b.r(); ++skip) {
        Int prod = 1;
        for (int i = 0; i < b.r(); ++i)
            if (i != skip) prod *= Int(b.blocks[i].size());
        total += prod;
    }
    return total;
}

Point BlockedSet::block_of(size_t idx, int blk) const {
    int off = 0;
    for (int i = 0; i < blk; ++i) off += block_dims[i];
    Point p(points[idx].begin() + off, points[idx].begin() + off + block_dims[blk]);
    return p;
}

namespace {

// Per-point label tuple: index of its block value among the distinct
// values of that block, in first-occurrence order.
std::vector<std::vector<int>> label_matrix(const BlockedSet& s) {
    int r = int(s.block_dims.size());
    std::vector<std::vector<int>> lab(s.points.size(), std::vector<int>(r));
    for (int b = 0; b < r; ++b) {
        std::vector<Point> seen;
        for (size_t i = 0; i < s.points.size(); ++i) {
            Point v = s.block_of(i, b);
            int id = -1;
            for (size_t j = 0; j < seen.size(); ++j)
                if (seen[j] == v) {
                    id = int(j);
                    break;
                }
            if (id < 0) {
                seen.push_back(v);
                id = int(seen.size()) - 1;
            }
            lab[i][b] = id;
        }
    }
    return lab;
}

}  // namespace

bool config_equiv(const BlockedSet& a, const BlockedSet& b) {
    if (a.block_dims != b.block_dims) throw err("SizeMismatch", "blocks differ");
    if (a.points.size() != b.points.size()) throw err("SizeMismatch", "set sizes differ");
    auto la = label_matrix(a);
    auto lb = label_matrix(b);
    size_t m = a.points.size();
    int r = int(a.block_dims.size());
    // Backtracking bijection with per-block value-label matching.
    std::vector<int> match(m, -1);
    std::vector<bool> used(m, false);
    std::vector<std::map<int, int>> fwd(r), bwd(r);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == m) return true;
        for (size_t j = 0; j < m; ++j) {
            if (used[j]) continue;
            bool ok = true;
            std::vector<std::pair<int, std::pair<int, int>>> added;
            for (int blk = 0; blk < r && ok; ++blk) {
                int va = la[i][blk], vb = lb[j][blk];
                auto itf = fwd[blk].find(va);
                auto itb = bwd[blk].find(vb);
                if (itf == fwd[blk].end() && itb == bwd[blk].end()) {
                    fwd[blk][va] = vb;
                    bwd[blk][vb] = va;
                    added.push_back({blk, {va, vb}});
                } else if (itf == fwd[blk].end() || itb == bwd[blk].end() || itf->second != vb) {
                    ok = false;
                }
            }
            if (ok) {
                used[j] = true;
                if (rec(i + 1)) return true;
                used[j] = false;
            }
            for (auto& [blk, p] : added) {
                fwd[blk].erase(p.first);
                bwd[blk].erase(p.second);
            }
        }
        return false;
    };
    return rec(0);
}

bool config_embeddable(const BlockedSet& a, const Grid& b) {
    if (a.block_dims != b.block_dims) return false;
    // Inside a full product, a pattern embeds iff each block offers
    // enough distinct values.
    auto la = label_matrix(a);
    int r = int(a.block_dims.size());
    for (int blk = 0; blk < r; ++blk) {
        int distinct = 0;
        for (auto& row : la) distinct = std::max(distinct, row[blk] + 1);
        if (size_t(distinct) > b.blocks[blk].size()) return false;
    }
    return true;
}

Grid gen_grid(const BlockedSet& d) {
    Grid g;
    g.block_dims = d.block_dims;
    g.blocks.resize(d.block_dims.size());
    for (int blk = 0; blk < int(d.block_dims.size()); ++blk) {
        std::vector<Point> vals;
        for (size_t i = 0; i < d.points.size(); ++i) {
            Point v = d.block_of(i, blk);
            bool seen = false;
            for (auto& w : vals)
                if (w == v) {
                    seen = true;
                    break;
                }
            if (!seen) vals.push_back(std::move(v));
        }
        std::sort(vals.begin(), vals.end(), [](const Point& x, const Point& y) {
            for (size_t i = 0; i < x.size(); ++i) {
                if (x[i] < y[i]) return true;
                if (y[i] < x[i]) return false;
            }
            return false;
        });
        g.blocks[blk] = std::move(vals);
    }
    return g;
}

bool distant_check(const Grid& b, const Scalar& m, DistantMode mode) {
    for (auto& block : b.blocks)
        for (size_t i = 0; i < block.size(); ++i)
            for (size_t j = i + 1; j < block.size(); ++j) {
                Point d = block[i] - block[j];
                if (mode == DistantMode::MaxNorm) {
                    if (!(max_norm(d) > m)) return false;
                } else {
                    if (point_integral(d)) return false;
                }
            }
    return true;
}

}  // namespace zarlab
