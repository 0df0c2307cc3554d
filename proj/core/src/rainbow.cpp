#include "mlrgg/rainbow.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "mlrgg/errors.hpp"

namespace mlrgg {

namespace {

void check_ids(const MultilayerGraph& g, std::uint32_t u) {
    if (u >= g.vertex_count())
        throw std::invalid_argument("vertex id " + std::to_string(u) +
                                    " out of range");
}

void check_budget(const MultilayerGraph& g, std::uint64_t budget_bits) {
    check_reachability_budget(g.vertex_count(), g.layer_count(), budget_bits);
}

// out |= set of layer-c neighbors of the members of src.
void expand_into(const MultilayerGraph& g, int c, const BitVector& src,
                 BitVector& out) {
    if (g.has_dense_rows()) {
        src.for_each_set(
            [&](std::size_t v) { out |= g.dense_row(c, static_cast<std::uint32_t>(v)); });
        return;
    }
    const LayerAdjacency& layer = g.layer(c);
    src.for_each_set([&](std::size_t v) {
        for (const std::uint32_t nb :
             layer.neighbors(static_cast<std::uint32_t>(v)))
            out.set(nb);
    });
}

// Masks of {0..h-1} grouped by subset size, ascending within each group.
std::vector<std::vector<std::uint32_t>> masks_by_size(int h) {
    std::vector<std::vector<std::uint32_t>> levels(
        static_cast<std::size_t>(h) + 1);
    const std::uint32_t full = (h >= 32) ? 0 : ((1u << h) - 1);
    for (std::uint32_t mask = 0; mask <= full; ++mask)
        levels[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    return levels;
}

// Reachability state per color subset. states[mask] holds the vertices with
// a rainbow walk from the source using exactly the colors of mask; subsets
// of size h are folded straight into reach and never stored. Construction
// stops early once reach covers every vertex, leaving later states empty.
struct ReachState {
    std::vector<BitVector> states;
    BitVector reach;
};

ReachState compute_reach(const MultilayerGraph& g, std::uint32_t u) {
    const std::size_t n = g.vertex_count();
    const int h = g.layer_count();
    ReachState rs;
    rs.states.assign(1ull << h, BitVector());
    rs.states[0] = BitVector(n);
    rs.states[0].set(u);
    rs.reach = rs.states[0];
    if (rs.reach.count() == n) return rs;

    const auto levels = masks_by_size(h);
    for (int size = 1; size < h; ++size) {
        for (const std::uint32_t mask : levels[static_cast<std::size_t>(size)]) {
            BitVector cur(n);
            for (int c = 0; c < h; ++c)
                if (mask & (1u << c))
                    expand_into(g, c, rs.states[mask ^ (1u << c)], cur);
            rs.reach |= cur;
            rs.states[mask] = std::move(cur);
            if (rs.reach.count() == n) return rs;
        }
    }
    const std::uint32_t full = (1u << h) - 1;
    for (int c = 0; c < h; ++c) {
        expand_into(g, c, rs.states[full ^ (1u << c)], rs.reach);
        if (rs.reach.count() == n) return rs;
    }
    return rs;
}

// Smallest member of prev that is a layer-c neighbor of v, or npos.
std::size_t smallest_adjacent(const MultilayerGraph& g, int c,
                              std::uint32_t v, const BitVector& prev) {
    if (g.has_dense_rows()) return g.dense_row(c, v).first_common(prev);
    for (const std::uint32_t nb : g.layer(c).neighbors(v))
        if (prev.test(nb)) return nb;
    return BitVector::npos;
}

std::vector<std::uint32_t> to_sorted_ids(const BitVector& bits) {
    std::vector<std::uint32_t> out;
    out.reserve(bits.count());
    bits.for_each_set(
        [&](std::size_t v) { out.push_back(static_cast<std::uint32_t>(v)); });
    return out;
}

// 64x64 bit-matrix transpose (mask-and-shift ladder, bit i of a[r] being
// the matrix entry at row r, column i).
void transpose_block(std::uint64_t a[64]) {
    std::uint64_t m = 0x00000000ffffffffull;
    for (int j = 32; j != 0; j >>= 1, m ^= m << j) {
        for (int k = 0; k < 64; k = (k + j + 1) & ~j) {
            const std::uint64_t t = ((a[k] >> j) ^ a[k + j]) & m;
            a[k] ^= t << j;
            a[k + j] ^= t;
        }
    }
}

// out[v] bit u = in[u] bit v, for n x n bit rows.
std::vector<BitVector> transpose_rows(const std::vector<BitVector>& in,
                                      std::size_t n) {
    std::vector<BitVector> out(n, BitVector(n));
    const std::size_t words = (n + 63) / 64;
    std::uint64_t block[64];
    for (std::size_t bi = 0; bi * 64 < n; ++bi) {
        const std::size_t rows = std::min<std::size_t>(64, n - bi * 64);
        for (std::size_t bj = 0; bj < words; ++bj) {
            for (std::size_t t = 0; t < rows; ++t)
                block[t] = in[bi * 64 + t].words()[bj];
            for (std::size_t t = rows; t < 64; ++t) block[t] = 0;
            transpose_block(block);
            const std::size_t cols = std::min<std::size_t>(64, n - bj * 64);
            for (std::size_t t = 0; t < cols; ++t)
                out[bj * 64 + t].words_mut()[bi] = block[t];
        }
    }
    return out;
}

// Two-layer all-sources verdict. With symmetric adjacency, the two
// mixed-color expansions for every source come from one boolean matrix
// product and its transpose, which is far cheaper than n independent
// subset sweeps.
RainbowReport connected_two_layers(const MultilayerGraph& g,
                                   ReportDetail detail) {
    const std::size_t n = g.vertex_count();
    RainbowReport report;
    report.connected = true;
    if (detail == ReportDetail::full)
        report.per_source_unconnected.assign(n, 0);

    std::vector<BitVector> product(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        BitVector row(n);
        expand_into(g, 0, g.dense_row(1, u), row);
        product[u] = std::move(row);
    }
    const std::vector<BitVector> transposed = transpose_rows(product, n);

    BitVector cover(n);
    for (std::uint32_t u = 0; u < n; ++u) {
        cover.clear();
        cover.set(u);
        cover |= g.dense_row(0, u);
        cover |= g.dense_row(1, u);
        cover |= product[u];
        cover |= transposed[u];
        const std::size_t reached = cover.count();
        if (reached == n) continue;
        report.connected = false;
        if (!report.first_failure) {
            std::size_t v = 0;
            while (cover.test(v)) ++v;
            report.first_failure = {u, static_cast<std::uint32_t>(v)};
        }
        if (detail == ReportDetail::verdict) {
            report.unconnected_pairs = n - reached;
            return report;
        }
        report.per_source_unconnected[u] = n - reached;
        report.unconnected_pairs += n - reached;
    }
    if (detail == ReportDetail::full) report.unconnected_pairs /= 2;
    return report;
}

}  // namespace

void check_reachability_budget(std::uint64_t n, int h,
                               std::uint64_t budget_bits) {
    const std::uint64_t state_bits = n << h;
    if (state_bits > budget_bits)
        throw BudgetError("reachability state needs n*2^h = " +
                          std::to_string(state_bits) +
                          " bits, which exceeds the budget of " +
                          std::to_string(budget_bits) +
                          " bits; raise the budget to proceed");
}

std::vector<std::uint32_t> rainbow_reachable(const MultilayerGraph& g,
                                             std::uint32_t u,
                                             std::uint64_t budget_bits) {
    check_ids(g, u);
    check_budget(g, budget_bits);
    return to_sorted_ids(compute_reach(g, u).reach);
}

RainbowReport is_rainbow_connected(const MultilayerGraph& g,
                                   ReportDetail detail,
                                   std::uint64_t budget_bits) {
    const std::size_t n = g.vertex_count();
    RainbowReport report;
    if (n < 2) {
        report.connected = true;
        if (detail == ReportDetail::full)
            report.per_source_unconnected.assign(n, 0);
        return report;
    }
    check_budget(g, budget_bits);

    if (g.layer_count() == 2 && g.has_dense_rows())
        return connected_two_layers(g, detail);

    report.connected = true;
    if (detail == ReportDetail::full)
        report.per_source_unconnected.assign(n, 0);
    for (std::uint32_t u = 0; u < n; ++u) {
        const ReachState rs = compute_reach(g, u);
        const std::size_t reached = rs.reach.count();
        if (reached == n) continue;
        report.connected = false;
        if (!report.first_failure) {
            std::size_t v = 0;
            while (rs.reach.test(v)) ++v;
            report.first_failure = {u, static_cast<std::uint32_t>(v)};
        }
        if (detail == ReportDetail::verdict) {
            report.unconnected_pairs = n - reached;
            return report;
        }
        report.per_source_unconnected[u] = n - reached;
        report.unconnected_pairs += n - reached;
    }
    if (detail == ReportDetail::full) report.unconnected_pairs /= 2;
    return report;
}

std::optional<WitnessPath> rainbow_witness(const MultilayerGraph& g,
                                           std::uint32_t u, std::uint32_t v,
                                           std::uint64_t budget_bits) {
    check_ids(g, u);
    check_ids(g, v);
    if (u == v)
        throw std::invalid_argument("witness endpoints must differ");
    check_budget(g, budget_bits);

    const ReachState rs = compute_reach(g, u);
    if (!rs.reach.test(v)) return std::nullopt;

    const int h = g.layer_count();
    const std::uint32_t full = (1u << h) - 1;
    const auto levels = masks_by_size(h);

    // First color subset containing v, ordered by size then numeric value.
    // Construction materializes states in exactly that order, so scanning
    // until the first empty state visits everything that was built.
    std::uint32_t chosen = full;
    bool found = false;
    for (int size = 1; size < h && !found; ++size) {
        for (const std::uint32_t mask : levels[static_cast<std::size_t>(size)]) {
            if (rs.states[mask].size() == 0) break;
            if (rs.states[mask].test(v)) {
                chosen = mask;
                found = true;
                break;
            }
        }
    }

    WitnessPath path;
    std::uint32_t cur = v;
    std::uint32_t mask = chosen;
    path.vertices.push_back(v);
    while (mask != 0) {
        bool stepped = false;
        for (int c = 0; c < h && !stepped; ++c) {
            if (!(mask & (1u << c))) continue;
            const BitVector& prev = rs.states[mask ^ (1u << c)];
            if (prev.size() == 0) continue;
            const std::size_t w = smallest_adjacent(g, c, cur, prev);
            if (w == BitVector::npos) continue;
            path.vertices.push_back(static_cast<std::uint32_t>(w));
            path.colors.push_back(c);
            cur = static_cast<std::uint32_t>(w);
            mask ^= 1u << c;
            stepped = true;
        }
        if (!stepped)
            throw std::logic_error(
                "witness reconstruction lost the trail; reachability state "
                "is inconsistent");
    }
    std::reverse(path.vertices.begin(), path.vertices.end());
    std::reverse(path.colors.begin(), path.colors.end());
    return path;
}

ExpansionProfile sigma_neighborhoods(const MultilayerGraph& g,
                                     std::uint32_t u,
                                     std::span<const int> sigma) {
    check_ids(g, u);
    const int h = g.layer_count();
    std::uint32_t seen_colors = 0;
    for (const int c : sigma) {
        if (c < 0 || c >= h)
            throw std::invalid_argument("color " + std::to_string(c) +
                                        " out of range");
        if (seen_colors & (1u << c))
            throw std::invalid_argument("color order repeats color " +
                                        std::to_string(c));
        seen_colors |= 1u << c;
    }

    ExpansionProfile profile;
    profile.source = u;
    profile.sigma.assign(sigma.begin(), sigma.end());
    profile.sizes.reserve(sigma.size() + 1);
    profile.sizes.push_back(1);

    BitVector visited(g.vertex_count());
    visited.set(u);
    std::vector<std::uint32_t> frontier{u}, next;
    for (const int c : sigma) {
        next.clear();
        const LayerAdjacency& layer = g.layer(c);
        for (const std::uint32_t w : frontier) {
            for (const std::uint32_t nb : layer.neighbors(w)) {
                if (visited.test(nb)) continue;
                visited.set(nb);
                next.push_back(nb);
            }
        }
        profile.sizes.push_back(next.size());
        frontier.swap(next);
    }
    return profile;
}

std::vector<std::uint32_t> brute_force_rainbow_reachable(
    const MultilayerGraph& g, std::uint32_t u) {
    if (g.vertex_count() > 12)
        throw std::invalid_argument(
            "exhaustive path enumeration is limited to 12 vertices");
    check_ids(g, u);
    const int h = g.layer_count();
    std::uint32_t reached = 0;

    // Depth-first over simple paths with pairwise-distinct colors.
    const auto dfs = [&](auto&& self, std::uint32_t cur,
                         std::uint32_t vertex_mask,
                         std::uint32_t color_mask) -> void {
        reached |= 1u << cur;
        for (int c = 0; c < h; ++c) {
            if (color_mask & (1u << c)) continue;
            for (const std::uint32_t nb : g.layer(c).neighbors(cur)) {
                if (vertex_mask & (1u << nb)) continue;
                self(self, nb, vertex_mask | (1u << nb),
                     color_mask | (1u << c));
            }
        }
    };
    dfs(dfs, u, 1u << u, 0);

    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (reached & (1u << v)) out.push_back(v);
    return out;
}

bool validate_witness(const MultilayerGraph& g, const WitnessPath& path,
                      std::uint32_t u, std::uint32_t v) {
    const auto& vs = path.vertices;
    const auto& cs = path.colors;
    if (vs.size() < 2 || cs.size() + 1 != vs.size()) return false;
    if (vs.front() != u || vs.back() != v) return false;
    if (cs.size() > static_cast<std::size_t>(g.layer_count())) return false;

    std::vector<std::uint32_t> sorted_vs(vs);
    std::sort(sorted_vs.begin(), sorted_vs.end());
    if (std::adjacent_find(sorted_vs.begin(), sorted_vs.end()) !=
        sorted_vs.end())
        return false;
    std::vector<int> sorted_cs(cs);
    std::sort(sorted_cs.begin(), sorted_cs.end());
    if (std::adjacent_find(sorted_cs.begin(), sorted_cs.end()) !=
        sorted_cs.end())
        return false;

    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i] < 0 || cs[i] >= g.layer_count()) return false;
        if (vs[i] >= g.vertex_count() || vs[i + 1] >= g.vertex_count())
            return false;
        const auto nbrs = g.layer(cs[i]).neighbors(vs[i]);
        if (!std::binary_search(nbrs.begin(), nbrs.end(), vs[i + 1]))
            return false;
    }
    return true;
}

}  // namespace mlrgg
