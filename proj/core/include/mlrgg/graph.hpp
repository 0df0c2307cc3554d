#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mlrgg/bits.hpp"
#include "mlrgg/geometry.hpp"

namespace mlrgg {

// Number of vertices, connection radius and layer count of a multilayered
// geometric graph. h is capped at 16 because reachability state grows with
// 2^h.
struct GraphParams {
    std::uint64_t n = 0;
    double r = 0.0;
    int h = 1;

    // Throws std::invalid_argument when any field is out of range.
    void validate() const;

    bool operator==(const GraphParams&) const = default;
};

// One point per (vertex, layer) pair, all inside the unit square. Layouts
// are vertex-major: positions of vertex v occupy slots [v*h, (v+1)*h).
class PositionAssignment {
public:
    PositionAssignment() = default;
    PositionAssignment(std::size_t n, std::size_t h);

    // Builds from per-vertex rows. Throws std::invalid_argument when rows
    // are ragged or a coordinate leaves the unit square.
    static PositionAssignment from_rows(
        const std::vector<std::vector<Point>>& rows);

    std::size_t vertex_count() const { return n_; }
    std::size_t layer_count() const { return h_; }

    Point& at(std::size_t v, std::size_t layer) {
        return data_[v * h_ + layer];
    }
    const Point& at(std::size_t v, std::size_t layer) const {
        return data_[v * h_ + layer];
    }

    // Positions of every vertex in one layer, in vertex order.
    std::vector<Point> layer_points(std::size_t layer) const;

    void validate() const;

    bool operator==(const PositionAssignment&) const = default;

private:
    std::size_t n_ = 0;
    std::size_t h_ = 0;
    std::vector<Point> data_;
};

// Undirected simple graph in compressed sparse rows. Neighbor lists are
// sorted ascending, symmetric and never contain the row vertex.
class LayerAdjacency {
public:
    LayerAdjacency() = default;

    // rows[v] must already be sorted; ownership of the contents moves in.
    static LayerAdjacency from_sorted_rows(
        std::vector<std::vector<std::uint32_t>>&& rows);

    // Edge list (u, v) with arbitrary order and orientation; duplicates are
    // collapsed. Throws std::invalid_argument on loops or ids >= n.
    static LayerAdjacency from_edges(
        std::uint64_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    // Adopts prebuilt CSR arrays; rows must already be sorted and symmetric.
    static LayerAdjacency from_csr(std::vector<std::uint64_t>&& offsets,
                                   std::vector<std::uint32_t>&& targets);

    std::size_t vertex_count() const {
        return offsets_.empty() ? 0 : offsets_.size() - 1;
    }

    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {targets_.data() + offsets_[v],
                targets_.data() + offsets_[v + 1]};
    }

    std::uint64_t edge_count() const { return targets_.size() / 2; }

    // Sorted (u, v) pairs with u < v; used for serialization.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

    bool operator==(const LayerAdjacency&) const = default;

private:
    std::vector<std::uint64_t> offsets_{0};
    std::vector<std::uint32_t> targets_;
};

// h layers of geometric graphs over one vertex set. Either carries the
// generating positions (and optionally the seed) or, for instances given by
// explicit edge lists, just the adjacency.
//
// When the adjacency also fits the dense budget (h * n^2 bits within
// kDenseRowBudgetBits and n <= 65536), per-vertex neighbor bit rows are
// materialized next to the CSR lists to speed up set-valued expansion.
// Immutable after construction; concurrent reads are safe.
class MultilayerGraph {
public:
    static constexpr std::uint64_t kDenseRowBudgetBits = 1ull << 31;

    // Samples h independent position layers from the seed and links every
    // pair at distance <= r within each layer.
    static MultilayerGraph generate_random(const GraphParams& params,
                                           std::uint64_t seed);

    // Deterministic variant: same edge rule applied to given positions.
    // The optional seed is carried as provenance metadata only.
    static MultilayerGraph from_assignment(
        PositionAssignment positions, double r,
        std::optional<std::uint64_t> seed = std::nullopt);

    // Instance defined directly by per-layer edge lists (no geometry).
    static MultilayerGraph from_layer_edges(
        std::uint64_t n,
        const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>&
            layer_edges);

    const GraphParams& params() const { return params_; }
    std::uint64_t vertex_count() const { return params_.n; }
    int layer_count() const { return params_.h; }
    double radius() const { return params_.r; }
    std::optional<std::uint64_t> seed() const { return seed_; }

    bool has_positions() const { return has_positions_; }
    const PositionAssignment& positions() const { return positions_; }

    const LayerAdjacency& layer(int k) const;

    // Vertices within the layer-k ball around v (closed, v excluded),
    // sorted ascending. Throws std::invalid_argument on bad k or v.
    std::span<const std::uint32_t> ball(int k, std::uint32_t v) const;

    bool has_dense_rows() const { return !rows_.empty(); }

    // Dense neighbor row; only valid when has_dense_rows().
    const BitVector& dense_row(int k, std::uint32_t v) const {
        return rows_[static_cast<std::size_t>(k)][v];
    }

    std::vector<std::uint64_t> layer_edge_counts() const;

    bool operator==(const MultilayerGraph& other) const;

private:
    MultilayerGraph() = default;
    void build_dense_rows();

    GraphParams params_;
    bool has_positions_ = false;
    PositionAssignment positions_;
    std::vector<LayerAdjacency> layers_;
    std::vector<std::vector<BitVector>> rows_;
    std::optional<std::uint64_t> seed_;
};

}  // namespace mlrgg
