#include "mlrgg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlrgg {

void GraphParams::validate() const {
    if (h < 1 || h > 16)
        throw std::invalid_argument("layer count must lie in [1, 16], got " +
                                    std::to_string(h));
    if (!(r >= 0.0) || r > kMaxRadius)
        throw std::invalid_argument("radius must lie in [0, sqrt(2)], got " +
                                    std::to_string(r));
    if (n > 0xffffffffull)
        throw std::invalid_argument("vertex count exceeds the id width");
}

PositionAssignment::PositionAssignment(std::size_t n, std::size_t h)
    : n_(n), h_(h), data_(n * h) {}

PositionAssignment PositionAssignment::from_rows(
    const std::vector<std::vector<Point>>& rows) {
    PositionAssignment out;
    out.n_ = rows.size();
    out.h_ = rows.empty() ? 0 : rows.front().size();
    out.data_.reserve(out.n_ * out.h_);
    for (const auto& row : rows) {
        if (row.size() != out.h_)
            throw std::invalid_argument(
                "every vertex needs one position per layer");
        out.data_.insert(out.data_.end(), row.begin(), row.end());
    }
    out.validate();
    return out;
}

void PositionAssignment::validate() const {
    for (const Point& p : data_)
        if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0))
            throw std::invalid_argument("position outside the unit square");
}

std::vector<Point> PositionAssignment::layer_points(std::size_t layer) const {
    std::vector<Point> pts(n_);
    for (std::size_t v = 0; v < n_; ++v) pts[v] = data_[v * h_ + layer];
    return pts;
}

LayerAdjacency LayerAdjacency::from_sorted_rows(
    std::vector<std::vector<std::uint32_t>>&& rows) {
    LayerAdjacency adj;
    adj.offsets_.resize(rows.size() + 1);
    std::uint64_t total = 0;
    for (std::size_t v = 0; v < rows.size(); ++v) {
        adj.offsets_[v] = total;
        total += rows[v].size();
    }
    adj.offsets_[rows.size()] = total;
    adj.targets_.reserve(total);
    for (auto& row : rows) {
        adj.targets_.insert(adj.targets_.end(), row.begin(), row.end());
        row.clear();
        row.shrink_to_fit();
    }
    return adj;
}

LayerAdjacency LayerAdjacency::from_edges(
    std::uint64_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::vector<std::uint32_t>> rows(n);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("loops are not allowed");
        rows[u].push_back(v);
        rows[v].push_back(u);
    }
    for (auto& row : rows) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return from_sorted_rows(std::move(rows));
}

LayerAdjacency LayerAdjacency::from_csr(std::vector<std::uint64_t>&& offsets,
                                        std::vector<std::uint32_t>&& targets) {
    if (offsets.empty() || offsets.front() != 0 ||
        offsets.back() != targets.size())
        throw std::invalid_argument("inconsistent adjacency extents");
    LayerAdjacency adj;
    adj.offsets_ = std::move(offsets);
    adj.targets_ = std::move(targets);
    return adj;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> LayerAdjacency::edges()
    const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(edge_count());
    for (std::uint32_t u = 0; u < vertex_count(); ++u)
        for (const std::uint32_t v : neighbors(u))
            if (v > u) out.emplace_back(u, v);
    return out;
}

namespace {

// One layer of adjacency from that layer's points. Two passes over the grid:
// degrees first for exact CSR extents, then a fill that visits sources in
// ascending order so every row comes out sorted without a sort.
LayerAdjacency build_layer(std::vector<Point>&& pts, double r) {
    const std::size_t n = pts.size();
    GridIndex index(std::move(pts), r);
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v)
        offsets[v + 1] =
            offsets[v] + index.count_within(index.points()[v], v);
    std::vector<std::uint32_t> targets(offsets[n]);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    std::vector<std::uint32_t> found;
    for (std::size_t u = 0; u < n; ++u) {
        found.clear();
        index.gather(index.points()[u], u, found);
        for (const std::uint32_t v : found)
            targets[cursor[v]++] = static_cast<std::uint32_t>(u);
    }
    return LayerAdjacency::from_csr(std::move(offsets), std::move(targets));
}

}  // namespace

MultilayerGraph MultilayerGraph::generate_random(const GraphParams& params,
                                                 std::uint64_t seed) {
    params.validate();
    const RngStream root(seed);
    PositionAssignment positions(params.n, static_cast<std::size_t>(params.h));
    for (int k = 0; k < params.h; ++k) {
        RngStream layer_stream =
            root.substream(static_cast<std::uint64_t>(k));
        const auto pts = sample_positions(params.n, layer_stream);
        for (std::uint64_t v = 0; v < params.n; ++v)
            positions.at(v, static_cast<std::size_t>(k)) = pts[v];
    }
    return from_assignment(std::move(positions), params.r, seed);
}

MultilayerGraph MultilayerGraph::from_assignment(
    PositionAssignment positions, double r,
    std::optional<std::uint64_t> seed) {
    GraphParams params{positions.vertex_count(), r,
                       static_cast<int>(positions.layer_count())};
    params.validate();
    positions.validate();
    MultilayerGraph g;
    g.params_ = params;
    g.has_positions_ = true;
    g.layers_.reserve(static_cast<std::size_t>(params.h));
    for (int k = 0; k < params.h; ++k)
        g.layers_.push_back(
            build_layer(positions.layer_points(static_cast<std::size_t>(k)), r));
    g.positions_ = std::move(positions);
    g.seed_ = seed;
    g.build_dense_rows();
    return g;
}

MultilayerGraph MultilayerGraph::from_layer_edges(
    std::uint64_t n,
    const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>&
        layer_edges) {
    GraphParams params{n, 0.0, static_cast<int>(layer_edges.size())};
    params.validate();
    MultilayerGraph g;
    g.params_ = params;
    g.layers_.reserve(layer_edges.size());
    for (const auto& edges : layer_edges)
        g.layers_.push_back(LayerAdjacency::from_edges(n, edges));
    g.build_dense_rows();
    return g;
}

const LayerAdjacency& MultilayerGraph::layer(int k) const {
    if (k < 0 || k >= params_.h)
        throw std::invalid_argument("layer index out of range");
    return layers_[static_cast<std::size_t>(k)];
}

std::span<const std::uint32_t> MultilayerGraph::ball(int k,
                                                     std::uint32_t v) const {
    if (v >= params_.n)
        throw std::invalid_argument("vertex id out of range");
    return layer(k).neighbors(v);
}

std::vector<std::uint64_t> MultilayerGraph::layer_edge_counts() const {
    std::vector<std::uint64_t> counts;
    counts.reserve(layers_.size());
    for (const auto& layer : layers_) counts.push_back(layer.edge_count());
    return counts;
}

bool MultilayerGraph::operator==(const MultilayerGraph& other) const {
    return params_ == other.params_ &&
           has_positions_ == other.has_positions_ &&
           positions_ == other.positions_ && layers_ == other.layers_ &&
           seed_ == other.seed_;
}

void MultilayerGraph::build_dense_rows() {
    const std::uint64_t n = params_.n;
    if (n == 0 || n > 65536) return;
    const std::uint64_t bits =
        n * n * static_cast<std::uint64_t>(params_.h);
    if (bits > kDenseRowBudgetBits) return;
    rows_.resize(layers_.size());
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        rows_[k].assign(n, BitVector(n));
        for (std::uint32_t v = 0; v < n; ++v)
            for (const std::uint32_t u : layers_[k].neighbors(v))
                rows_[k][v].set(u);
    }
}

}  // namespace mlrgg
