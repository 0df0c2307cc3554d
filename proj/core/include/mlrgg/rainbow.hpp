#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mlrgg/graph.hpp"

namespace mlrgg {

// Default ceiling on n * 2^h, the bit count of the per-source reachability
// state. Calls that would exceed the active budget throw BudgetError before
// any heavy allocation.
constexpr std::uint64_t kDefaultDpBudgetBits = 1ull << 33;

// Throws BudgetError when n * 2^h exceeds budget_bits. Exposed so batch
// drivers can refuse a whole run before its first trial.
void check_reachability_budget(std::uint64_t n, int h,
                               std::uint64_t budget_bits);

// A path whose edges use pairwise-distinct layers: vertices[i] and
// vertices[i+1] are adjacent in layer colors[i]. Vertex and color lists are
// duplicate-free and colors has exactly one entry fewer than vertices.
struct WitnessPath {
    std::vector<std::uint32_t> vertices;
    std::vector<int> colors;

    bool operator==(const WitnessPath&) const = default;
};

enum class ReportDetail {
    verdict,  // stop at the first source that cannot reach everyone
    full,     // scan every source; exact pair counts
};

struct RainbowReport {
    bool connected = false;
    // In full detail: the exact number of unordered vertex pairs with no
    // rainbow path. In verdict detail: the count contributed by the first
    // failing source (a lower bound on the full figure, 0 when connected).
    std::uint64_t unconnected_pairs = 0;
    // Per-source counts of unreached partners; empty in verdict detail.
    std::vector<std::uint64_t> per_source_unconnected;
    // Lexicographically first unconnected pair (u < v), when one exists.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> first_failure;
};

// Per-step frontier sizes of the color-ordered expansion from a source:
// sizes[0] = 1 for {source}; sizes[l] counts vertices first reached at step
// l, where step l follows edges of layer sigma[l-1] out of the step-(l-1)
// frontier. Vertices seen at earlier steps never recount, so the frontiers
// partition the reached set.
struct ExpansionProfile {
    std::uint32_t source = 0;
    std::vector<int> sigma;
    std::vector<std::uint64_t> sizes;
};

// Every vertex reachable from u along some rainbow path (u included),
// sorted ascending. Walks and simple paths reach the same set: any
// color-distinct walk shortcuts to a color-distinct path, so the dynamic
// program may expand whole reachable sets per color subset. States are
// visited in order of subset size; the full subset is never materialized,
// membership there is decided per missing vertex from the size-(h-1)
// states.
std::vector<std::uint32_t> rainbow_reachable(
    const MultilayerGraph& g, std::uint32_t u,
    std::uint64_t budget_bits = kDefaultDpBudgetBits);

// Whether every ordered pair admits a rainbow path. Sources are scanned in
// ascending id order; see RainbowReport for what each detail level fills
// in. Graphs with fewer than two vertices are vacuously connected.
RainbowReport is_rainbow_connected(
    const MultilayerGraph& g, ReportDetail detail = ReportDetail::verdict,
    std::uint64_t budget_bits = kDefaultDpBudgetBits);

// A concrete rainbow path from u to v, or nullopt when none exists. Ties
// break deterministically: shortest length first, then the numerically
// smallest color subset (colors encoded as bits), then smallest predecessor
// ids, chosen backwards from v with the smallest usable color first.
// Throws std::invalid_argument when u == v or an id is out of range.
std::optional<WitnessPath> rainbow_witness(
    const MultilayerGraph& g, std::uint32_t u, std::uint32_t v,
    std::uint64_t budget_bits = kDefaultDpBudgetBits);

// Frontier profile of the expansion that follows the color order sigma
// (a permutation of 0..h-1; prefixes are allowed and expand only
// sigma.size() steps).
ExpansionProfile sigma_neighborhoods(const MultilayerGraph& g,
                                     std::uint32_t u,
                                     std::span<const int> sigma);

// Exhaustive simple-path enumeration; the independent check for the dynamic
// program. Refuses instances with more than 12 vertices.
std::vector<std::uint32_t> brute_force_rainbow_reachable(
    const MultilayerGraph& g, std::uint32_t u);

// True when path is a valid rainbow path from u to v in g.
bool validate_witness(const MultilayerGraph& g, const WitnessPath& path,
                      std::uint32_t u, std::uint32_t v);

}  // namespace mlrgg
