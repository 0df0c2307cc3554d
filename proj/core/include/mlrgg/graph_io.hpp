#pragma once

#include <string>

#include "mlrgg/graph.hpp"

namespace mlrgg {

// JSON graph document, one of two shapes:
//
//   {"version":1,"n":..,"r":..,"h":..,"seed":..,          (seed optional)
//    "layer_edge_counts":[..],"positions":[[[x,y],..],..]}
//
//   {"version":1,"n":..,"h":..,
//    "layer_edge_counts":[..],"layer_edges":[[[u,v],..],..]}
//
// positions[v][k] is the layer-k point of vertex v. Floats carry 17
// significant digits, so serialize/deserialize round-trips exactly and the
// bytes are stable across platforms and locales.

std::string serialize(const MultilayerGraph& g);

// Parses and revalidates a document. Position documents rebuild the
// adjacency from (positions, r) and require the stored layer_edge_counts to
// match the rebuilt graph; edge documents cross-check the stored counts
// against the edge lists. Any malformed field or count mismatch throws
// FormatError.
MultilayerGraph deserialize(const std::string& text);

void save_graph(const MultilayerGraph& g, const std::string& path);
MultilayerGraph load_graph(const std::string& path);

// Formats a double with enough digits to round-trip (17 significant
// digits), independent of locale.
std::string format_double(double value);

}  // namespace mlrgg
