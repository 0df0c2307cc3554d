#pragma once

#include "mlrgg/graph.hpp"

namespace mlrgg {

// Bundled 2-layer instance on 6 vertices, given by explicit edge lists. It
// is connected in every single layer yet not rainbow connected: vertices 0
// and 5 admit no path of pairwise-distinct layer colors. Useful as a
// regression anchor because every interesting quantity can be checked by
// hand.
MultilayerGraph bundled_fixture();

}  // namespace mlrgg
