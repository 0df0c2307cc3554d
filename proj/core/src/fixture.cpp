#include "mlrgg/fixture.hpp"

namespace mlrgg {

MultilayerGraph bundled_fixture() {
    const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>
        layer_edges = {
            {{0, 1}, {0, 4}, {1, 2}, {1, 4}, {2, 3}, {4, 5}},
            {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}, {3, 5}},
        };
    return MultilayerGraph::from_layer_edges(6, layer_edges);
}

}  // namespace mlrgg
