#include "mlrgg/graph_io.hpp"

#include <charconv>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlrgg/errors.hpp"
#include "mlrgg/io.hpp"

namespace mlrgg {

using nlohmann::json;

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void append_u64(std::string& out, std::uint64_t value) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, res.ptr);
}

std::uint64_t require_u64(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_number_unsigned())
        throw FormatError(std::string("graph document needs an unsigned \"") +
                          field + "\" field");
    return doc[field].get<std::uint64_t>();
}

double require_finite(const json& value, const char* what) {
    if (!value.is_number())
        throw FormatError(std::string("graph document: ") + what +
                          " must be a number");
    return value.get<double>();
}

}  // namespace

std::string serialize(const MultilayerGraph& g) {
    std::string out;
    out.reserve(64 + g.vertex_count() * g.positions().layer_count() * 44);
    out += "{\"version\":1,\"n\":";
    append_u64(out, g.vertex_count());
    if (g.has_positions()) {
        out += ",\"r\":";
        out += format_double(g.radius());
    }
    out += ",\"h\":";
    append_u64(out, static_cast<std::uint64_t>(g.layer_count()));
    if (g.has_positions() && g.seed()) {
        out += ",\"seed\":";
        append_u64(out, *g.seed());
    }
    out += ",\"layer_edge_counts\":[";
    const auto counts = g.layer_edge_counts();
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (k) out += ',';
        append_u64(out, counts[k]);
    }
    out += ']';
    if (g.has_positions()) {
        out += ",\"positions\":[";
        const auto& pos = g.positions();
        for (std::size_t v = 0; v < pos.vertex_count(); ++v) {
            if (v) out += ',';
            out += '[';
            for (std::size_t k = 0; k < pos.layer_count(); ++k) {
                if (k) out += ',';
                out += '[';
                out += format_double(pos.at(v, k).x);
                out += ',';
                out += format_double(pos.at(v, k).y);
                out += ']';
            }
            out += ']';
        }
        out += ']';
    } else {
        out += ",\"layer_edges\":[";
        for (int k = 0; k < g.layer_count(); ++k) {
            if (k) out += ',';
            out += '[';
            bool first = true;
            for (const auto& [u, v] : g.layer(k).edges()) {
                if (!first) out += ',';
                first = false;
                out += '[';
                append_u64(out, u);
                out += ',';
                append_u64(out, v);
                out += ']';
            }
            out += ']';
        }
        out += ']';
    }
    out += "}\n";
    return out;
}

MultilayerGraph deserialize(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw FormatError(std::string("graph document is not valid JSON: ") +
                          err.what());
    }
    if (!doc.is_object())
        throw FormatError("graph document must be a JSON object");
    if (require_u64(doc, "version") != 1)
        throw FormatError("unsupported graph document version");
    const std::uint64_t n = require_u64(doc, "n");
    const std::uint64_t h = require_u64(doc, "h");
    if (h < 1 || h > 16)
        throw FormatError("layer count must lie in [1, 16]");
    if (n > 0xffffffffull)
        throw FormatError("vertex count exceeds the id width");
    if (!doc.contains("layer_edge_counts") ||
        !doc["layer_edge_counts"].is_array() ||
        doc["layer_edge_counts"].size() != h)
        throw FormatError(
            "graph document needs one layer_edge_counts entry per layer");
    std::vector<std::uint64_t> counts;
    for (const auto& c : doc["layer_edge_counts"]) {
        if (!c.is_number_unsigned())
            throw FormatError("layer_edge_counts entries must be unsigned");
        counts.push_back(c.get<std::uint64_t>());
    }

    const bool has_positions = doc.contains("positions");
    const bool has_edges = doc.contains("layer_edges");
    if (has_positions == has_edges)
        throw FormatError(
            "graph document needs exactly one of positions or layer_edges");

    MultilayerGraph g = [&] {
        if (has_positions) {
            if (!doc.contains("r"))
                throw FormatError("position documents need an \"r\" field");
            const double r = require_finite(doc["r"], "r");
            std::optional<std::uint64_t> seed;
            if (doc.contains("seed")) seed = require_u64(doc, "seed");
            const auto& pos = doc["positions"];
            if (!pos.is_array() || pos.size() != n)
                throw FormatError("positions must list every vertex");
            PositionAssignment assignment(n, h);
            for (std::size_t v = 0; v < n; ++v) {
                const auto& row = pos[v];
                if (!row.is_array() || row.size() != h)
                    throw FormatError(
                        "each vertex needs one position per layer");
                for (std::size_t k = 0; k < h; ++k) {
                    const auto& pt = row[k];
                    if (!pt.is_array() || pt.size() != 2)
                        throw FormatError("positions must be [x,y] pairs");
                    assignment.at(v, k) = {require_finite(pt[0], "x"),
                                           require_finite(pt[1], "y")};
                }
            }
            try {
                return MultilayerGraph::from_assignment(std::move(assignment),
                                                        r, seed);
            } catch (const std::invalid_argument& err) {
                throw FormatError(std::string("graph document invalid: ") +
                                  err.what());
            } catch (const std::domain_error& err) {
                throw FormatError(std::string("graph document invalid: ") +
                                  err.what());
            }
        }
        const auto& layers = doc["layer_edges"];
        if (!layers.is_array() || layers.size() != h)
            throw FormatError("layer_edges must list every layer");
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>
            edge_lists(h);
        for (std::size_t k = 0; k < h; ++k) {
            if (!layers[k].is_array())
                throw FormatError("layer_edges entries must be arrays");
            for (const auto& e : layers[k]) {
                if (!e.is_array() || e.size() != 2 ||
                    !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
                    throw FormatError("edges must be [u,v] id pairs");
                edge_lists[k].emplace_back(e[0].get<std::uint32_t>(),
                                           e[1].get<std::uint32_t>());
            }
        }
        try {
            return MultilayerGraph::from_layer_edges(n, edge_lists);
        } catch (const std::invalid_argument& err) {
            throw FormatError(std::string("graph document invalid: ") +
                              err.what());
        }
    }();

    const auto rebuilt = g.layer_edge_counts();
    for (std::size_t k = 0; k < rebuilt.size(); ++k)
        if (rebuilt[k] != counts[k])
            throw FormatError(
                "stored layer_edge_counts do not match the document body "
                "(layer " +
                std::to_string(k) + ": stored " + std::to_string(counts[k]) +
                ", rebuilt " + std::to_string(rebuilt[k]) + ")");
    return g;
}

void save_graph(const MultilayerGraph& g, const std::string& path) {
    write_file_atomic(path, serialize(g));
}

MultilayerGraph load_graph(const std::string& path) {
    return deserialize(read_file(path));
}

}  // namespace mlrgg
