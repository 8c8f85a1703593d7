// SPDX-License-Identifier: Apache-2.0

#include "gita/graph.hpp"

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_set>

#include "gita/digest.hpp"
#include "gita/error.hpp"

namespace gita {
namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

// Builds a CSR structure from (node, value) pairs; values sorted per node.
template <typename T>
void build_csr(NodeId n, std::vector<std::pair<NodeId, T>>& pairs, std::vector<std::size_t>& offsets,
               std::vector<T>& adj) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [u, _] : pairs) ++offsets[static_cast<std::size_t>(u) + 1];
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    adj.clear();
    adj.reserve(pairs.size());
    for (const auto& [_, v] : pairs) adj.push_back(v);
}

}  // namespace

Graph::Graph(bool directed, NodeId node_count, std::vector<Edge> edges, std::map<NodeId, std::string> node_attrs)
    : directed_(directed), node_count_(node_count), edges_(std::move(edges)), node_attrs_(std::move(node_attrs)) {
    if (node_count_ < 0) throw ParameterError("graph: negative node count");
    const bool weighted = !edges_.empty() && edges_.front().weight.has_value();
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= node_count_ || e.v < 0 || e.v >= node_count_) {
            throw ParameterError("graph: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") has an endpoint outside 0.." + std::to_string(node_count_ - 1));
        }
        if (e.u == e.v) throw ParameterError("graph: self-loop on node " + std::to_string(e.u));
        if (e.weight.has_value() != weighted) throw ParameterError("graph: edge weights must be all-or-none");
        if (e.weight && *e.weight <= 0) throw ParameterError("graph: edge weights must be positive");
        const auto key = directed_ ? pair_key(e.u, e.v) : pair_key(std::min(e.u, e.v), std::max(e.u, e.v));
        if (!seen.insert(key).second) {
            throw ParameterError("graph: duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        }
    }
    for (const auto& [id, attr] : node_attrs_) {
        if (id < 0 || id >= node_count_) throw ParameterError("graph: attribute for unknown node " + std::to_string(id));
        if (attr.empty() || attr.find_first_of("\r\n") != std::string::npos) {
            throw ParameterError("graph: node attributes must be non-empty single-line strings");
        }
    }

    std::vector<std::pair<NodeId, NodeId>> out, in, und;
    std::vector<std::pair<NodeId, std::size_t>> inc;
    out.reserve(edges_.size() * 2);
    inc.reserve(edges_.size() * 2);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        out.emplace_back(e.u, e.v);
        in.emplace_back(e.v, e.u);
        und.emplace_back(e.u, e.v);
        und.emplace_back(e.v, e.u);
        if (!directed_) {
            out.emplace_back(e.v, e.u);
            in.emplace_back(e.u, e.v);
        }
        inc.emplace_back(e.u, i);
        inc.emplace_back(e.v, i);
    }
    build_csr(node_count_, out, out_offsets_, out_adj_);
    build_csr(node_count_, in, in_offsets_, in_adj_);
    build_csr(node_count_, und, und_offsets_, und_adj_);
    build_csr(node_count_, inc, inc_offsets_, inc_adj_);
}

void Graph::check_node(NodeId u) const {
    if (u < 0 || u >= node_count_) {
        throw ParameterError("graph: node " + std::to_string(u) + " out of range 0.." + std::to_string(node_count_ - 1));
    }
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
    check_node(u);
    const auto i = static_cast<std::size_t>(u);
    return {out_adj_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
}

std::span<const NodeId> Graph::in_neighbors(NodeId u) const {
    check_node(u);
    const auto i = static_cast<std::size_t>(u);
    return {in_adj_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
}

std::span<const NodeId> Graph::undirected_neighbors(NodeId u) const {
    check_node(u);
    const auto i = static_cast<std::size_t>(u);
    return {und_adj_.data() + und_offsets_[i], und_offsets_[i + 1] - und_offsets_[i]};
}

std::span<const std::size_t> Graph::incident_edges(NodeId u) const {
    check_node(u);
    const auto i = static_cast<std::size_t>(u);
    return {inc_adj_.data() + inc_offsets_[i], inc_offsets_[i + 1] - inc_offsets_[i]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<Weight> Graph::edge_weight(NodeId u, NodeId v) const {
    for (std::size_t i : incident_edges(u)) {
        const Edge& e = edges_[i];
        if ((e.u == u && e.v == v) || (!directed_ && e.u == v && e.v == u)) return e.weight;
    }
    return std::nullopt;
}

std::string to_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["directed"] = g.directed();
    j["n"] = g.node_count();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) {
        if (e.weight) {
            edges.push_back({e.u, e.v, *e.weight});
        } else {
            edges.push_back({e.u, e.v});
        }
    }
    j["edges"] = std::move(edges);
    if (g.has_node_attrs()) {
        nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
        for (const auto& [id, attr] : g.node_attrs()) attrs[std::to_string(id)] = attr;
        j["node_attrs"] = std::move(attrs);
    }
    return j.dump();
}

Graph graph_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("graph json: ") + e.what(), e.byte);
    }
    try {
        if (!j.is_object()) throw ParseError("graph json: top level must be an object", 0);
        const bool directed = j.at("directed").get<bool>();
        const auto n = j.at("n").get<NodeId>();
        std::vector<Edge> edges;
        for (const auto& item : j.at("edges")) {
            if (!item.is_array() || (item.size() != 2 && item.size() != 3)) {
                throw ParseError("graph json: each edge must be [u,v] or [u,v,w]", 0);
            }
            Edge e{item[0].get<NodeId>(), item[1].get<NodeId>(), std::nullopt};
            if (item.size() == 3) e.weight = item[2].get<Weight>();
            edges.push_back(e);
        }
        std::map<NodeId, std::string> attrs;
        if (auto it = j.find("node_attrs"); it != j.end()) {
            for (const auto& [key, value] : it->items()) {
                std::size_t used = 0;
                const int id = std::stoi(key, &used);
                if (used != key.size()) throw ParseError("graph json: bad node id key '" + key + "'", 0);
                attrs[id] = value.get<std::string>();
            }
        }
        return Graph(directed, n, std::move(edges), std::move(attrs));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("graph json: ") + e.what(), 0);
    } catch (const std::invalid_argument&) {
        throw ParseError("graph json: non-numeric node id key", 0);
    } catch (const std::out_of_range&) {
        throw ParseError("graph json: node id key out of range", 0);
    }
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open graph file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return graph_from_json(buffer.str());
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write graph file: " + path);
    out << to_json(g) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::string graph_hash(const Graph& g) { return sha256_hex(to_json(g)); }

}  // namespace gita
