// SPDX-License-Identifier: Apache-2.0
//
// Immutable simple graph used by every stage of the pipeline, plus its JSON
// interchange form:
//
//   {"directed": bool, "n": int, "edges": [[u,v] | [u,v,w], ...], "node_attrs": {"id": "text"}}
//
// `node_attrs` is omitted when empty. Field order is fixed.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gita {

using NodeId = std::int32_t;
using Weight = std::int64_t;
using NodePair = std::pair<NodeId, NodeId>;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    std::optional<Weight> weight;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
  public:
    Graph() = default;

    /// Validates and builds. Throws ParameterError when an endpoint is out of
    /// range, an edge is a self-loop or duplicate, weights are partial or
    /// non-positive, or an attribute is empty / multi-line.
    Graph(bool directed, NodeId node_count, std::vector<Edge> edges,
          std::map<NodeId, std::string> node_attrs = {});

    bool directed() const noexcept { return directed_; }
    NodeId node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::map<NodeId, std::string>& node_attrs() const noexcept { return node_attrs_; }

    bool weighted() const noexcept { return !edges_.empty() && edges_.front().weight.has_value(); }
    bool has_node_attrs() const noexcept { return !node_attrs_.empty(); }

    /// Ascending. Out-neighbors for directed graphs.
    std::span<const NodeId> neighbors(NodeId u) const;
    /// Ascending. Same as neighbors() for undirected graphs.
    std::span<const NodeId> in_neighbors(NodeId u) const;
    /// Union of in- and out-neighbors, ascending, without duplicates.
    std::span<const NodeId> undirected_neighbors(NodeId u) const;
    /// Indices into edges() of every edge touching u, ascending.
    std::span<const std::size_t> incident_edges(NodeId u) const;

    /// Edge lookup honoring direction (undirected: either orientation).
    bool has_edge(NodeId u, NodeId v) const;
    std::optional<Weight> edge_weight(NodeId u, NodeId v) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.directed_ == b.directed_ && a.node_count_ == b.node_count_ && a.edges_ == b.edges_ &&
               a.node_attrs_ == b.node_attrs_;
    }

  private:
    void check_node(NodeId u) const;

    bool directed_ = false;
    NodeId node_count_ = 0;
    std::vector<Edge> edges_;
    std::map<NodeId, std::string> node_attrs_;

    // CSR adjacency, built once in the constructor.
    std::vector<std::size_t> out_offsets_, in_offsets_, und_offsets_, inc_offsets_;
    std::vector<NodeId> out_adj_, in_adj_, und_adj_;
    std::vector<std::size_t> inc_adj_;
};

/// Serializes to the interchange JSON (compact, fixed field order).
std::string to_json(const Graph& g);
/// Parses the interchange JSON. Throws ParseError on malformed input and
/// ParameterError when the described graph is invalid.
Graph graph_from_json(std::string_view text);

Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

/// SHA-256 of to_json(g).
std::string graph_hash(const Graph& g);

}  // namespace gita
