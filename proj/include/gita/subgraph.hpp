// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <vector>

#include "gita/graph.hpp"

namespace gita {

/// Induced k-hop neighborhood with nodes relabeled 0..m-1 by ascending
/// original id.
struct SubgraphSample {
    Graph subgraph;
    /// Center node(s) in original ids; link-prediction samples use two.
    std::vector<NodeId> centers;
    /// original id -> new id.
    std::map<NodeId, NodeId> relabel;
    /// new id -> original id (inverse of relabel).
    std::vector<NodeId> original_ids;
    int hops = 1;

    NodeId center() const { return centers.front(); }
    NodeId to_local(NodeId original) const { return relabel.at(original); }
};

/// All nodes within `hops` steps of `center` (edge direction ignored), with
/// every source edge between two sampled nodes, in source order. Node
/// attributes are carried over. Throws ParameterError for an out-of-range
/// center or hops < 1.
SubgraphSample sample_k_hop(const Graph& source, NodeId center, int hops);

/// Union of the k-hop neighborhoods of several centers.
SubgraphSample sample_k_hop(const Graph& source, std::span<const NodeId> centers, int hops);

}  // namespace gita
