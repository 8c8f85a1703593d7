// SPDX-License-Identifier: Apache-2.0

#include "gita/subgraph.hpp"

#include <algorithm>
#include <queue>

#include "gita/error.hpp"

namespace gita {

SubgraphSample sample_k_hop(const Graph& source, NodeId center, int hops) {
    const NodeId centers[] = {center};
    return sample_k_hop(source, centers, hops);
}

SubgraphSample sample_k_hop(const Graph& source, std::span<const NodeId> centers, int hops) {
    if (hops < 1) throw ParameterError("k-hop sampling: hops must be >= 1");
    if (centers.empty()) throw ParameterError("k-hop sampling: no center given");
    for (NodeId c : centers) {
        if (c < 0 || c >= source.node_count()) {
            throw ParameterError("k-hop sampling: center " + std::to_string(c) + " out of range");
        }
    }

    // Multi-source BFS; `depth` doubles as the visited set.
    std::map<NodeId, int> depth;
    std::queue<NodeId> queue;
    for (NodeId c : centers) {
        if (depth.emplace(c, 0).second) queue.push(c);
    }
    while (!queue.empty()) {
        const NodeId x = queue.front();
        queue.pop();
        const int d = depth[x];
        if (d == hops) continue;
        for (NodeId y : source.undirected_neighbors(x)) {
            if (depth.emplace(y, d + 1).second) queue.push(y);
        }
    }

    SubgraphSample sample;
    sample.centers.assign(centers.begin(), centers.end());
    sample.hops = hops;
    sample.original_ids.reserve(depth.size());
    for (const auto& [id, _] : depth) {
        sample.relabel.emplace(id, static_cast<NodeId>(sample.original_ids.size()));
        sample.original_ids.push_back(id);
    }

    std::vector<std::size_t> edge_ids;
    for (NodeId id : sample.original_ids) {
        for (std::size_t ei : source.incident_edges(id)) edge_ids.push_back(ei);
    }
    std::sort(edge_ids.begin(), edge_ids.end());
    edge_ids.erase(std::unique(edge_ids.begin(), edge_ids.end()), edge_ids.end());

    std::vector<Edge> edges;
    for (std::size_t ei : edge_ids) {
        const Edge& e = source.edges()[ei];
        const auto a = sample.relabel.find(e.u);
        const auto b = sample.relabel.find(e.v);
        if (a == sample.relabel.end() || b == sample.relabel.end()) continue;
        edges.push_back({a->second, b->second, e.weight});
    }
    std::map<NodeId, std::string> attrs;
    for (const auto& [id, attr] : source.node_attrs()) {
        if (auto it = sample.relabel.find(id); it != sample.relabel.end()) attrs.emplace(it->second, attr);
    }
    sample.subgraph = Graph(source.directed(), static_cast<NodeId>(sample.original_ids.size()), std::move(edges),
                            std::move(attrs));
    return sample;
}

}  // namespace gita
