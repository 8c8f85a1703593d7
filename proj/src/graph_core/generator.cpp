// SPDX-License-Identifier: Apache-2.0

#include "gita/generator.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gita/error.hpp"
#include "gita/oracles.hpp"
#include "gita/rng.hpp"

namespace gita {
namespace {

using PairSet = std::set<NodePair>;

NodePair key(NodeId a, NodeId b) { return {std::min(a, b), std::max(a, b)}; }

std::vector<NodeId> permutation(Rng& rng, NodeId n) {
    std::vector<NodeId> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(std::span<NodeId>(ids));
    return ids;
}

// Random spanning tree over `members`: each member after the first attaches
// to a uniformly chosen earlier one.
void add_spanning_tree(Rng& rng, const std::vector<NodeId>& members, PairSet& pairs) {
    for (std::size_t i = 1; i < members.size(); ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        pairs.insert(key(members[i], members[j]));
    }
}

void add_random_pairs(Rng& rng, const std::vector<NodeId>& members, double p, PairSet& pairs) {
    std::vector<NodeId> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const NodePair k{sorted[i], sorted[j]};
            if (!pairs.contains(k) && rng.bernoulli(p)) pairs.insert(k);
        }
    }
}

// Undirected edge list in shuffled order with a random orientation per edge.
std::vector<Edge> undirected_edges(Rng& rng, const PairSet& pairs, const GeneratorSpec* weighted) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        Edge e{a, b, std::nullopt};
        if (rng.bernoulli(0.5)) std::swap(e.u, e.v);
        if (weighted) e.weight = rng.uniform_int(weighted->weights.min, weighted->weights.max);
        edges.push_back(e);
    }
    rng.shuffle(std::span<Edge>(edges));
    return edges;
}

void validate(const GeneratorSpec& spec) {
    if (spec.nodes.min < 2) throw ParameterError("generator: node range minimum must be at least 2");
    if (spec.nodes.max < spec.nodes.min) throw ParameterError("generator: empty node range");
    if (spec.nodes.max > 100000) throw ParameterError("generator: node range maximum too large");
    if (!(spec.edge_density >= 0.0 && spec.edge_density <= 1.0)) {
        throw ParameterError("generator: edge density must lie in [0,1]");
    }
    if (spec.weights.min < 1 || spec.weights.max < spec.weights.min) {
        throw ParameterError("generator: weight range must be a non-empty range of positive integers");
    }
    if (spec.task == TaskKind::HamiltonPath && spec.nodes.max > kMaxHamiltonNodes) {
        throw ParameterError("generator: HP instances are limited to " + std::to_string(kMaxHamiltonNodes) + " nodes");
    }
    if (spec.task == TaskKind::LinkPred || spec.task == TaskKind::NodeClass) {
        throw ParameterError("generator: real-world tasks are built from ingested graphs, not generated");
    }
}

}  // namespace

GeneratorSpec default_generator_spec(TaskKind task, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.task = task;
    spec.seed = seed;
    switch (task) {
        case TaskKind::Connect: spec.nodes = {20, 30}; spec.edge_density = 0.65; break;
        case TaskKind::Cycle: spec.nodes = {18, 29}; spec.edge_density = 0.004; break;
        case TaskKind::TopoSort: spec.nodes = {17, 27}; spec.edge_density = 0.5; break;
        case TaskKind::ShortestPath: spec.nodes = {9, 18}; spec.edge_density = 0.16; break;
        case TaskKind::MaxFlow: spec.nodes = {9, 19}; spec.edge_density = 0.27; break;
        case TaskKind::Matching: spec.nodes = {16, 26}; spec.edge_density = 0.46; break;
        case TaskKind::HamiltonPath: spec.nodes = {9, 18}; spec.edge_density = 0.45; break;
        case TaskKind::LinkPred:
        case TaskKind::NodeClass: break;
    }
    return spec;
}

TaskInstance generate_instance(const GeneratorSpec& spec) {
    validate(spec);
    Rng rng(spec.seed);
    const auto n = static_cast<NodeId>(rng.uniform_int(spec.nodes.min, spec.nodes.max));
    const double p = spec.edge_density;

    TaskInstance inst;
    inst.task = spec.task;
    PairSet pairs;

    switch (spec.task) {
        case TaskKind::Connect: {
            const auto perm = permutation(rng, n);
            const auto groups = static_cast<std::size_t>(std::min<std::int64_t>(rng.uniform_int(2, 3), std::max(1, n / 2)));
            // Cut points split the permutation into non-empty groups.
            std::vector<std::size_t> cuts;
            std::vector<std::size_t> candidates(static_cast<std::size_t>(n) - 1);
            std::iota(candidates.begin(), candidates.end(), std::size_t{1});
            rng.shuffle(std::span<std::size_t>(candidates));
            cuts.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(groups - 1));
            std::sort(cuts.begin(), cuts.end());
            cuts.insert(cuts.begin(), 0);
            cuts.push_back(static_cast<std::size_t>(n));
            std::vector<std::vector<NodeId>> members(groups);
            for (std::size_t gi = 0; gi < groups; ++gi) {
                members[gi].assign(perm.begin() + static_cast<std::ptrdiff_t>(cuts[gi]),
                                   perm.begin() + static_cast<std::ptrdiff_t>(cuts[gi + 1]));
                add_spanning_tree(rng, members[gi], pairs);
                add_random_pairs(rng, members[gi], p, pairs);
            }
            std::vector<std::size_t> multi;
            for (std::size_t gi = 0; gi < groups; ++gi) {
                if (members[gi].size() >= 2) multi.push_back(gi);
            }
            const bool want_yes = groups == 1 || (!multi.empty() && rng.bernoulli(0.5));
            NodeId u = 0, v = 0;
            if (want_yes) {
                const auto& grp = members[multi[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(multi.size()) - 1))]];
                const auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(grp.size()) - 1));
                auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(grp.size()) - 2));
                if (j >= i) ++j;
                u = grp[i];
                v = grp[j];
            } else {
                const auto a = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(groups) - 1));
                auto b = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(groups) - 2));
                if (b >= a) ++b;
                u = members[a][static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(members[a].size()) - 1))];
                v = members[b][static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(members[b].size()) - 1))];
            }
            inst.graph = Graph(false, n, undirected_edges(rng, pairs, nullptr));
            inst.params.endpoints = NodePair{u, v};
            break;
        }
        case TaskKind::Cycle: {
            const auto perm = permutation(rng, n);
            add_spanning_tree(rng, perm, pairs);
            add_random_pairs(rng, perm, p, pairs);
            inst.graph = Graph(false, n, undirected_edges(rng, pairs, nullptr));
            break;
        }
        case TaskKind::TopoSort: {
            const auto order = permutation(rng, n);
            std::vector<Edge> edges;
            for (std::size_t i = 0; i < order.size(); ++i) {
                for (std::size_t j = i + 1; j < order.size(); ++j) {
                    if (rng.bernoulli(p)) edges.push_back({order[i], order[j], std::nullopt});
                }
            }
            rng.shuffle(std::span<Edge>(edges));
            inst.graph = Graph(true, n, std::move(edges));
            break;
        }
        case TaskKind::ShortestPath: {
            const auto perm = permutation(rng, n);
            add_spanning_tree(rng, perm, pairs);
            add_random_pairs(rng, perm, p, pairs);
            inst.graph = Graph(false, n, undirected_edges(rng, pairs, &spec));
            const auto u = static_cast<NodeId>(rng.uniform_int(0, n - 1));
            auto v = static_cast<NodeId>(rng.uniform_int(0, n - 2));
            if (v >= u) ++v;
            inst.params.endpoints = NodePair{u, v};
            break;
        }
        case TaskKind::MaxFlow: {
            std::vector<Edge> edges;
            for (NodeId a = 0; a < n; ++a) {
                for (NodeId b = 0; b < n; ++b) {
                    if (a != b && rng.bernoulli(p)) {
                        edges.push_back({a, b, rng.uniform_int(spec.weights.min, spec.weights.max)});
                    }
                }
            }
            rng.shuffle(std::span<Edge>(edges));
            inst.graph = Graph(true, n, std::move(edges));
            const auto s = static_cast<NodeId>(rng.uniform_int(0, n - 1));
            auto t = static_cast<NodeId>(rng.uniform_int(0, n - 2));
            if (t >= s) ++t;
            inst.params.endpoints = NodePair{s, t};
            break;
        }
        case TaskKind::Matching: {
            const auto left = static_cast<NodeId>(rng.uniform_int(std::max<NodeId>(1, n / 2 - 2), std::min<NodeId>(n - 1, n / 2 + 2)));
            for (NodeId a = 0; a < left; ++a) {
                for (NodeId b = left; b < n; ++b) {
                    if (rng.bernoulli(p)) pairs.insert({a, b});
                }
            }
            if (pairs.empty()) {
                pairs.insert({static_cast<NodeId>(rng.uniform_int(0, left - 1)), static_cast<NodeId>(rng.uniform_int(left, n - 1))});
            }
            inst.graph = Graph(false, n, undirected_edges(rng, pairs, nullptr));
            break;
        }
        case TaskKind::HamiltonPath: {
            const auto path = permutation(rng, n);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) pairs.insert(key(path[i], path[i + 1]));
            add_random_pairs(rng, path, p, pairs);
            inst.graph = Graph(false, n, undirected_edges(rng, pairs, nullptr));
            break;
        }
        case TaskKind::LinkPred:
        case TaskKind::NodeClass: break;
    }
    inst.gold = solve_task(inst.task, inst.graph, inst.params);
    return inst;
}

}  // namespace gita
