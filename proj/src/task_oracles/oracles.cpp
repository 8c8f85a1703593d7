// SPDX-License-Identifier: Apache-2.0

#include "gita/oracles.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "gita/error.hpp"

namespace gita {
namespace {

void require_undirected(const Graph& g, std::string_view what) {
    if (g.directed()) throw PreconditionError(std::string(what) + " requires an undirected graph");
}

void require_node(const Graph& g, NodeId u, std::string_view what) {
    if (u < 0 || u >= g.node_count()) {
        throw ParameterError(std::string(what) + ": node " + std::to_string(u) + " out of range");
    }
}

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }

    std::vector<std::size_t> parent;
};

}  // namespace

bool solve_connectivity(const Graph& g, NodeId u, NodeId v) {
    require_undirected(g, "connectivity");
    require_node(g, u, "connectivity");
    require_node(g, v, "connectivity");
    if (u == v) return true;
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<NodeId> stack{u};
    seen[static_cast<std::size_t>(u)] = 1;
    while (!stack.empty()) {
        const NodeId x = stack.back();
        stack.pop_back();
        for (NodeId y : g.neighbors(x)) {
            if (y == v) return true;
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                stack.push_back(y);
            }
        }
    }
    return false;
}

bool solve_cycle(const Graph& g) {
    require_undirected(g, "cycle detection");
    DisjointSets sets(static_cast<std::size_t>(g.node_count()));
    for (const Edge& e : g.edges()) {
        if (!sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) return true;
    }
    return false;
}

std::vector<NodeId> solve_topological_sort(const Graph& g) {
    if (!g.directed()) throw PreconditionError("topological sort requires a directed graph");
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::size_t> indegree(n, 0);
    for (const Edge& e : g.edges()) ++indegree[static_cast<std::size_t>(e.v)];
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> frontier;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) frontier.push(static_cast<NodeId>(i));
    }
    std::vector<NodeId> order;
    order.reserve(n);
    while (!frontier.empty()) {
        const NodeId u = frontier.top();
        frontier.pop();
        order.push_back(u);
        for (NodeId v : g.neighbors(u)) {
            if (--indegree[static_cast<std::size_t>(v)] == 0) frontier.push(v);
        }
    }
    if (order.size() != n) throw PreconditionError("topological sort: graph has a directed cycle");
    return order;
}

ShortestPath solve_shortest_path(const Graph& g, NodeId u, NodeId v) {
    require_undirected(g, "shortest path");
    require_node(g, u, "shortest path");
    require_node(g, v, "shortest path");
    if (g.edge_count() > 0 && !g.weighted()) throw PreconditionError("shortest path requires edge weights");
    constexpr Weight kInf = std::numeric_limits<Weight>::max();
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<Weight> dist(n, kInf);
    std::vector<NodeId> pred(n, -1);
    std::vector<char> done(n, 0);
    using Item = std::pair<Weight, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(u)] = 0;
    heap.emplace(0, u);
    while (!heap.empty()) {
        const auto [d, x] = heap.top();
        heap.pop();
        const auto xi = static_cast<std::size_t>(x);
        if (done[xi]) continue;
        done[xi] = 1;
        for (std::size_t ei : g.incident_edges(x)) {
            const Edge& e = g.edges()[ei];
            const NodeId y = e.u == x ? e.v : e.u;
            const auto yi = static_cast<std::size_t>(y);
            if (done[yi]) continue;
            const Weight nd = d + *e.weight;
            if (nd < dist[yi] || (nd == dist[yi] && x < pred[yi])) {
                if (nd < dist[yi]) heap.emplace(nd, y);
                dist[yi] = nd;
                pred[yi] = x;
            }
        }
    }
    const auto vi = static_cast<std::size_t>(v);
    if (dist[vi] == kInf) {
        throw NoPathError("shortest path: node " + std::to_string(v) + " unreachable from " + std::to_string(u));
    }
    ShortestPath result;
    result.total_weight = dist[vi];
    for (NodeId x = v; x != -1; x = pred[static_cast<std::size_t>(x)]) result.path.push_back(x);
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

Weight solve_max_flow(const Graph& g, NodeId s, NodeId t) {
    if (!g.directed()) throw PreconditionError("max flow requires a directed graph");
    if (g.edge_count() > 0 && !g.weighted()) throw PreconditionError("max flow requires edge capacities");
    require_node(g, s, "max flow");
    require_node(g, t, "max flow");
    if (s == t) throw ParameterError("max flow: source equals sink");

    struct Arc {
        NodeId to;
        Weight cap;
        std::size_t rev;
    };
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::vector<Arc>> residual(n);
    for (const Edge& e : g.edges()) {
        auto& from = residual[static_cast<std::size_t>(e.u)];
        auto& to = residual[static_cast<std::size_t>(e.v)];
        from.push_back({e.v, *e.weight, to.size()});
        to.push_back({e.u, 0, from.size() - 1});
    }

    Weight flow = 0;
    std::vector<std::pair<NodeId, std::size_t>> parent(n);
    while (true) {
        std::fill(parent.begin(), parent.end(), std::pair<NodeId, std::size_t>{-1, 0});
        parent[static_cast<std::size_t>(s)] = {s, 0};
        std::queue<NodeId> queue;
        queue.push(s);
        while (!queue.empty() && parent[static_cast<std::size_t>(t)].first == -1) {
            const NodeId x = queue.front();
            queue.pop();
            const auto& arcs = residual[static_cast<std::size_t>(x)];
            for (std::size_t i = 0; i < arcs.size(); ++i) {
                const Arc& a = arcs[i];
                if (a.cap > 0 && parent[static_cast<std::size_t>(a.to)].first == -1) {
                    parent[static_cast<std::size_t>(a.to)] = {x, i};
                    queue.push(a.to);
                }
            }
        }
        if (parent[static_cast<std::size_t>(t)].first == -1) break;

        Weight bottleneck = std::numeric_limits<Weight>::max();
        for (NodeId x = t; x != s;) {
            const auto [p, i] = parent[static_cast<std::size_t>(x)];
            bottleneck = std::min(bottleneck, residual[static_cast<std::size_t>(p)][i].cap);
            x = p;
        }
        for (NodeId x = t; x != s;) {
            const auto [p, i] = parent[static_cast<std::size_t>(x)];
            Arc& a = residual[static_cast<std::size_t>(p)][i];
            a.cap -= bottleneck;
            residual[static_cast<std::size_t>(a.to)][a.rev].cap += bottleneck;
            x = p;
        }
        flow += bottleneck;
    }
    return flow;
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
    require_undirected(g, "bipartition");
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<int> side(n, -1);
    for (std::size_t root = 0; root < n; ++root) {
        if (side[root] != -1) continue;
        side[root] = 0;
        std::queue<NodeId> queue;
        queue.push(static_cast<NodeId>(root));
        while (!queue.empty()) {
            const NodeId x = queue.front();
            queue.pop();
            for (NodeId y : g.neighbors(x)) {
                auto& sy = side[static_cast<std::size_t>(y)];
                if (sy == -1) {
                    sy = 1 - side[static_cast<std::size_t>(x)];
                    queue.push(y);
                } else if (sy == side[static_cast<std::size_t>(x)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

std::vector<NodePair> solve_bipartite_matching(const Graph& g) {
    require_undirected(g, "bipartite matching");
    const auto sides = bipartition(g);
    if (!sides) throw PreconditionError("bipartite matching: graph is not bipartite");
    const auto n = static_cast<std::size_t>(g.node_count());
    constexpr int kInf = std::numeric_limits<int>::max();

    std::vector<NodeId> left;
    for (std::size_t i = 0; i < n; ++i) {
        if ((*sides)[i] == 0) left.push_back(static_cast<NodeId>(i));
    }
    std::vector<NodeId> mate(n, -1);
    std::vector<int> layer(n, kInf);

    auto bfs = [&] {
        std::queue<NodeId> queue;
        bool found = false;
        for (NodeId l : left) {
            if (mate[static_cast<std::size_t>(l)] == -1) {
                layer[static_cast<std::size_t>(l)] = 0;
                queue.push(l);
            } else {
                layer[static_cast<std::size_t>(l)] = kInf;
            }
        }
        while (!queue.empty()) {
            const NodeId l = queue.front();
            queue.pop();
            for (NodeId r : g.neighbors(l)) {
                const NodeId next = mate[static_cast<std::size_t>(r)];
                if (next == -1) {
                    found = true;
                } else if (layer[static_cast<std::size_t>(next)] == kInf) {
                    layer[static_cast<std::size_t>(next)] = layer[static_cast<std::size_t>(l)] + 1;
                    queue.push(next);
                }
            }
        }
        return found;
    };

    std::function<bool(NodeId)> dfs = [&](NodeId l) {
        for (NodeId r : g.neighbors(l)) {
            const NodeId next = mate[static_cast<std::size_t>(r)];
            if (next == -1 ||
                (layer[static_cast<std::size_t>(next)] == layer[static_cast<std::size_t>(l)] + 1 && dfs(next))) {
                mate[static_cast<std::size_t>(l)] = r;
                mate[static_cast<std::size_t>(r)] = l;
                return true;
            }
        }
        layer[static_cast<std::size_t>(l)] = kInf;
        return false;
    };

    while (bfs()) {
        for (NodeId l : left) {
            if (mate[static_cast<std::size_t>(l)] == -1) dfs(l);
        }
    }

    std::vector<NodePair> matching;
    for (NodeId l : left) {
        const NodeId r = mate[static_cast<std::size_t>(l)];
        if (r != -1) matching.emplace_back(std::min(l, r), std::max(l, r));
    }
    std::sort(matching.begin(), matching.end());
    return matching;
}

std::optional<std::vector<NodeId>> solve_hamilton_path(const Graph& g) {
    require_undirected(g, "Hamiltonian path");
    const NodeId n = g.node_count();
    if (n > kMaxHamiltonNodes) {
        throw CapacityError("Hamiltonian path: " + std::to_string(n) + " nodes exceeds the backtracking bound of " +
                            std::to_string(kMaxHamiltonNodes));
    }
    if (n == 0) return std::vector<NodeId>{};
    if (n > 1) {
        // A Hamiltonian path needs a connected graph with at most two leaves.
        DisjointSets sets(static_cast<std::size_t>(n));
        std::size_t components = static_cast<std::size_t>(n);
        for (const Edge& e : g.edges()) {
            if (sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) --components;
        }
        if (components > 1) return std::nullopt;
        int leaves = 0;
        for (NodeId u = 0; u < n; ++u) leaves += g.neighbors(u).size() == 1 ? 1 : 0;
        if (leaves > 2) return std::nullopt;
    }

    std::vector<NodeId> path;
    path.reserve(static_cast<std::size_t>(n));
    std::uint32_t visited = 0;
    const std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1u);

    std::function<bool(NodeId)> extend = [&](NodeId x) {
        if (visited == all) return true;
        for (NodeId y : g.neighbors(x)) {
            const std::uint32_t bit = 1u << y;
            if (visited & bit) continue;
            visited |= bit;
            path.push_back(y);
            if (extend(y)) return true;
            path.pop_back();
            visited &= ~bit;
        }
        return false;
    };

    for (NodeId start = 0; start < n; ++start) {
        visited = 1u << start;
        path.assign(1, start);
        if (extend(start)) return path;
    }
    return std::nullopt;
}

GoldAnswer solve_task(TaskKind task, const Graph& g, const TaskParams& params) {
    auto endpoints = [&] {
        if (!params.endpoints) throw ParameterError(std::string(task_label(task)) + " requires an endpoint pair");
        return *params.endpoints;
    };
    switch (task) {
        case TaskKind::Connect: {
            const auto [u, v] = endpoints();
            return make_answer(solve_connectivity(g, u, v));
        }
        case TaskKind::Cycle: return make_answer(solve_cycle(g));
        case TaskKind::TopoSort: return make_answer(solve_topological_sort(g));
        case TaskKind::ShortestPath: {
            const auto [u, v] = endpoints();
            return make_answer(solve_shortest_path(g, u, v).path);
        }
        case TaskKind::MaxFlow: {
            const auto [s, t] = endpoints();
            return make_answer(static_cast<std::int64_t>(solve_max_flow(g, s, t)));
        }
        case TaskKind::Matching: return make_answer(solve_bipartite_matching(g));
        case TaskKind::HamiltonPath: {
            auto path = solve_hamilton_path(g);
            if (!path) throw PreconditionError("Hamiltonian path: graph has none");
            return make_answer(std::move(*path));
        }
        case TaskKind::LinkPred:
        case TaskKind::NodeClass: break;
    }
    throw ParameterError(std::string(task_label(task)) + " answers come from held-out data, not a solver");
}

namespace {

bool is_permutation_of_nodes(const Graph& g, const std::vector<NodeId>& seq) {
    if (seq.size() != static_cast<std::size_t>(g.node_count())) return false;
    std::vector<char> seen(seq.size(), 0);
    for (NodeId x : seq) {
        if (x < 0 || x >= g.node_count() || seen[static_cast<std::size_t>(x)]) return false;
        seen[static_cast<std::size_t>(x)] = 1;
    }
    return true;
}

bool verify_impl(const TaskInstance& inst, const GoldAnswer& candidate) {
    if (candidate.kind != answer_kind_for(inst.task) || answer_kind(candidate.value) != candidate.kind) return false;
    const Graph& g = inst.graph;
    switch (inst.task) {
        case TaskKind::Connect: {
            const auto [u, v] = inst.params.endpoints.value();
            return std::get<bool>(candidate.value) == solve_connectivity(g, u, v);
        }
        case TaskKind::Cycle: return std::get<bool>(candidate.value) == solve_cycle(g);
        case TaskKind::LinkPred: return candidate.value == inst.gold.value;
        case TaskKind::NodeClass: return std::get<std::string>(candidate.value) == std::get<std::string>(inst.gold.value);
        case TaskKind::MaxFlow: {
            const auto [s, t] = inst.params.endpoints.value();
            return std::get<std::int64_t>(candidate.value) == solve_max_flow(g, s, t);
        }
        case TaskKind::TopoSort: {
            const auto& seq = std::get<std::vector<NodeId>>(candidate.value);
            if (!is_permutation_of_nodes(g, seq)) return false;
            std::vector<std::size_t> pos(seq.size());
            for (std::size_t i = 0; i < seq.size(); ++i) pos[static_cast<std::size_t>(seq[i])] = i;
            return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
                return pos[static_cast<std::size_t>(e.u)] < pos[static_cast<std::size_t>(e.v)];
            });
        }
        case TaskKind::ShortestPath: {
            const auto [u, v] = inst.params.endpoints.value();
            const auto& seq = std::get<std::vector<NodeId>>(candidate.value);
            if (seq.empty() || seq.front() != u || seq.back() != v) return false;
            Weight total = 0;
            for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                if (seq[i] < 0 || seq[i] >= g.node_count() || seq[i + 1] < 0 || seq[i + 1] >= g.node_count()) {
                    return false;
                }
                const auto w = g.edge_weight(seq[i], seq[i + 1]);
                if (!w) return false;
                total += *w;
            }
            return total == solve_shortest_path(g, u, v).total_weight;
        }
        case TaskKind::Matching: {
            const auto& pairs = std::get<std::vector<NodePair>>(candidate.value);
            std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
            for (const auto& [a, b] : pairs) {
                if (a < 0 || b < 0 || a >= g.node_count() || b >= g.node_count()) return false;
                if (!g.has_edge(a, b)) return false;
                if (used[static_cast<std::size_t>(a)] || used[static_cast<std::size_t>(b)]) return false;
                used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 1;
            }
            return pairs.size() == solve_bipartite_matching(g).size();
        }
        case TaskKind::HamiltonPath: {
            const auto& seq = std::get<std::vector<NodeId>>(candidate.value);
            if (!is_permutation_of_nodes(g, seq)) return false;
            for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                if (!g.has_edge(seq[i], seq[i + 1])) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace

bool verify_answer(const TaskInstance& inst, const GoldAnswer& candidate) {
    try {
        return verify_impl(inst, candidate);
    } catch (...) {
        return false;
    }
}

std::vector<std::string> enumerate_valid_answers(const TaskInstance& inst, std::size_t limit) {
    std::set<std::string> seen{inst.gold.canonical_text};
    std::vector<std::string> out{inst.gold.canonical_text};
    const Graph& g = inst.graph;
    const auto n = static_cast<std::size_t>(g.node_count());
    auto emit = [&](AnswerValue value) {
        auto text = render_answer(value);
        if (seen.insert(text).second) out.push_back(std::move(text));
        return out.size() >= limit;
    };
    if (limit <= 1) return out;

    std::vector<NodeId> seq;
    std::vector<char> used(n, 0);
    switch (inst.task) {
        case TaskKind::TopoSort: {
            std::vector<std::size_t> indegree(n, 0);
            for (const Edge& e : g.edges()) ++indegree[static_cast<std::size_t>(e.v)];
            std::function<bool()> walk = [&]() {
                if (seq.size() == n) return emit(seq);
                for (std::size_t x = 0; x < n; ++x) {
                    if (used[x] || indegree[x] != 0) continue;
                    used[x] = 1;
                    seq.push_back(static_cast<NodeId>(x));
                    for (NodeId y : g.neighbors(static_cast<NodeId>(x))) --indegree[static_cast<std::size_t>(y)];
                    const bool stop = walk();
                    for (NodeId y : g.neighbors(static_cast<NodeId>(x))) ++indegree[static_cast<std::size_t>(y)];
                    seq.pop_back();
                    used[x] = 0;
                    if (stop) return true;
                }
                return false;
            };
            walk();
            break;
        }
        case TaskKind::HamiltonPath: {
            if (n > 12) break;
            std::function<bool(NodeId)> walk = [&](NodeId x) {
                if (seq.size() == n) return emit(seq);
                for (NodeId y : g.neighbors(x)) {
                    if (used[static_cast<std::size_t>(y)]) continue;
                    used[static_cast<std::size_t>(y)] = 1;
                    seq.push_back(y);
                    const bool stop = walk(y);
                    seq.pop_back();
                    used[static_cast<std::size_t>(y)] = 0;
                    if (stop) return true;
                }
                return false;
            };
            for (NodeId s = 0; s < g.node_count(); ++s) {
                used[static_cast<std::size_t>(s)] = 1;
                seq.assign(1, s);
                const bool stop = walk(s);
                used[static_cast<std::size_t>(s)] = 0;
                if (stop) break;
            }
            break;
        }
        case TaskKind::ShortestPath: {
            const auto [u, v] = inst.params.endpoints.value();
            const Weight best = solve_shortest_path(g, u, v).total_weight;
            // Distances to v bound the search to the shortest-path DAG.
            std::vector<Weight> to_v(n, std::numeric_limits<Weight>::max());
            for (NodeId x = 0; x < g.node_count(); ++x) {
                try {
                    to_v[static_cast<std::size_t>(x)] = solve_shortest_path(g, x, v).total_weight;
                } catch (const NoPathError&) {
                }
            }
            std::function<bool(NodeId, Weight)> walk = [&](NodeId x, Weight acc) {
                if (x == v) return emit(seq);
                for (std::size_t ei : g.incident_edges(x)) {
                    const Edge& e = g.edges()[ei];
                    const NodeId y = e.u == x ? e.v : e.u;
                    const Weight rest = to_v[static_cast<std::size_t>(y)];
                    if (rest == std::numeric_limits<Weight>::max() || acc + *e.weight + rest != best) continue;
                    seq.push_back(y);
                    const bool stop = walk(y, acc + *e.weight);
                    seq.pop_back();
                    if (stop) return true;
                }
                return false;
            };
            seq.assign(1, u);
            walk(u, 0);
            break;
        }
        case TaskKind::Matching: {
            if (g.edge_count() > 24) break;
            const std::size_t target = std::get<std::vector<NodePair>>(inst.gold.value).size();
            std::vector<NodePair> chosen;
            std::function<bool(std::size_t)> walk = [&](std::size_t i) {
                if (chosen.size() == target) return emit(chosen);
                if (i == g.edge_count() || chosen.size() + (g.edge_count() - i) < target) return false;
                const Edge& e = g.edges()[i];
                const auto a = static_cast<std::size_t>(e.u), b = static_cast<std::size_t>(e.v);
                if (!used[a] && !used[b]) {
                    used[a] = used[b] = 1;
                    chosen.emplace_back(e.u, e.v);
                    const bool stop = walk(i + 1);
                    chosen.pop_back();
                    used[a] = used[b] = 0;
                    if (stop) return true;
                }
                return walk(i + 1);
            };
            walk(0);
            break;
        }
        default: break;
    }
    return out;
}

}  // namespace gita
