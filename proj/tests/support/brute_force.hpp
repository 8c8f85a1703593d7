// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive reference solvers used to check the production oracles. They
// share nothing with src/ beyond the Graph container.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "gita/graph.hpp"

namespace gita::testing {

using Matrix = std::vector<std::vector<std::int64_t>>;

/// Adjacency matrix with weights (1 for unweighted); 0 = no edge.
inline Matrix adjacency_matrix(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.node_count());
    Matrix m(n, std::vector<std::int64_t>(n, 0));
    for (const Edge& e : g.edges()) {
        const auto w = e.weight.value_or(1);
        m[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = w;
        if (!g.directed()) m[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = w;
    }
    return m;
}

/// Floyd-Warshall transitive closure.
inline std::vector<std::vector<bool>> reachability(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const auto adj = adjacency_matrix(g);
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        r[i][i] = true;
        for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] || adj[i][j] != 0;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
    return r;
}

/// Exhaustive DFS over the undirected graph looking for a back edge that is
/// not the edge to the DFS parent.
inline bool has_cycle_dfs(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const auto adj = adjacency_matrix(g);
    std::vector<int> state(n, 0);
    std::vector<std::size_t> parent(n, n);
    bool found = false;
    auto dfs = [&](auto&& self, std::size_t x) -> void {
        state[x] = 1;
        for (std::size_t y = 0; y < n && !found; ++y) {
            if (!adj[x][y]) continue;
            if (state[y] == 0) {
                parent[y] = x;
                self(self, y);
            } else if (y != parent[x]) {
                found = true;
            }
        }
        state[x] = 2;
    };
    for (std::size_t s = 0; s < n && !found; ++s) {
        if (state[s] == 0) dfs(dfs, s);
    }
    return found;
}

/// Every permutation consistent with all directed edges.
inline std::vector<std::vector<NodeId>> linear_extensions(const Graph& g) {
    std::vector<NodeId> perm(static_cast<std::size_t>(g.node_count()));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<NodeId>> out;
    do {
        std::vector<std::size_t> pos(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) pos[static_cast<std::size_t>(perm[i])] = i;
        bool ok = true;
        for (const Edge& e : g.edges()) ok = ok && pos[static_cast<std::size_t>(e.u)] < pos[static_cast<std::size_t>(e.v)];
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

/// Minimum weight over all simple u-v paths; nullopt if none.
inline std::optional<std::int64_t> min_simple_path_weight(const Graph& g, NodeId u, NodeId v) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const auto adj = adjacency_matrix(g);
    std::optional<std::int64_t> best;
    std::vector<char> used(n, 0);
    auto walk = [&](auto&& self, std::size_t x, std::int64_t acc) -> void {
        if (x == static_cast<std::size_t>(v)) {
            if (!best || acc < *best) best = acc;
            return;
        }
        for (std::size_t y = 0; y < n; ++y) {
            if (!adj[x][y] || used[y]) continue;
            used[y] = 1;
            self(self, y, acc + adj[x][y]);
            used[y] = 0;
        }
    };
    used[static_cast<std::size_t>(u)] = 1;
    walk(walk, static_cast<std::size_t>(u), 0);
    return best;
}

/// All simple u-v paths' weights (for optimality sweeps).
inline std::vector<std::int64_t> all_simple_path_weights(const Graph& g, NodeId u, NodeId v) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const auto adj = adjacency_matrix(g);
    std::vector<std::int64_t> out;
    std::vector<char> used(n, 0);
    auto walk = [&](auto&& self, std::size_t x, std::int64_t acc) -> void {
        if (x == static_cast<std::size_t>(v)) {
            out.push_back(acc);
            return;
        }
        for (std::size_t y = 0; y < n; ++y) {
            if (!adj[x][y] || used[y]) continue;
            used[y] = 1;
            self(self, y, acc + adj[x][y]);
            used[y] = 0;
        }
    };
    used[static_cast<std::size_t>(u)] = 1;
    walk(walk, static_cast<std::size_t>(u), 0);
    return out;
}

/// Minimum s-t cut capacity over all 2^(n-2) partitions with s on the source
/// side and t on the sink side.
inline std::int64_t brute_min_cut(const Graph& g, NodeId s, NodeId t) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < n; ++i) {
        if (i != static_cast<std::size_t>(s) && i != static_cast<std::size_t>(t)) others.push_back(i);
    }
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
        std::vector<char> source_side(n, 0);
        source_side[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < others.size(); ++i) {
            if (mask >> i & 1) source_side[others[i]] = 1;
        }
        std::int64_t cut = 0;
        for (const Edge& e : g.edges()) {
            if (source_side[static_cast<std::size_t>(e.u)] && !source_side[static_cast<std::size_t>(e.v)]) cut += *e.weight;
        }
        best = std::min(best, cut);
    }
    return best;
}

/// Largest matching size over all edge subsets.
inline std::size_t brute_max_matching(const Graph& g) {
    const auto m = g.edge_count();
    std::size_t best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
        bool ok = true;
        std::size_t size = 0;
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (!(mask >> i & 1)) continue;
            const Edge& e = g.edges()[i];
            ok = !used[static_cast<std::size_t>(e.u)] && !used[static_cast<std::size_t>(e.v)];
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
            ++size;
        }
        if (ok) best = std::max(best, size);
    }
    return best;
}

/// Whether any permutation of the nodes is a Hamiltonian path.
inline bool brute_has_hamilton_path(const Graph& g) {
    const auto adj = adjacency_matrix(g);
    std::vector<std::size_t> perm(static_cast<std::size_t>(g.node_count()));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t i = 0; i + 1 < perm.size() && ok; ++i) ok = adj[perm[i]][perm[i + 1]] != 0;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// BFS hop distances over the adjacency matrix, ignoring edge direction;
/// -1 for unreachable.
inline std::vector<int> bfs_distances(const Graph& g, NodeId center) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const auto adj = adjacency_matrix(g);
    std::vector<int> dist(n, -1);
    dist[static_cast<std::size_t>(center)] = 0;
    for (int level = 0;; ++level) {
        bool grew = false;
        for (std::size_t x = 0; x < n; ++x) {
            if (dist[x] != level) continue;
            for (std::size_t y = 0; y < n; ++y) {
                if ((adj[x][y] || adj[y][x]) && dist[y] == -1) {
                    dist[y] = level + 1;
                    grew = true;
                }
            }
        }
        if (!grew) break;
    }
    return dist;
}

/// G(n, p) with std::mt19937 directly (independent of the library generator).
inline Graph random_graph(std::mt19937& rng, int n, double p, bool directed, bool weighted, int max_weight = 10) {
    std::bernoulli_distribution coin(p);
    std::uniform_int_distribution<int> weight(1, max_weight);
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = directed ? 0 : a + 1; b < n; ++b) {
            if (a == b || !coin(rng)) continue;
            Edge e{a, b, std::nullopt};
            if (weighted) e.weight = weight(rng);
            edges.push_back(e);
        }
    }
    if (weighted && edges.empty() && n >= 2) edges.push_back({0, 1, weight(rng)});
    std::shuffle(edges.begin(), edges.end(), rng);
    return Graph(directed, n, std::move(edges));
}

/// Random DAG: forward edges of a random permutation.
inline Graph random_dag(std::mt19937& rng, int n, double p) {
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (coin(rng)) edges.push_back({order[i], order[j], std::nullopt});
    return Graph(true, n, std::move(edges));
}

/// Random bipartite graph with `left` + `right` nodes.
inline Graph random_bipartite(std::mt19937& rng, int left, int right, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int a = 0; a < left; ++a)
        for (int b = left; b < left + right; ++b)
            if (coin(rng)) edges.push_back({a, b, std::nullopt});
    std::shuffle(edges.begin(), edges.end(), rng);
    return Graph(false, left + right, std::move(edges));
}

}  // namespace gita::testing
