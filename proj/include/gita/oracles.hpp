// SPDX-License-Identifier: Apache-2.0
//
// Exact ground-truth solvers for the benchmark tasks and a verifier that
// accepts any correct answer (topological orders, Hamiltonian paths and
// maximum matchings are not unique).
//
// Tie-breaking is smallest node id first everywhere: Kahn's frontier,
// Dijkstra predecessor selection, and Hamiltonian-path branching.

#pragma once

#include <optional>
#include <vector>

#include "gita/graph.hpp"
#include "gita/task.hpp"

namespace gita {

/// Undirected input only (PreconditionError otherwise).
bool solve_connectivity(const Graph& g, NodeId u, NodeId v);

/// True iff the undirected graph has a cycle.
bool solve_cycle(const Graph& g);

/// Kahn's algorithm with a min-id frontier. Every edge u->v places u before v.
/// Throws PreconditionError for undirected or cyclic input.
std::vector<NodeId> solve_topological_sort(const Graph& g);

struct ShortestPath {
    std::vector<NodeId> path;
    Weight total_weight = 0;
};

/// Dijkstra on an undirected weighted graph. Among equal-length routes the
/// predecessor with the smallest id wins. Throws NoPathError if v is unreachable.
ShortestPath solve_shortest_path(const Graph& g, NodeId u, NodeId v);

/// Edmonds-Karp on a directed capacitated graph. Returns 0 when t is
/// unreachable from s.
Weight solve_max_flow(const Graph& g, NodeId s, NodeId t);

/// Hopcroft-Karp maximum-cardinality matching on an undirected bipartite
/// graph. Edges returned as (min,max) pairs in ascending order.
std::vector<NodePair> solve_bipartite_matching(const Graph& g);

inline constexpr NodeId kMaxHamiltonNodes = 20;

/// First Hamiltonian path found by smallest-id-first backtracking, or nullopt.
/// Throws CapacityError above kMaxHamiltonNodes nodes.
std::optional<std::vector<NodeId>> solve_hamilton_path(const Graph& g);

/// 2-coloring of an undirected graph (side 0 / 1 per node), or nullopt if
/// the graph is not bipartite. Isolated nodes and component roots get side 0.
std::optional<std::vector<int>> bipartition(const Graph& g);

/// Solves one of the seven benchmark tasks. Throws PreconditionError when the
/// instance cannot be answered (e.g. HP graph without a Hamiltonian path).
GoldAnswer solve_task(TaskKind task, const Graph& g, const TaskParams& params);

/// Task-specific validity check. Never throws; malformed candidates are false.
bool verify_answer(const TaskInstance& inst, const GoldAnswer& candidate);

/// Enumerates up to `limit` distinct canonical texts of correct answers
/// (gold included). Only meaningful for tasks with non-unique answers on
/// small graphs; returns just the gold text otherwise.
std::vector<std::string> enumerate_valid_answers(const TaskInstance& inst, std::size_t limit);

}  // namespace gita
