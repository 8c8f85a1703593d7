// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gita/error.hpp"
#include "gita/oracles.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

namespace gita {
namespace {

TaskInstance make_instance(TaskKind task, Graph g, TaskParams params = {}) {
    TaskInstance inst{task, std::move(g), std::move(params), {}};
    inst.gold = solve_task(inst.task, inst.graph, inst.params);
    return inst;
}

TEST(ConnectivityTest, Examples) {
    const Graph g(false, 4, {{0, 1}, {1, 2}});
    EXPECT_TRUE(solve_connectivity(g, 0, 2));
    EXPECT_FALSE(solve_connectivity(g, 0, 3));
    EXPECT_THROW(solve_connectivity(Graph(true, 2, {{0, 1}}), 0, 1), PreconditionError);
}

TEST(ConnectivityTest, MatchesTransitiveClosure) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = testing::random_graph(rng, 10, 0.2, false, false);
        const auto closure = testing::reachability(g);
        for (NodeId u = 0; u < 10; ++u)
            for (NodeId v = 0; v < 10; ++v) ASSERT_EQ(solve_connectivity(g, u, v), closure[u][v]);
    }
}

TEST(CycleTest, Examples) {
    EXPECT_TRUE(solve_cycle(Graph(false, 3, {{0, 1}, {1, 2}, {2, 0}})));
    EXPECT_FALSE(solve_cycle(Graph(false, 3, {{0, 1}, {1, 2}})));
    EXPECT_THROW(solve_cycle(Graph(true, 2, {{0, 1}})), PreconditionError);
}

TEST(CycleTest, MatchesDfsBackEdges) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const Graph g = testing::random_graph(rng, 9, 0.25, false, false);
        ASSERT_EQ(solve_cycle(g), testing::has_cycle_dfs(g));
    }
}

TEST(TopoSortTest, DiamondCanonicalAndAlternatives) {
    const Graph g(true, 4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    EXPECT_EQ(solve_topological_sort(g), (std::vector<NodeId>{0, 1, 2, 3}));
    // Frozen from testing::linear_extensions: exactly [0,1,2,3] and [0,2,1,3].
    const auto extensions = testing::linear_extensions(g);
    ASSERT_EQ(extensions.size(), 2u);
    const auto inst = make_instance(TaskKind::TopoSort, g);
    EXPECT_TRUE(verify_answer(inst, make_answer(std::vector<NodeId>{0, 2, 1, 3})));
    EXPECT_FALSE(verify_answer(inst, make_answer(std::vector<NodeId>{1, 0, 2, 3})));
}

TEST(TopoSortTest, EmptyGraphAcceptsAllPermutations) {
    const Graph g(true, 3, {});
    EXPECT_EQ(solve_topological_sort(g), (std::vector<NodeId>{0, 1, 2}));
    const auto inst = make_instance(TaskKind::TopoSort, g);
    std::vector<NodeId> perm{0, 1, 2};
    int accepted = 0;
    do {
        accepted += verify_answer(inst, make_answer(perm)) ? 1 : 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(accepted, 6);
}

TEST(TopoSortTest, ChainAndErrors) {
    const Graph chain(true, 3, {{0, 1}, {1, 2}});
    EXPECT_EQ(solve_topological_sort(chain), (std::vector<NodeId>{0, 1, 2}));
    EXPECT_EQ(testing::linear_extensions(chain).size(), 1u);
    EXPECT_THROW(solve_topological_sort(Graph(true, 2, {{0, 1}, {1, 0}})), PreconditionError);
    EXPECT_THROW(solve_topological_sort(Graph(false, 2, {{0, 1}})), PreconditionError);
}

TEST(ShortestPathTest, SingleEdge) {
    const Graph g(false, 2, {{0, 1, 6}});
    const auto sp = solve_shortest_path(g, 0, 1);
    EXPECT_EQ(sp.path, (std::vector<NodeId>{0, 1}));
    EXPECT_EQ(sp.total_weight, 6);
}

TEST(ShortestPathTest, CaseStudyGraph) {
    const Graph g = testing::case_study_graph();
    const auto sp = solve_shortest_path(g, 4, 0);
    EXPECT_EQ(sp.total_weight, 3);
    EXPECT_EQ(render_answer(sp.path), "4->6->0");
    const auto inst = make_instance(TaskKind::ShortestPath, g, {NodePair{4, 0}, {}, {}});
    EXPECT_FALSE(verify_answer(inst, make_answer(std::vector<NodeId>{4, 2, 0})));
}

TEST(ShortestPathTest, Errors) {
    EXPECT_THROW(solve_shortest_path(Graph(false, 3, {{0, 1, 1}}), 0, 2), NoPathError);
    EXPECT_THROW(solve_shortest_path(Graph(false, 3, {{0, 1}}), 0, 1), PreconditionError);
}

TEST(ShortestPathTest, VerifierRejectsBrokenAdjacency) {
    // 0-1 (1), 1-2 (1), 0-3 (5), 3-2 (5): candidate 0->2 claims weight 2 without an edge.
    const Graph g(false, 4, {{0, 1, 1}, {1, 2, 1}, {0, 3, 5}, {3, 2, 5}});
    const auto inst = make_instance(TaskKind::ShortestPath, g, {NodePair{0, 2}, {}, {}});
    EXPECT_TRUE(verify_answer(inst, make_answer(std::vector<NodeId>{0, 1, 2})));
    EXPECT_FALSE(verify_answer(inst, make_answer(std::vector<NodeId>{0, 2})));
    EXPECT_FALSE(verify_answer(inst, make_answer(std::vector<NodeId>{0, 3, 2})));
}

TEST(ShortestPathTest, OptimalAgainstAllSimplePaths) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = testing::random_graph(rng, 8, 0.4, false, true);
        const auto best = testing::min_simple_path_weight(g, 0, 7);
        if (!best) {
            EXPECT_THROW(solve_shortest_path(g, 0, 7), NoPathError);
            continue;
        }
        const auto sp = solve_shortest_path(g, 0, 7);
        ASSERT_EQ(sp.total_weight, *best);
        for (auto w : testing::all_simple_path_weights(g, 0, 7)) ASSERT_GE(w, sp.total_weight);
    }
}

TEST(MaxFlowTest, Examples) {
    EXPECT_EQ(solve_max_flow(Graph(true, 2, {{0, 1, 9}}), 0, 1), 9);
    EXPECT_EQ(solve_max_flow(Graph(true, 4, {{0, 1, 3}, {2, 3, 4}}), 0, 3), 0);
    EXPECT_THROW(solve_max_flow(Graph(true, 2, {{0, 1, 9}}), 0, 0), ParameterError);
}

TEST(MaxFlowTest, EqualsMinCut) {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 150; ++trial) {
        const Graph g = testing::random_graph(rng, 7, 0.35, true, true);
        ASSERT_EQ(solve_max_flow(g, 0, 6), testing::brute_min_cut(g, 0, 6));
    }
}

TEST(MatchingTest, Examples) {
    const Graph k22(false, 4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    EXPECT_EQ(solve_bipartite_matching(k22).size(), 2u);
    const Graph star(false, 4, {{0, 1}, {0, 2}, {0, 3}});
    EXPECT_EQ(solve_bipartite_matching(star).size(), 1u);
    EXPECT_THROW(solve_bipartite_matching(Graph(false, 3, {{0, 1}, {1, 2}, {2, 0}})), PreconditionError);
}

TEST(MatchingTest, MatchesSubsetEnumeration) {
    std::mt19937 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = testing::random_bipartite(rng, 4, 4, 0.5);
        const auto m = solve_bipartite_matching(g);
        ASSERT_EQ(m.size(), testing::brute_max_matching(g));
        std::vector<int> used(8, 0);
        for (auto [a, b] : m) {
            ASSERT_TRUE(g.has_edge(a, b));
            ASSERT_EQ(used[a]++ + used[b]++, 0);
        }
    }
}

TEST(HamiltonPathTest, Examples) {
    EXPECT_EQ(solve_hamilton_path(Graph(false, 3, {{0, 1}, {1, 2}})), (std::vector<NodeId>{0, 1, 2}));
    const Graph tri(false, 3, {{0, 1}, {1, 2}, {2, 0}});
    const auto inst = make_instance(TaskKind::HamiltonPath, tri);
    std::vector<NodeId> perm{0, 1, 2};
    do {
        EXPECT_TRUE(verify_answer(inst, make_answer(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_FALSE(verify_answer(inst, make_answer(std::vector<NodeId>{0, 1, 0})));
    EXPECT_FALSE(solve_hamilton_path(Graph(false, 4, {{0, 1}, {0, 2}, {0, 3}})).has_value());
    EXPECT_THROW(solve_hamilton_path(Graph(false, 21, {})), CapacityError);
}

TEST(HamiltonPathTest, ExistenceMatchesPermutationEnumeration) {
    std::mt19937 rng(16);
    for (int trial = 0; trial < 60; ++trial) {
        const Graph g = testing::random_graph(rng, 8, 0.3, false, false);
        const auto path = solve_hamilton_path(g);
        ASSERT_EQ(path.has_value(), testing::brute_has_hamilton_path(g));
    }
}

TEST(AnswerTest, RenderForms) {
    EXPECT_EQ(render_answer(true), "Yes.");
    EXPECT_EQ(render_answer(false), "No.");
    EXPECT_EQ(render_answer(std::vector<NodeId>{4, 6, 0}), "4->6->0");
    EXPECT_EQ(render_answer(std::int64_t{12}), "12");
    EXPECT_EQ(render_answer(std::vector<NodePair>{}), "");
    EXPECT_EQ(render_answer(std::vector<NodePair>{{5, 1}, {0, 3}}), "(0,3),(1,5)");
    EXPECT_EQ(render_answer(std::string("Neural_Networks")), "Neural_Networks");
}

TEST(VerifyTest, MalformedCandidatesAreFalse) {
    const auto inst = make_instance(TaskKind::HamiltonPath, Graph(false, 3, {{0, 1}, {1, 2}}));
    EXPECT_FALSE(verify_answer(inst, make_answer(true)));
    EXPECT_FALSE(verify_answer(inst, make_answer(std::vector<NodeId>{0, 1, 7})));
    GoldAnswer lying = make_answer(std::vector<NodeId>{0, 1, 2});
    lying.kind = AnswerKind::Integer;
    EXPECT_FALSE(verify_answer(inst, lying));
}

TEST(EnumerateTest, DiamondExtensions) {
    const auto inst = make_instance(TaskKind::TopoSort, Graph(true, 4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(enumerate_valid_answers(inst, 10), (std::vector<std::string>{"0->1->2->3", "0->2->1->3"}));
    const auto tri = make_instance(TaskKind::HamiltonPath, Graph(false, 3, {{0, 1}, {1, 2}, {2, 0}}));
    EXPECT_EQ(enumerate_valid_answers(tri, 100).size(), 6u);
    EXPECT_EQ(enumerate_valid_answers(tri, 3).size(), 3u);
}

}  // namespace
}  // namespace gita
