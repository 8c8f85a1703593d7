// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gita/error.hpp"
#include "gita/generator.hpp"
#include "gita/visualizer.hpp"
#include "support/axis_isolation.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"
#include "support/svg_probe.hpp"

namespace gita {
namespace {

using testing::parse_svg;
using testing::select;
using testing::glyph_center;
using testing::strip;

Graph rand_graph(std::uint64_t seed, int n, double p, bool directed) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    return testing::random_graph(rng, n, p, directed, false);
}

TEST(Layout, SingleNodeIsCentered) {
    const Graph g(false, 1, {});
    for (auto algo : kLayoutAlgorithms) {
        const auto r = layout(g, algo, 7);
        ASSERT_EQ(r.positions.size(), 1u);
        EXPECT_NEAR(r.positions[0].x, 512.0, 1e-9) << layout_name(algo);
        EXPECT_NEAR(r.positions[0].y, 512.0, 1e-9) << layout_name(algo);
    }
}

TEST(Layout, CircularFourNodesAtQuarterTurns) {
    const Graph g(false, 4, {{0, 1}, {1, 2}, {2, 3}});
    const auto r = layout(g, LayoutAlgorithm::Circular, 1);
    const double cx = 512.0, cy = 512.0;
    const double r0 = std::hypot(r.positions[0].x - cx, r.positions[0].y - cy);
    for (int i = 0; i < 4; ++i) {
        const double ang = std::atan2(r.positions[i].y - cy, r.positions[i].x - cx);
        const double expect = -std::numbers::pi / 2 + i * std::numbers::pi / 2;
        double diff = std::remainder(ang - expect, 2 * std::numbers::pi);
        EXPECT_NEAR(diff, 0.0, 1e-9) << i;
        EXPECT_NEAR(std::hypot(r.positions[i].x - cx, r.positions[i].y - cy), r0, 1e-9);
    }
}

TEST(Layout, PositionsInsideMarginAndDeterministic) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = rand_graph(seed, 3 + static_cast<int>(seed % 25), 0.2, seed % 2 == 0);
        for (auto algo : kLayoutAlgorithms) {
            const auto a = layout(g, algo, seed);
            const auto b = layout(g, algo, seed);
            ASSERT_EQ(a.positions, b.positions) << layout_name(algo);
            for (const auto& p : a.positions) {
                EXPECT_GE(p.x, 48.0 - 1e-9);
                EXPECT_LE(p.x, 1024.0 - 48.0 + 1e-9);
                EXPECT_GE(p.y, 48.0 - 1e-9);
                EXPECT_LE(p.y, 1024.0 - 48.0 + 1e-9);
                EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
            }
        }
    }
}

TEST(Layout, SpringAndStressEnergyNeverIncreases) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Graph g = rand_graph(seed, 5 + static_cast<int>(seed % 30), 0.15, false);
        for (auto algo : {LayoutAlgorithm::Spring, LayoutAlgorithm::Stress}) {
            const auto r = layout(g, algo, seed);
            ASSERT_GE(r.energy_trace.size(), 2u);
            for (std::size_t i = 1; i < r.energy_trace.size(); ++i) {
                EXPECT_LE(r.energy_trace[i], r.energy_trace[i - 1] + 1e-9 * std::abs(r.energy_trace[i - 1]))
                    << layout_name(algo) << " seed " << seed << " checkpoint " << i;
            }
        }
    }
    const Graph g = rand_graph(3, 20, 0.2, false);
    EXPECT_EQ(layout(g, LayoutAlgorithm::Spring, 3).iterations_used, kSpringIterations);
}

TEST(Layout, LayeredFallsBackOnCyclicDigraph) {
    const Graph cyc(true, 3, {{0, 1}, {1, 2}, {2, 0}});
    const auto r = layout(cyc, LayoutAlgorithm::Layered, 5);
    ASSERT_TRUE(r.warning.has_value());
    EXPECT_EQ(r.positions, layout(cyc, LayoutAlgorithm::Spring, 5).positions);

    const Graph dag(true, 3, {{0, 1}, {1, 2}});
    const auto d = layout(dag, LayoutAlgorithm::Layered, 5);
    EXPECT_FALSE(d.warning.has_value());
    EXPECT_LT(d.positions[0].y, d.positions[1].y);
    EXPECT_LT(d.positions[1].y, d.positions[2].y);
}

TEST(Layout, NamesRoundTripAndEmptyGraphRejected) {
    for (auto a : kLayoutAlgorithms) EXPECT_EQ(parse_layout(layout_name(a)), a);
    EXPECT_FALSE(parse_layout("force").has_value());
    EXPECT_THROW(layout(Graph(false, 0, {}), LayoutAlgorithm::Spring, 0), ParameterError);
}

TEST(Render, TriangleHasThreeNodesAndEdges) {
    const Graph g(false, 3, {{0, 1}, {1, 2}, {2, 0}});
    const auto vg = render(g, {}, {}, 11);
    const auto els = parse_svg(vg.svg);
    EXPECT_EQ(select(els, "glyph").size(), 3u);
    EXPECT_EQ(select(els, "line").size(), 3u);
    EXPECT_EQ(select(els, "arrowhead").size(), 0u);
    EXPECT_EQ(select(els, "weight").size(), 0u);
    const auto labels = select(els, "label");
    ASSERT_EQ(labels.size(), 3u);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(labels[i].text, std::to_string(i));
    EXPECT_NE(vg.svg.find("width=\"1024px\""), std::string::npos);
    EXPECT_EQ(vg.source_hash, graph_hash(g));
}

TEST(Render, DirectedEdgesCarryArrowheads) {
    const Graph g(true, 3, {{0, 1}, {1, 2}});
    const auto els = parse_svg(render(g, {}, {}, 2).svg);
    EXPECT_EQ(select(els, "arrowhead").size(), 2u);
}

TEST(Render, WeightLabelAtEdgeMidpoint) {
    const Graph g(false, 2, {{0, 1, 7}});
    const auto els = parse_svg(render(g, {}, {}, 4).svg);
    const auto glyphs = select(els, "glyph");
    const auto weights = select(els, "weight");
    ASSERT_EQ(weights.size(), 1u);
    EXPECT_EQ(weights[0].text, "7");
    const Point a = glyph_center(glyphs[0]), b = glyph_center(glyphs[1]);
    EXPECT_NEAR(weights[0].num("x"), (a.x + b.x) / 2, 0.011);
    EXPECT_NEAR(weights[0].num("y"), (a.y + b.y) / 2, 0.011);
}

TEST(Render, ByteIdenticalForSameInputs) {
    const Graph g = testing::case_study_graph();
    for (auto style : axis_variants(GraphStyles{}, AugmentAxis::Layout)) {
        EXPECT_EQ(render(g, {}, style, 99).svg, render(g, {}, style, 99).svg);
    }
}

TEST(Render, AttributesColorNodesAndOverlayMarksTarget) {
    const Graph g(false, 3, {{0, 1}, {1, 2}}, {{0, "A"}, {1, "B"}, {2, "A"}});
    RenderOverlay ov;
    ov.target = 2;
    ov.double_outline = {0};
    const auto els = parse_svg(render(g, {}, {}, 1, ov).svg);
    const auto glyphs = select(els, "glyph");
    EXPECT_EQ(glyphs[0].attrs.at("fill"), std::string(class_palette()[0]));
    EXPECT_EQ(glyphs[1].attrs.at("fill"), std::string(class_palette()[1]));
    EXPECT_EQ(glyphs[2].attrs.at("stroke"), std::string(kTargetStroke));
    EXPECT_EQ(glyphs[0].attrs.at("stroke"), "#000000");
    const auto halos = select(els, "halo");
    ASSERT_EQ(halos.size(), 1u);
    EXPECT_EQ(halos[0].group, "node0");
}

class AxisIsolation : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(AxisIsolation, OnlyTheVariedAttributeChanges) {
    const std::uint64_t seed = GetParam();
    GeneratorSpec spec = default_generator_spec(kBenchmarkTasks[seed % kBenchmarkTasks.size()], seed);
    const Graph g = generate_instance(spec).graph;
    const auto problems = testing::axis_isolation_problems(g, {}, GraphStyles{}, seed);
    EXPECT_TRUE(problems.empty()) << problems.front();
    const auto layouts = augment(g, {}, GraphStyles{}, AugmentAxis::Layout, seed);
    EXPECT_NE(layouts[1].svg, layouts[4].svg);
}

INSTANTIATE_TEST_SUITE_P(Seeds, AxisIsolation, ::testing::Range<std::uint64_t>(0, 14));

TEST(Styles, NamesParseAndCardinalities) {
    EXPECT_EQ(axis_cardinality(AugmentAxis::Layout), 6u);
    EXPECT_EQ(axis_cardinality(AugmentAxis::NodeShape), 3u);
    EXPECT_EQ(axis_cardinality(AugmentAxis::NodeOutline), 4u);
    EXPECT_EQ(axis_cardinality(AugmentAxis::EdgeThickness), 4u);
    for (auto s : kNodeShapes) EXPECT_EQ(parse_shape(shape_name(s)), s);
    for (auto o : kNodeOutlines) EXPECT_EQ(parse_outline(outline_name(o)), o);
    for (auto t : kEdgeThicknesses) EXPECT_EQ(parse_thickness(thickness_name(t)), t);
    EXPECT_EQ(parse_thickness("3"), EdgeThickness::Thick);
    EXPECT_EQ(parse_thickness("heavy"), EdgeThickness::Heavy);
    EXPECT_FALSE(parse_thickness("5").has_value());
    for (auto a : {AugmentAxis::Layout, AugmentAxis::NodeShape, AugmentAxis::NodeOutline, AugmentAxis::EdgeThickness}) {
        EXPECT_EQ(parse_axis(axis_name(a)), a);
        EXPECT_EQ(axis_variants(GraphStyles{}, a).size(), axis_cardinality(a));
    }
    EXPECT_EQ(axis_value_name(AugmentAxis::EdgeThickness, GraphStyles{}), "1.0");
}

TEST(Dot, CarriesStylesAndWeights) {
    const Graph g(true, 3, {{0, 1, 4}, {1, 2, 9}});
    GraphStyles s{LayoutAlgorithm::Circular, NodeShape::Box, NodeOutline::Dashed, EdgeThickness::Thick};
    const std::string dot = to_dot(g, {}, s);
    EXPECT_EQ(dot.rfind("digraph G {", 0), 0u);
    EXPECT_NE(dot.find("layout=circo"), std::string::npos);
    EXPECT_NE(dot.find("shape=box"), std::string::npos);
    EXPECT_NE(dot.find("style=\"dashed\""), std::string::npos);
    EXPECT_NE(dot.find("penwidth=3.0"), std::string::npos);
    EXPECT_NE(dot.find("0 -> 1 [label=\"4\"]"), std::string::npos);
    EXPECT_NE(dot.find("1 -> 2 [label=\"9\"]"), std::string::npos);
}

}  // namespace
}  // namespace gita
