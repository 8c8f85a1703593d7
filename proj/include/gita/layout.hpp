// SPDX-License-Identifier: Apache-2.0
//
// Deterministic graph layout engines. All positions are returned in canvas
// pixel coordinates inside [margin, size - margin].

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gita/graph.hpp"

namespace gita {

enum class LayoutAlgorithm { Layered, Spring, Stress, Multilevel, Circular, Radial };

inline constexpr std::array<LayoutAlgorithm, 6> kLayoutAlgorithms = {
    LayoutAlgorithm::Layered,    LayoutAlgorithm::Spring,   LayoutAlgorithm::Stress,
    LayoutAlgorithm::Multilevel, LayoutAlgorithm::Circular, LayoutAlgorithm::Radial};

std::string_view layout_name(LayoutAlgorithm a);
std::optional<LayoutAlgorithm> parse_layout(std::string_view name);

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Canvas {
    double width = 1024.0;
    double height = 1024.0;
    double margin = 48.0;
};

struct LayoutResult {
    std::vector<Point> positions;
    int iterations_used = 0;
    /// Final objective value (spring: force potential, stress: weighted stress);
    /// 0 for the purely geometric engines.
    double energy = 0.0;
    /// Objective at the initial state, every checkpoint, and the end.
    std::vector<double> energy_trace;
    /// Set when the requested engine could not be applied and another one was used.
    std::optional<std::string> warning;
};

/// Fixed iteration budget of the spring engine.
inline constexpr int kSpringIterations = 200;

/// Pure function of (g, algorithm, seed, canvas).
///   spring     Fruchterman-Reingold forces, linear cooling, seeded scatter start
///   stress     stress majorization over BFS hop distances
///   multilevel matching-based coarsening, spring on the coarsest graph, refinement
///   layered    longest-path layering + barycenter ordering (cyclic digraph: spring + warning)
///   circular   nodes on one circle ordered by id, starting at the top
///   radial     BFS shells around node 0
LayoutResult layout(const Graph& g, LayoutAlgorithm algorithm, std::uint64_t seed, const Canvas& canvas = {});

}  // namespace gita
