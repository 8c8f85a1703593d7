// SPDX-License-Identifier: Apache-2.0
//
// Visual graph rendering: an SVG image of a Graph under fixed basic styles
// (canvas, resolution, backdrop) and per-image graph styles (layout, node
// shape, node outline, edge thickness).
//
// SVG structure, in emission order:
//   <metadata>      source hash, layout seed, dpi
//   <rect class="backdrop">
//   <g class="node" id="nodeN">   one per node, ascending id: glyph, optional
//                                 halo (double outline), id label
//   <g class="edge" id="edgeI">   one per edge in input order: line, optional
//                                 arrowhead (directed), optional weight label
// Edges are clipped to a shape-independent radius around each node center,
// so changing the node shape or outline never moves an edge.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gita/graph.hpp"
#include "gita/layout.hpp"

namespace gita {

/// Fixed per dataset build.
struct BasicStyles {
    int canvas_width = 1024;
    int canvas_height = 1024;
    int dpi = 96;
    std::string backdrop = "#ffffff";

    friend bool operator==(const BasicStyles&, const BasicStyles&) = default;
};

enum class NodeShape { Ellipse, Circle, Box };
enum class NodeOutline { Solid, Dashed, Dotted, Bold };
enum class EdgeThickness { Thin, Medium, Thick, Heavy };

inline constexpr std::array<NodeShape, 3> kNodeShapes = {NodeShape::Ellipse, NodeShape::Circle, NodeShape::Box};
inline constexpr std::array<NodeOutline, 4> kNodeOutlines = {NodeOutline::Solid, NodeOutline::Dashed,
                                                             NodeOutline::Dotted, NodeOutline::Bold};
inline constexpr std::array<EdgeThickness, 4> kEdgeThicknesses = {EdgeThickness::Thin, EdgeThickness::Medium,
                                                                  EdgeThickness::Thick, EdgeThickness::Heavy};

std::string_view shape_name(NodeShape s);
std::string_view outline_name(NodeOutline o);
/// "1.0", "2.0", "3.0", "4.0"
std::string_view thickness_name(EdgeThickness t);
/// Edge stroke width in points.
double thickness_points(EdgeThickness t);

std::optional<NodeShape> parse_shape(std::string_view s);
std::optional<NodeOutline> parse_outline(std::string_view s);
/// Accepts "1", "1.0", ... or "thin"/"medium"/"thick"/"heavy".
std::optional<EdgeThickness> parse_thickness(std::string_view s);

struct GraphStyles {
    LayoutAlgorithm layout = LayoutAlgorithm::Stress;
    NodeShape node_shape = NodeShape::Ellipse;
    NodeOutline node_outline = NodeOutline::Solid;
    EdgeThickness edge_thickness = EdgeThickness::Thin;

    friend bool operator==(const GraphStyles&, const GraphStyles&) = default;
};

enum class AugmentAxis { Layout, NodeShape, NodeOutline, EdgeThickness };

std::string_view axis_name(AugmentAxis a);
std::optional<AugmentAxis> parse_axis(std::string_view s);
/// Number of variants along an axis: 6, 3, 4, 4.
std::size_t axis_cardinality(AugmentAxis a);
/// Name of the axis value carried by `style` ("spring", "box", "dashed", "2.0").
std::string axis_value_name(AugmentAxis a, const GraphStyles& style);

/// Per-render decorations used by the real-world builders.
struct RenderOverlay {
    /// Explicit fill colors; overrides node_attrs-derived colors.
    std::map<NodeId, std::string> fill;
    /// Nodes drawn with a second concentric outline (link-prediction pair).
    std::vector<NodeId> double_outline;
    /// Node drawn with the target stroke color (node classification).
    std::optional<NodeId> target;
};

/// Stroke color that marks a node-classification target; no other glyph uses it.
inline constexpr std::string_view kTargetStroke = "#d62728";

/// Fixed 12-color class palette.
const std::array<std::string_view, 12>& class_palette();

struct VisualGraph {
    std::string svg;
    BasicStyles gamma;
    GraphStyles delta;
    std::uint64_t layout_seed = 0;
    /// graph_hash() of the rendered graph.
    std::string source_hash;
    std::optional<std::string> layout_warning;
};

/// Deterministic render. Nodes with attributes and no explicit overlay fill
/// are colored by the palette index of their attribute among the graph's
/// sorted distinct attribute values.
VisualGraph render(const Graph& g, const BasicStyles& gamma, const GraphStyles& delta, std::uint64_t seed,
                   const RenderOverlay& overlay = {});

/// One render per value of `axis`, all other styles held at `base`.
std::vector<VisualGraph> augment(const Graph& g, const BasicStyles& gamma, const GraphStyles& base, AugmentAxis axis,
                                 std::uint64_t seed, const RenderOverlay& overlay = {});

/// Styles of every variant along `axis`, in enum order.
std::vector<GraphStyles> axis_variants(const GraphStyles& base, AugmentAxis axis);

/// DOT text carrying the same styles (graph layout engine, node shape/style,
/// edge penwidth, weights as labels) for rendering with external engines.
std::string to_dot(const Graph& g, const BasicStyles& gamma, const GraphStyles& delta, const RenderOverlay& overlay = {});

/// Graphviz engine name matching a layout family.
std::string_view dot_engine(LayoutAlgorithm a);

}  // namespace gita
