// SPDX-License-Identifier: Apache-2.0

#include "gita/visualizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "gita/error.hpp"

namespace gita {
namespace {

constexpr std::string_view kFont = "Helvetica,Arial,sans-serif";
constexpr std::string_view kInk = "#000000";
constexpr std::string_view kDefaultFill = "#ffffff";
constexpr double kArrowLength = 12.0;
constexpr double kArrowHalfWidth = 5.0;
constexpr double kHaloGap = 4.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v + 0.0);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

double node_radius(NodeId n) {
    return std::clamp(320.0 / std::sqrt(static_cast<double>(std::max<NodeId>(n, 1))), 8.0, 22.0);
}

struct Stroke {
    double width_px;
    std::string_view dasharray;
};

Stroke outline_stroke(NodeOutline o) {
    switch (o) {
        case NodeOutline::Solid: return {1.5, "none"};
        case NodeOutline::Dashed: return {1.5, "6,3"};
        case NodeOutline::Dotted: return {1.5, "1.5,3"};
        case NodeOutline::Bold: return {3.0, "none"};
    }
    return {1.5, "none"};
}

std::string glyph(NodeShape shape, Point c, double r, std::string_view cls, std::string_view fill,
                  std::string_view stroke, const Stroke& s) {
    std::string paint = " fill=\"" + std::string(fill) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
                        num(s.width_px) + "\" stroke-dasharray=\"" + std::string(s.dasharray) + "\"/>";
    switch (shape) {
        case NodeShape::Ellipse:
            return "<ellipse class=\"" + std::string(cls) + "\" cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" rx=\"" +
                   num(r) + "\" ry=\"" + num(r * 0.72) + "\"" + paint;
        case NodeShape::Circle:
            return "<circle class=\"" + std::string(cls) + "\" cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" +
                   num(r) + "\"" + paint;
        case NodeShape::Box: {
            const double hw = r * 0.85, hh = r * 0.62;
            return "<rect class=\"" + std::string(cls) + "\" x=\"" + num(c.x - hw) + "\" y=\"" + num(c.y - hh) +
                   "\" width=\"" + num(2 * hw) + "\" height=\"" + num(2 * hh) + "\"" + paint;
        }
    }
    return {};
}

std::string text_element(std::string_view cls, Point at, double font_size, std::string_view body) {
    return "<text class=\"" + std::string(cls) + "\" x=\"" + num(at.x) + "\" y=\"" + num(at.y) +
           "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"" + std::string(kFont) +
           "\" font-size=\"" + num(font_size) + "\" fill=\"" + std::string(kInk) + "\">" + xml_escape(body) + "</text>";
}

std::map<NodeId, std::string> attribute_fills(const Graph& g) {
    std::set<std::string> distinct;
    for (const auto& [_, attr] : g.node_attrs()) distinct.insert(attr);
    std::map<std::string, std::string> color_of;
    std::size_t i = 0;
    for (const auto& attr : distinct) color_of[attr] = std::string(class_palette()[i++ % class_palette().size()]);
    std::map<NodeId, std::string> fills;
    for (const auto& [id, attr] : g.node_attrs()) fills[id] = color_of[attr];
    return fills;
}

}  // namespace

std::string_view shape_name(NodeShape s) {
    switch (s) {
        case NodeShape::Ellipse: return "ellipse";
        case NodeShape::Circle: return "circle";
        case NodeShape::Box: return "box";
    }
    return "unknown";
}

std::string_view outline_name(NodeOutline o) {
    switch (o) {
        case NodeOutline::Solid: return "solid";
        case NodeOutline::Dashed: return "dashed";
        case NodeOutline::Dotted: return "dotted";
        case NodeOutline::Bold: return "bold";
    }
    return "unknown";
}

std::string_view thickness_name(EdgeThickness t) {
    switch (t) {
        case EdgeThickness::Thin: return "1.0";
        case EdgeThickness::Medium: return "2.0";
        case EdgeThickness::Thick: return "3.0";
        case EdgeThickness::Heavy: return "4.0";
    }
    return "unknown";
}

double thickness_points(EdgeThickness t) {
    switch (t) {
        case EdgeThickness::Thin: return 1.0;
        case EdgeThickness::Medium: return 2.0;
        case EdgeThickness::Thick: return 3.0;
        case EdgeThickness::Heavy: return 4.0;
    }
    return 1.0;
}

std::optional<NodeShape> parse_shape(std::string_view s) {
    for (auto v : kNodeShapes) {
        if (shape_name(v) == s) return v;
    }
    return std::nullopt;
}

std::optional<NodeOutline> parse_outline(std::string_view s) {
    for (auto v : kNodeOutlines) {
        if (outline_name(v) == s) return v;
    }
    return std::nullopt;
}

std::optional<EdgeThickness> parse_thickness(std::string_view s) {
    static constexpr std::array<std::string_view, 4> kWords = {"thin", "medium", "thick", "heavy"};
    static constexpr std::array<std::string_view, 4> kShort = {"1", "2", "3", "4"};
    for (std::size_t i = 0; i < kEdgeThicknesses.size(); ++i) {
        if (s == thickness_name(kEdgeThicknesses[i]) || s == kWords[i] || s == kShort[i]) return kEdgeThicknesses[i];
    }
    return std::nullopt;
}

std::string_view axis_name(AugmentAxis a) {
    switch (a) {
        case AugmentAxis::Layout: return "layout";
        case AugmentAxis::NodeShape: return "node_shape";
        case AugmentAxis::NodeOutline: return "node_outline";
        case AugmentAxis::EdgeThickness: return "edge_thickness";
    }
    return "unknown";
}

std::optional<AugmentAxis> parse_axis(std::string_view s) {
    for (auto a : {AugmentAxis::Layout, AugmentAxis::NodeShape, AugmentAxis::NodeOutline, AugmentAxis::EdgeThickness}) {
        if (axis_name(a) == s) return a;
    }
    if (s == "shape") return AugmentAxis::NodeShape;
    if (s == "outline") return AugmentAxis::NodeOutline;
    if (s == "thickness") return AugmentAxis::EdgeThickness;
    return std::nullopt;
}

std::size_t axis_cardinality(AugmentAxis a) {
    switch (a) {
        case AugmentAxis::Layout: return kLayoutAlgorithms.size();
        case AugmentAxis::NodeShape: return kNodeShapes.size();
        case AugmentAxis::NodeOutline: return kNodeOutlines.size();
        case AugmentAxis::EdgeThickness: return kEdgeThicknesses.size();
    }
    return 0;
}

std::string axis_value_name(AugmentAxis a, const GraphStyles& style) {
    switch (a) {
        case AugmentAxis::Layout: return std::string(layout_name(style.layout));
        case AugmentAxis::NodeShape: return std::string(shape_name(style.node_shape));
        case AugmentAxis::NodeOutline: return std::string(outline_name(style.node_outline));
        case AugmentAxis::EdgeThickness: return std::string(thickness_name(style.edge_thickness));
    }
    return {};
}

const std::array<std::string_view, 12>& class_palette() {
    static constexpr std::array<std::string_view, 12> kPalette = {
        "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
        "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
    return kPalette;
}

VisualGraph render(const Graph& g, const BasicStyles& gamma, const GraphStyles& delta, std::uint64_t seed,
                   const RenderOverlay& overlay) {
    if (gamma.canvas_width <= 0 || gamma.canvas_height <= 0 || gamma.dpi <= 0) {
        throw ParameterError("render: canvas size and dpi must be positive");
    }
    VisualGraph out;
    out.gamma = gamma;
    out.delta = delta;
    out.layout_seed = seed;
    out.source_hash = graph_hash(g);

    const Canvas canvas{static_cast<double>(gamma.canvas_width), static_cast<double>(gamma.canvas_height), 48.0};
    std::vector<Point> pos;
    if (g.node_count() > 0) {
        auto placed = layout(g, delta.layout, seed, canvas);
        out.layout_warning = std::move(placed.warning);
        pos = std::move(placed.positions);
    }

    const double r = node_radius(g.node_count());
    const double font_size = std::max(8.0, std::round(r * 0.7));
    const Stroke node_stroke = outline_stroke(delta.node_outline);
    const double edge_px = thickness_points(delta.edge_thickness) * gamma.dpi / 72.0;
    auto fills = attribute_fills(g);
    for (const auto& [id, color] : overlay.fill) fills[id] = color;
    const std::set<NodeId> halos(overlay.double_outline.begin(), overlay.double_outline.end());

    std::string svg;
    svg.reserve(512 + 400 * static_cast<std::size_t>(g.node_count()) + 300 * g.edge_count());
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(gamma.canvas_width) +
           "px\" height=\"" + std::to_string(gamma.canvas_height) + "px\" viewBox=\"0 0 " +
           std::to_string(gamma.canvas_width) + " " + std::to_string(gamma.canvas_height) + "\">\n";
    svg += "<metadata>source=" + out.source_hash + " layout_seed=" + std::to_string(seed) +
           " dpi=" + std::to_string(gamma.dpi) + "</metadata>\n";
    svg += "<rect class=\"backdrop\" x=\"0\" y=\"0\" width=\"" + std::to_string(gamma.canvas_width) + "\" height=\"" +
           std::to_string(gamma.canvas_height) + "\" fill=\"" + xml_escape(gamma.backdrop) + "\"/>\n";

    for (NodeId v = 0; v < g.node_count(); ++v) {
        const Point c = pos[static_cast<std::size_t>(v)];
        const auto fill_it = fills.find(v);
        const std::string fill = fill_it == fills.end() ? std::string(kDefaultFill) : fill_it->second;
        const std::string_view stroke = overlay.target == v ? kTargetStroke : kInk;
        svg += "<g class=\"node\" id=\"node" + std::to_string(v) + "\">\n";
        svg += glyph(delta.node_shape, c, r, "glyph", xml_escape(fill), stroke, node_stroke) + "\n";
        if (halos.contains(v)) svg += glyph(delta.node_shape, c, r + kHaloGap, "halo", "none", stroke, node_stroke) + "\n";
        svg += text_element("label", c, font_size, std::to_string(v)) + "\n";
        svg += "</g>\n";
    }

    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        const Point a = pos[static_cast<std::size_t>(e.u)], b = pos[static_cast<std::size_t>(e.v)];
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len = std::hypot(dx, dy);
        const double ux = len > 0 ? dx / len : 0.0, uy = len > 0 ? dy / len : 0.0;
        const double clip = len > 2.0 * r ? r : 0.0;
        const Point start{a.x + ux * clip, a.y + uy * clip};
        const Point tip{b.x - ux * clip, b.y - uy * clip};
        Point end = tip;
        if (g.directed() && len > 2.0 * r + kArrowLength) end = {tip.x - ux * kArrowLength, tip.y - uy * kArrowLength};

        svg += "<g class=\"edge\" id=\"edge" + std::to_string(i) + "\">\n";
        svg += "<path class=\"line\" d=\"M" + num(start.x) + "," + num(start.y) + " L" + num(end.x) + "," + num(end.y) +
               "\" fill=\"none\" stroke=\"" + std::string(kInk) + "\" stroke-width=\"" + num(edge_px) + "\"/>\n";
        if (g.directed()) {
            const Point base{tip.x - ux * kArrowLength, tip.y - uy * kArrowLength};
            const Point left{base.x - uy * kArrowHalfWidth, base.y + ux * kArrowHalfWidth};
            const Point right{base.x + uy * kArrowHalfWidth, base.y - ux * kArrowHalfWidth};
            svg += "<polygon class=\"arrowhead\" points=\"" + num(tip.x) + "," + num(tip.y) + " " + num(left.x) + "," +
                   num(left.y) + " " + num(right.x) + "," + num(right.y) + "\" fill=\"" + std::string(kInk) +
                   "\" stroke=\"none\"/>\n";
        }
        if (e.weight) {
            svg += text_element("weight", {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}, font_size, std::to_string(*e.weight)) + "\n";
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    out.svg = std::move(svg);
    return out;
}

std::vector<GraphStyles> axis_variants(const GraphStyles& base, AugmentAxis axis) {
    std::vector<GraphStyles> out;
    switch (axis) {
        case AugmentAxis::Layout:
            for (auto v : kLayoutAlgorithms) out.push_back({v, base.node_shape, base.node_outline, base.edge_thickness});
            break;
        case AugmentAxis::NodeShape:
            for (auto v : kNodeShapes) out.push_back({base.layout, v, base.node_outline, base.edge_thickness});
            break;
        case AugmentAxis::NodeOutline:
            for (auto v : kNodeOutlines) out.push_back({base.layout, base.node_shape, v, base.edge_thickness});
            break;
        case AugmentAxis::EdgeThickness:
            for (auto v : kEdgeThicknesses) out.push_back({base.layout, base.node_shape, base.node_outline, v});
            break;
    }
    return out;
}

std::vector<VisualGraph> augment(const Graph& g, const BasicStyles& gamma, const GraphStyles& base, AugmentAxis axis,
                                 std::uint64_t seed, const RenderOverlay& overlay) {
    std::vector<VisualGraph> out;
    for (const auto& style : axis_variants(base, axis)) out.push_back(render(g, gamma, style, seed, overlay));
    return out;
}

std::string_view dot_engine(LayoutAlgorithm a) {
    switch (a) {
        case LayoutAlgorithm::Layered: return "dot";
        case LayoutAlgorithm::Spring: return "fdp";
        case LayoutAlgorithm::Stress: return "neato";
        case LayoutAlgorithm::Multilevel: return "sfdp";
        case LayoutAlgorithm::Circular: return "circo";
        case LayoutAlgorithm::Radial: return "twopi";
    }
    return "dot";
}

std::string to_dot(const Graph& g, const BasicStyles& gamma, const GraphStyles& delta, const RenderOverlay& overlay) {
    const std::string_view connector = g.directed() ? " -> " : " -- ";
    auto fills = attribute_fills(g);
    for (const auto& [id, color] : overlay.fill) fills[id] = color;
    const std::set<NodeId> halos(overlay.double_outline.begin(), overlay.double_outline.end());
    char size[64];
    std::snprintf(size, sizeof size, "%.2f,%.2f!", static_cast<double>(gamma.canvas_width) / gamma.dpi,
                  static_cast<double>(gamma.canvas_height) / gamma.dpi);

    std::string dot = g.directed() ? "digraph G {\n" : "graph G {\n";
    dot += "  graph [layout=" + std::string(dot_engine(delta.layout)) + ", bgcolor=\"" + gamma.backdrop +
           "\", size=\"" + size + "\", dpi=" + std::to_string(gamma.dpi) + "];\n";
    dot += "  node [shape=" + std::string(shape_name(delta.node_shape)) + ", style=\"" +
           std::string(outline_name(delta.node_outline)) + "\"];\n";
    char penwidth[32];
    std::snprintf(penwidth, sizeof penwidth, "%.1f", thickness_points(delta.edge_thickness));
    dot += "  edge [penwidth=" + std::string(penwidth) + "];\n";
    for (NodeId v = 0; v < g.node_count(); ++v) {
        dot += "  " + std::to_string(v) + " [label=\"" + std::to_string(v) + "\"";
        if (auto it = fills.find(v); it != fills.end()) {
            dot += ", style=\"filled," + std::string(outline_name(delta.node_outline)) + "\", fillcolor=\"" + it->second + "\"";
        }
        if (halos.contains(v)) dot += ", peripheries=2";
        if (overlay.target == v) dot += ", color=\"" + std::string(kTargetStroke) + "\"";
        dot += "];\n";
    }
    for (const Edge& e : g.edges()) {
        dot += "  " + std::to_string(e.u) + std::string(connector) + std::to_string(e.v);
        if (e.weight) dot += " [label=\"" + std::to_string(*e.weight) + "\"]";
        dot += ";\n";
    }
    dot += "}\n";
    return dot;
}

}  // namespace gita
