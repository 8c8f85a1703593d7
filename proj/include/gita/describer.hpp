// SPDX-License-Identifier: Apache-2.0
//
// Task-agnostic textual descriptions of graphs. One fixed template per
// category (directedness x {plain, node attributes, edge weights, both}); the
// output is byte-stable and parses back to the source graph.

#pragma once

#include <array>
#include <string>
#include <string_view>

#include "gita/graph.hpp"

namespace gita {

enum class DescribeVariant { Plain, NodeAttrs, EdgeWeights, Both };

struct DescribeCategory {
    bool directed = false;
    DescribeVariant variant = DescribeVariant::Plain;

    friend bool operator==(const DescribeCategory&, const DescribeCategory&) = default;
};

/// "undirected_plain", "directed_edge_weights", ...
std::string category_name(const DescribeCategory& c);

struct DescribeTemplate {
    DescribeCategory category;
    /// Template text with "[P]" placeholders and "..." marking repetition.
    std::string_view body;
};

/// All eight templates, undirected first, variants in enum order.
const std::array<DescribeTemplate, 8>& describe_templates();

/// Human-readable catalog of the eight templates.
std::string template_catalog();

struct GraphDescription {
    std::string text;
    DescribeCategory template_used;
};

/// Template chosen from directedness and the presence of weights and node attributes.
const DescribeTemplate& select_template(const Graph& g);

/// Fills the selected template. Node attributes are listed for the nodes that
/// carry one, in ascending id order; edges appear in graph order.
GraphDescription describe(const Graph& g);

/// Inverse of describe(). Throws ParseError (with the byte offset) on any
/// deviation from the template grammar and ParameterError when the recovered
/// graph is invalid.
Graph parse_description(std::string_view text);

}  // namespace gita
