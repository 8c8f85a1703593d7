// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include "gita/describer.hpp"
#include "support/brute_force.hpp"

namespace gita::testing {

/// Regular skeleton of each template, written independently of the
/// implementation: integers become \d+, attribute values become [^\n]+.
inline std::regex skeleton(const DescribeCategory& c) {
    const std::string g = c.directed ? "In a directed graph, " : "In an undirected graph, ";
    const std::string sem = c.directed
                                ? R"(\(i,j\) means that node i and node j are connected with a directed edge from node i to node j\.)"
                                : R"(\(i,j\) means that node i and node j are connected with an undirected edge\.)";
    const std::string bound = R"(numbered from 0 to (-1|\d+))";
    const std::string attrs = R"(\nThe attributes of nodes are:(\nnode \d+: [^\n]+)*)";
    const std::string wline = c.directed ? R"(an edge from node \d+ to node \d+ with weight \d+)"
                                         : R"(an edge between node \d+ and node \d+ with weight \d+)";
    const std::string wlist = "(\\n(" + wline + ",\\n)*" + wline + "\\.)?";
    std::string re;
    switch (c.variant) {
        case DescribeVariant::Plain:
            re = g + sem + " The nodes are " + bound + R"(, and the edges are:( \(\d+, \d+\)( , \(\d+, \d+\))*)?)";
            break;
        case DescribeVariant::NodeAttrs:
            re = g + "the nodes are " + bound + ", and every node has an attribute\\. " + sem + attrs +
                 R"(\nThe edges are:( \(\d+,\d+\))*)";
            break;
        case DescribeVariant::EdgeWeights:
            re = g + "the nodes are " + bound + ", and the edges are:" + wlist;
            break;
        case DescribeVariant::Both:
            re = g + "the nodes are " + bound + ", and every node has an attribute\\." + attrs +
                 "\\nAnd the edges are:" + wlist;
            break;
    }
    return std::regex(re);
}

inline std::vector<DescribeCategory> all_categories() {
    std::vector<DescribeCategory> out;
    for (bool d : {false, true}) {
        for (auto v : {DescribeVariant::Plain, DescribeVariant::NodeAttrs, DescribeVariant::EdgeWeights,
                       DescribeVariant::Both}) {
            out.push_back({d, v});
        }
    }
    return out;
}

inline Graph random_category_graph(std::mt19937& rng, const DescribeCategory& c) {
    const bool weights = c.variant == DescribeVariant::EdgeWeights || c.variant == DescribeVariant::Both;
    std::uniform_int_distribution<int> nd(weights ? 2 : 1, 30);
    std::uniform_real_distribution<double> pd(0.0, 0.4);
    const bool attrs = c.variant == DescribeVariant::NodeAttrs || c.variant == DescribeVariant::Both;
    Graph base = random_graph(rng, nd(rng), pd(rng), c.directed, weights, 1000);
    if (weights && base.edge_count() == 0) {
        base = Graph(c.directed, base.node_count(), {{0, 1, 1}});
    }
    std::map<NodeId, std::string> node_attrs;
    if (attrs) {
        static const std::vector<std::string> kValues = {"red", "Theory", "Neural_Networks", "class 3", "a: b", "x"};
        std::bernoulli_distribution keep(0.9);
        for (NodeId v = 0; v < base.node_count(); ++v) {
            if (keep(rng) || v == 0) node_attrs[v] = kValues[rng() % kValues.size()];
        }
    }
    return Graph(c.directed, base.node_count(), base.edges(), node_attrs);
}

}  // namespace gita::testing
