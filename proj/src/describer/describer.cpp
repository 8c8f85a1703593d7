// SPDX-License-Identifier: Apache-2.0

#include "gita/describer.hpp"

#include <charconv>
#include <limits>

#include "gita/error.hpp"

namespace gita {
namespace {

constexpr std::string_view kUndirectedSemantics =
    "(i,j) means that node i and node j are connected with an undirected edge.";
constexpr std::string_view kDirectedSemantics =
    "(i,j) means that node i and node j are connected with a directed edge from node i to node j.";

constexpr std::array<DescribeTemplate, 8> kTemplates = {{
    {{false, DescribeVariant::Plain},
     "In an undirected graph, (i,j) means that node i and node j are connected with an undirected edge. "
     "The nodes are numbered from [P] to [P], and the edges are: ([P], [P]) , ([P], [P]) , ..."},
    {{false, DescribeVariant::NodeAttrs},
     "In an undirected graph, the nodes are numbered from [P] to [P], and every node has an attribute. "
     "(i,j) means that node i and node j are connected with an undirected edge.\n"
     "The attributes of nodes are:\nnode [P]: [P]\nnode [P]: [P]\n...\n"
     "The edges are: ([P],[P]) ([P],[P]) ..."},
    {{false, DescribeVariant::EdgeWeights},
     "In an undirected graph, the nodes are numbered from [P] to [P], and the edges are:\n"
     "an edge between node [P] and node [P] with weight [P],\n"
     "an edge between node [P] and node [P] with weight [P],\n...\n"
     "an edge between node [P] and node [P] with weight [P]."},
    {{false, DescribeVariant::Both},
     "In an undirected graph, the nodes are numbered from [P] to [P], and every node has an attribute.\n"
     "The attributes of nodes are:\nnode [P]: [P]\nnode [P]: [P]\n...\n"
     "And the edges are:\n"
     "an edge between node [P] and node [P] with weight [P],\n"
     "an edge between node [P] and node [P] with weight [P],\n...\n"
     "an edge between node [P] and node [P] with weight [P]."},
    {{true, DescribeVariant::Plain},
     "In a directed graph, (i,j) means that node i and node j are connected with a directed edge from node i to node j. "
     "The nodes are numbered from [P] to [P], and the edges are: ([P], [P]) , ([P], [P]) , ..."},
    {{true, DescribeVariant::NodeAttrs},
     "In a directed graph, the nodes are numbered from [P] to [P], and every node has an attribute. "
     "(i,j) means that node i and node j are connected with a directed edge from node i to node j.\n"
     "The attributes of nodes are:\nnode [P]: [P]\nnode [P]: [P]\n...\n"
     "The edges are: ([P],[P]) ([P],[P]) ..."},
    {{true, DescribeVariant::EdgeWeights},
     "In a directed graph, the nodes are numbered from [P] to [P], and the edges are:\n"
     "an edge from node [P] to node [P] with weight [P],\n"
     "an edge from node [P] to node [P] with weight [P],\n...\n"
     "an edge from node [P] to node [P] with weight [P]."},
    {{true, DescribeVariant::Both},
     "In a directed graph, the nodes are numbered from [P] to [P], and every node has an attribute.\n"
     "The attributes of nodes are:\nnode [P]: [P]\nnode [P]: [P]\n...\n"
     "And the edges are:\n"
     "an edge from node [P] to node [P] with weight [P],\n"
     "an edge from node [P] to node [P] with weight [P],\n...\n"
     "an edge from node [P] to node [P] with weight [P]."},
}};

std::string_view header(bool directed) { return directed ? "In a directed graph, " : "In an undirected graph, "; }
std::string_view semantics(bool directed) { return directed ? kDirectedSemantics : kUndirectedSemantics; }

std::string weighted_line(bool directed, const Edge& e) {
    const std::string u = std::to_string(e.u), v = std::to_string(e.v);
    return (directed ? "an edge from node " + u + " to node " + v : "an edge between node " + u + " and node " + v) +
           " with weight " + std::to_string(*e.weight);
}

void append_weighted_edges(std::string& out, const Graph& g) {
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        out += '\n';
        out += weighted_line(g.directed(), g.edges()[i]);
        out += i + 1 == g.edge_count() ? '.' : ',';
    }
}

void append_attributes(std::string& out, const Graph& g) {
    out += "\nThe attributes of nodes are:";
    for (const auto& [id, attr] : g.node_attrs()) out += "\nnode " + std::to_string(id) + ": " + attr;
}

class Cursor {
  public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ == text_.size(); }

    bool try_consume(std::string_view lit) {
        if (text_.substr(pos_).starts_with(lit)) {
            pos_ += lit.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view lit) {
        if (!try_consume(lit)) throw ParseError("expected \"" + std::string(lit) + "\"", pos_);
    }

    std::int64_t integer() {
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first) throw ParseError("expected an integer", pos_);
        const std::size_t len = static_cast<std::size_t>(ptr - first);
        const std::string_view digits = text_.substr(pos_, len);
        if ((digits.size() > 1 && digits[0] == '0') || digits.starts_with("-0")) {
            throw ParseError("integer with leading zero", pos_);
        }
        pos_ += len;
        return value;
    }

    NodeId node() {
        const std::size_t at = pos_;
        const std::int64_t v = integer();
        if (v < 0 || v > std::numeric_limits<NodeId>::max()) throw ParseError("node id out of range", at);
        return static_cast<NodeId>(v);
    }

    std::string rest_of_line() {
        const std::size_t nl = text_.find('\n', pos_);
        const std::size_t end = nl == std::string_view::npos ? text_.size() : nl;
        std::string out(text_.substr(pos_, end - pos_));
        pos_ = end;
        return out;
    }

    void expect_end() {
        if (!at_end()) throw ParseError("trailing text", pos_);
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

std::vector<Edge> parse_plain_edges(Cursor& c) {
    std::vector<Edge> edges;
    if (c.at_end()) return edges;
    c.expect(" ");
    do {
        c.expect("(");
        const NodeId u = c.node();
        c.expect(", ");
        const NodeId v = c.node();
        c.expect(")");
        edges.push_back({u, v, std::nullopt});
    } while (c.try_consume(" , "));
    return edges;
}

std::vector<Edge> parse_compact_edges(Cursor& c) {
    std::vector<Edge> edges;
    if (c.at_end()) return edges;
    c.expect(" ");
    do {
        c.expect("(");
        const NodeId u = c.node();
        c.expect(",");
        const NodeId v = c.node();
        c.expect(")");
        edges.push_back({u, v, std::nullopt});
    } while (c.try_consume(" "));
    return edges;
}

std::vector<Edge> parse_weighted_edges(Cursor& c, bool directed) {
    std::vector<Edge> edges;
    while (!c.at_end()) {
        c.expect("\n");
        Edge e;
        if (directed) {
            c.expect("an edge from node ");
            e.u = c.node();
            c.expect(" to node ");
        } else {
            c.expect("an edge between node ");
            e.u = c.node();
            c.expect(" and node ");
        }
        e.v = c.node();
        c.expect(" with weight ");
        e.weight = c.integer();
        edges.push_back(e);
        if (c.try_consume(".")) break;
        c.expect(",");
        if (c.at_end()) throw ParseError("edge list ends without a period", c.pos());
    }
    return edges;
}

std::map<NodeId, std::string> parse_attributes(Cursor& c) {
    c.expect("\nThe attributes of nodes are:");
    std::map<NodeId, std::string> attrs;
    while (c.try_consume("\nnode ")) {
        const std::size_t at = c.pos();
        const NodeId id = c.node();
        c.expect(": ");
        if (!attrs.emplace(id, c.rest_of_line()).second) throw ParseError("repeated node attribute", at);
    }
    return attrs;
}

NodeId parse_node_bound(Cursor& c) {
    c.expect("numbered from 0 to ");
    const std::size_t at = c.pos();
    if (c.try_consume("-1")) return 0;
    const std::int64_t last = c.integer();
    if (last < 0 || last >= std::numeric_limits<NodeId>::max()) throw ParseError("node bound out of range", at);
    return static_cast<NodeId>(last + 1);
}

}  // namespace

std::string category_name(const DescribeCategory& c) {
    std::string out = c.directed ? "directed_" : "undirected_";
    switch (c.variant) {
        case DescribeVariant::Plain: return out + "plain";
        case DescribeVariant::NodeAttrs: return out + "node_attrs";
        case DescribeVariant::EdgeWeights: return out + "edge_weights";
        case DescribeVariant::Both: return out + "both";
    }
    return out;
}

const std::array<DescribeTemplate, 8>& describe_templates() { return kTemplates; }

std::string template_catalog() {
    std::string out;
    for (const auto& t : kTemplates) {
        out += "== " + category_name(t.category) + " ==\n";
        out += t.body;
        out += "\n\n";
    }
    return out;
}

const DescribeTemplate& select_template(const Graph& g) {
    const bool attrs = g.has_node_attrs();
    const bool weights = g.weighted();
    const std::size_t variant = attrs && weights ? 3 : weights ? 2 : attrs ? 1 : 0;
    return kTemplates[(g.directed() ? 4 : 0) + variant];
}

GraphDescription describe(const Graph& g) {
    const DescribeTemplate& tpl = select_template(g);
    const bool directed = g.directed();
    const std::string bound = "The nodes are numbered from 0 to " + std::to_string(g.node_count() - 1);
    const std::string bound_lower = "the nodes are numbered from 0 to " + std::to_string(g.node_count() - 1);
    std::string out(header(directed));
    switch (tpl.category.variant) {
        case DescribeVariant::Plain:
            out += std::string(semantics(directed)) + " " + bound + ", and the edges are:";
            for (std::size_t i = 0; i < g.edge_count(); ++i) {
                const Edge& e = g.edges()[i];
                out += i == 0 ? " (" : " , (";
                out += std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
            }
            break;
        case DescribeVariant::NodeAttrs:
            out += bound_lower + ", and every node has an attribute. " + std::string(semantics(directed));
            append_attributes(out, g);
            out += "\nThe edges are:";
            for (const Edge& e : g.edges()) out += " (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
            break;
        case DescribeVariant::EdgeWeights:
            out += bound_lower + ", and the edges are:";
            append_weighted_edges(out, g);
            break;
        case DescribeVariant::Both:
            out += bound_lower + ", and every node has an attribute.";
            append_attributes(out, g);
            out += "\nAnd the edges are:";
            append_weighted_edges(out, g);
            break;
    }
    return {std::move(out), tpl.category};
}

Graph parse_description(std::string_view text) {
    Cursor c(text);
    c.expect("In a");
    bool directed = false;
    if (c.try_consume("n undirected graph, ")) {
        directed = false;
    } else {
        c.expect(" directed graph, ");
        directed = true;
    }

    NodeId n = 0;
    std::vector<Edge> edges;
    std::map<NodeId, std::string> attrs;
    if (c.try_consume(semantics(directed))) {
        c.expect(" The nodes are ");
        n = parse_node_bound(c);
        c.expect(", and the edges are:");
        edges = parse_plain_edges(c);
    } else {
        c.expect("the nodes are ");
        n = parse_node_bound(c);
        if (c.try_consume(", and the edges are:")) {
            edges = parse_weighted_edges(c, directed);
        } else {
            c.expect(", and every node has an attribute.");
            if (c.try_consume(" ")) {
                c.expect(semantics(directed));
                attrs = parse_attributes(c);
                c.expect("\nThe edges are:");
                edges = parse_compact_edges(c);
            } else {
                attrs = parse_attributes(c);
                c.expect("\nAnd the edges are:");
                edges = parse_weighted_edges(c, directed);
            }
        }
    }
    c.expect_end();
    return Graph(directed, n, std::move(edges), std::move(attrs));
}

}  // namespace gita
