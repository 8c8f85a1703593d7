// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gita/dataset.hpp"
#include "gita/describer.hpp"
#include "gita/error.hpp"
#include "gita/parallel.hpp"
#include "gita/questioner.hpp"
#include "gita/subgraph.hpp"

namespace gita {
namespace {

std::optional<long long> as_integer(const std::string& s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

bool comment_or_blank(std::string_view line) {
    const auto b = line.find_first_not_of(" \t\r");
    return b == std::string_view::npos || line[b] == '#' || line[b] == '%';
}

std::uint64_t pair_key(NodePair p) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.first)) << 32) |
           static_cast<std::uint32_t>(p.second);
}

NodePair ordered(NodeId a, NodeId b) { return {std::min(a, b), std::max(a, b)}; }

std::string record_name(std::string_view task, Split s, std::size_t index) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%s-%s-%06zu", std::string(task).c_str(), std::string(split_name(s)).c_str(), index);
    return buf;
}

nlohmann::ordered_json graph_json(const Graph& g) { return nlohmann::ordered_json::parse(to_json(g)); }

/// Parts of a shuffled sequence: first 10% test, next 10% valid, rest train.
struct Partition {
    std::size_t test = 0;
    std::size_t valid = 0;
};

Partition ten_ten(std::size_t n) {
    const auto tenth = static_cast<std::size_t>(std::llround(static_cast<double>(n) * 0.1));
    return {tenth, tenth};
}

}  // namespace

IngestedGraph parse_edge_list(std::istream& in) {
    IngestedGraph out;
    std::vector<std::pair<std::string, std::string>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (comment_or_blank(line)) continue;
        ++out.lines_read;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b)) throw ParseError("edge list line " + std::to_string(line_no) + " needs two ids", line_no);
        if (fields >> extra) {
            throw ParseError("edge list line " + std::to_string(line_no) + " has more than two fields", line_no);
        }
        raw.emplace_back(std::move(a), std::move(b));
    }

    std::set<std::string> names;
    for (const auto& [a, b] : raw) {
        names.insert(a);
        names.insert(b);
    }
    std::vector<std::string> ids(names.begin(), names.end());
    const bool numeric = std::ranges::all_of(ids, [](const std::string& s) { return as_integer(s).has_value(); });
    if (numeric) {
        std::ranges::sort(ids, {}, [](const std::string& s) { return *as_integer(s); });
        for (std::size_t i = 1; i < ids.size(); ++i) {
            if (*as_integer(ids[i]) == *as_integer(ids[i - 1])) {
                throw ParseError("identifiers \"" + ids[i - 1] + "\" and \"" + ids[i] + "\" denote the same node", 0);
            }
        }
    }
    std::unordered_map<std::string, NodeId> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<NodeId>(i));

    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> edges;
    for (const auto& [a, b] : raw) {
        const NodeId u = index.at(a), v = index.at(b);
        if (u == v) {
            ++out.self_loops;
            continue;
        }
        if (!seen.insert(pair_key(ordered(u, v))).second) {
            ++out.duplicate_edges;
            continue;
        }
        edges.push_back({u, v, std::nullopt});
    }
    out.graph = Graph(false, static_cast<NodeId>(ids.size()), std::move(edges));
    out.original_ids = std::move(ids);
    return out;
}

IngestedGraph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list " + path.string());
    return parse_edge_list(in);
}

std::map<NodeId, std::string> parse_labels(std::istream& in, const IngestedGraph& g) {
    std::unordered_map<std::string, NodeId> index;
    for (std::size_t i = 0; i < g.original_ids.size(); ++i) index.emplace(g.original_ids[i], static_cast<NodeId>(i));
    std::map<NodeId, std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (comment_or_blank(line)) continue;
        std::istringstream fields(line);
        std::string id, label, extra;
        if (!(fields >> id >> label)) throw ParseError("label line " + std::to_string(line_no) + " needs id and label", line_no);
        if (fields >> extra) throw ParseError("label line " + std::to_string(line_no) + " has extra fields", line_no);
        const auto it = index.find(id);
        if (it == index.end()) throw ParameterError("label for unknown node \"" + id + "\"");
        const auto [pos, inserted] = labels.emplace(it->second, label);
        if (!inserted && pos->second != label) throw ParameterError("conflicting labels for node \"" + id + "\"");
    }
    return labels;
}

std::map<NodeId, std::string> load_labels(const std::filesystem::path& path, const IngestedGraph& g) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open label file " + path.string());
    return parse_labels(in, g);
}

EdgeSplit split_edges(const Graph& g, std::uint64_t seed) {
    if (g.directed()) throw ParameterError("edge split needs an undirected graph");
    std::vector<NodePair> pairs;
    pairs.reserve(g.edge_count());
    for (const Edge& e : g.edges()) pairs.push_back(ordered(e.u, e.v));
    const Partition part = ten_ten(pairs.size());
    if (part.test == 0 || pairs.size() < part.test + part.valid + 1) {
        throw ParameterError("graph has too few edges for an 80/10/10 split");
    }
    Rng rng(derive_seed(seed, "edge-split"));
    rng.shuffle(std::span<NodePair>(pairs));
    EdgeSplit out;
    out.test.assign(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(part.test));
    out.valid.assign(pairs.begin() + static_cast<std::ptrdiff_t>(part.test),
                     pairs.begin() + static_cast<std::ptrdiff_t>(part.test + part.valid));
    out.train.assign(pairs.begin() + static_cast<std::ptrdiff_t>(part.test + part.valid), pairs.end());
    return out;
}

std::vector<NodePair> sample_negative_pairs(const Graph& g, std::size_t count, Rng& rng,
                                            const std::vector<NodePair>& exclude) {
    const auto n = static_cast<std::uint64_t>(g.node_count());
    const std::uint64_t all_pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::unordered_set<std::uint64_t> taken;
    for (const Edge& e : g.edges()) taken.insert(pair_key(ordered(e.u, e.v)));
    for (const auto& p : exclude) taken.insert(pair_key(ordered(p.first, p.second)));
    if (all_pairs < taken.size() + count) throw ParameterError("not enough non-edges to sample negatives");
    std::vector<NodePair> out;
    out.reserve(count);
    while (out.size() < count) {
        const auto u = static_cast<NodeId>(rng.uniform_int(0, g.node_count() - 1));
        const auto v = static_cast<NodeId>(rng.uniform_int(0, g.node_count() - 1));
        if (u == v) continue;
        const NodePair p = ordered(u, v);
        if (!taken.insert(pair_key(p)).second) continue;
        out.push_back(p);
    }
    return out;
}

Dataset build_link_prediction(const IngestedGraph& source, const LinkPredOptions& opt) {
    if (opt.hops < 0) throw ParameterError("hops must be non-negative");
    const Graph& full = source.graph;
    const EdgeSplit es = split_edges(full, opt.seed);
    std::vector<Edge> train_edges;
    for (const auto& [u, v] : es.train) train_edges.push_back({u, v, std::nullopt});
    const Graph train_graph(false, full.node_count(), std::move(train_edges));

    struct Candidate {
        Split split;
        NodePair pair;
        bool positive;
        std::string id;
    };
    std::vector<Candidate> cands;
    std::vector<NodePair> negatives_so_far;
    for (Split s : {Split::Train, Split::Valid, Split::Test}) {
        if (std::ranges::find(opt.splits, s) == opt.splits.end()) continue;
        const auto& pos = s == Split::Train ? es.train : s == Split::Valid ? es.valid : es.test;
        const std::size_t count = opt.max_pairs_per_split ? std::min(opt.max_pairs_per_split, pos.size()) : pos.size();
        Rng rng(derive_seed(opt.seed, "negatives/" + std::string(split_name(s))));
        const auto neg = sample_negative_pairs(full, count, rng, negatives_so_far);
        negatives_so_far.insert(negatives_so_far.end(), neg.begin(), neg.end());
        for (std::size_t i = 0; i < count; ++i) {
            cands.push_back({s, pos[i], true, record_name("linkpred", s, 2 * i)});
            cands.push_back({s, neg[i], false, record_name("linkpred", s, 2 * i + 1)});
        }
    }

    std::vector<DatasetRecord> records(cands.size());
    std::vector<std::string> images(cands.size());
    parallel_for(cands.size(), opt.jobs, [&](std::size_t i) {
        const Candidate& c = cands[i];
        const std::array<NodeId, 2> centers = {c.pair.first, c.pair.second};
        SubgraphSample sample = sample_k_hop(train_graph, centers, opt.hops);
        const NodeId lu = sample.to_local(c.pair.first), lv = sample.to_local(c.pair.second);
        // A train-split candidate must not see its own edge.
        std::vector<Edge> ctx;
        for (const Edge& e : sample.subgraph.edges()) {
            if (ordered(e.u, e.v) != ordered(lu, lv)) ctx.push_back(e);
        }
        TaskInstance inst;
        inst.task = TaskKind::LinkPred;
        inst.graph = Graph(false, sample.subgraph.node_count(), std::move(ctx));
        inst.params.endpoints = NodePair{lu, lv};
        inst.gold = make_answer(c.positive);

        const std::uint64_t layout_seed = derive_seed(opt.seed, c.id);
        RenderOverlay overlay;
        overlay.double_outline = {std::min(lu, lv), std::max(lu, lv)};
        images[i] = render(inst.graph, opt.gamma, opt.style, layout_seed, overlay).svg;
        const TaskQuery q = build_query(inst, describe(inst.graph));

        DatasetRecord& r = records[i];
        r.id = c.id;
        r.task = TaskKind::LinkPred;
        r.image = "images/linkpred/" + c.id + ".svg";
        r.query = q.text;
        r.vo_query = q.vo_variant;
        r.answer = inst.gold.canonical_text;
        r.meta["split"] = split_name(c.split);
        r.meta["pair"] = {source.original_ids[static_cast<std::size_t>(c.pair.first)],
                          source.original_ids[static_cast<std::size_t>(c.pair.second)]};
        r.meta["positive"] = c.positive;
        r.meta["hops"] = opt.hops;
        r.meta["layout_seed"] = layout_seed;
        r.meta["graph_hash"] = graph_hash(inst.graph);
        r.meta["nodes"] = inst.graph.node_count();
        r.meta["edges"] = inst.graph.edge_count();
        r.meta["graph"] = graph_json(inst.graph);
        r.meta["params"] = params_to_json(inst.params);
    });

    Dataset ds;
    ds.manifest.subset = "linkpred";
    ds.manifest.seed = opt.seed;
    ds.manifest.split_seed = opt.seed;
    ds.manifest.gamma = opt.gamma;
    ds.manifest.base_style = opt.style;
    ds.manifest.params = {{"hops", opt.hops},
                          {"source_nodes", full.node_count()},
                          {"source_edges", full.edge_count()},
                          {"edge_split", {{"train", es.train.size()}, {"valid", es.valid.size()}, {"test", es.test.size()}}},
                          {"max_pairs_per_split", opt.max_pairs_per_split}};
    for (std::size_t i = 0; i < records.size(); ++i) {
        ds.manifest.split[records[i].id] = cands[i].split;
        ++ds.manifest.counts[TaskKind::LinkPred];
        ds.images.emplace(records[i].image, std::move(images[i]));
        ds.records.push_back(std::move(records[i]));
    }
    return ds;
}

NodeClassBuild build_node_classification(const IngestedGraph& source, const std::map<NodeId, std::string>& labels,
                                         const NodeClassOptions& opt) {
    if (opt.hops < 0) throw ParameterError("hops must be non-negative");
    std::set<std::string> class_set;
    for (const auto& [_, l] : labels) class_set.insert(l);
    const std::vector<std::string> classes(class_set.begin(), class_set.end());
    if (classes.size() > class_palette().size()) {
        throw ParameterError("at most " + std::to_string(class_palette().size()) + " classes can be colored");
    }
    std::map<std::string, std::string> color;
    for (std::size_t i = 0; i < classes.size(); ++i) color[classes[i]] = std::string(class_palette()[i]);

    std::vector<NodeId> labeled;
    for (const auto& [id, _] : labels) labeled.push_back(id);
    Rng rng(derive_seed(opt.seed, "label-split"));
    rng.shuffle(std::span<NodeId>(labeled));
    const Partition part = ten_ten(labeled.size());
    if (part.test == 0) throw ParameterError("too few labeled nodes for an 80/10/10 split");
    std::map<NodeId, std::string> train_labels;
    std::vector<std::pair<Split, NodeId>> targets;
    std::map<Split, std::size_t> taken;
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        const Split s = i < part.test ? Split::Test : i < part.test + part.valid ? Split::Valid : Split::Train;
        if (s == Split::Train) train_labels[labeled[i]] = labels.at(labeled[i]);
        if (std::ranges::find(opt.splits, s) == opt.splits.end()) continue;
        if (opt.max_targets_per_split && taken[s] >= opt.max_targets_per_split) continue;
        ++taken[s];
        targets.emplace_back(s, labeled[i]);
    }
    std::ranges::stable_sort(targets, {}, [](const auto& t) { return static_cast<int>(t.first); });

    std::vector<std::optional<DatasetRecord>> records(targets.size());
    std::vector<std::string> images(targets.size());
    std::vector<std::string> ids(targets.size());
    {
        std::map<Split, std::size_t> counter;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            ids[i] = record_name("nodeclass", targets[i].first, counter[targets[i].first]++);
        }
    }
    parallel_for(targets.size(), opt.jobs, [&](std::size_t i) {
        const auto [split, target] = targets[i];
        const SubgraphSample sample = sample_k_hop(source.graph, target, opt.hops);
        if (sample.subgraph.node_count() <= 1) return;
        const NodeId lt = sample.to_local(target);
        std::map<NodeId, std::string> attrs;
        RenderOverlay overlay;
        for (NodeId local = 0; local < sample.subgraph.node_count(); ++local) {
            const NodeId orig = sample.original_ids[static_cast<std::size_t>(local)];
            if (orig == target) continue;
            if (auto it = train_labels.find(orig); it != train_labels.end()) {
                attrs[local] = it->second;
                overlay.fill[local] = color.at(it->second);
            }
        }
        overlay.target = lt;
        TaskInstance inst;
        inst.task = TaskKind::NodeClass;
        inst.graph = Graph(false, sample.subgraph.node_count(), sample.subgraph.edges(), std::move(attrs));
        inst.params.target = lt;
        inst.params.class_labels = classes;
        inst.gold = make_answer(labels.at(target));

        const std::uint64_t layout_seed = derive_seed(opt.seed, ids[i]);
        images[i] = render(inst.graph, opt.gamma, opt.style, layout_seed, overlay).svg;
        const TaskQuery q = build_query(inst, describe(inst.graph));
        DatasetRecord r;
        r.id = ids[i];
        r.task = TaskKind::NodeClass;
        r.image = "images/nodeclass/" + ids[i] + ".svg";
        r.query = q.text;
        r.vo_query = q.vo_variant;
        r.answer = inst.gold.canonical_text;
        r.meta["split"] = split_name(split);
        r.meta["target"] = source.original_ids[static_cast<std::size_t>(target)];
        r.meta["hops"] = opt.hops;
        r.meta["layout_seed"] = layout_seed;
        r.meta["graph_hash"] = graph_hash(inst.graph);
        r.meta["nodes"] = inst.graph.node_count();
        r.meta["edges"] = inst.graph.edge_count();
        r.meta["graph"] = graph_json(inst.graph);
        r.meta["params"] = params_to_json(inst.params);
        records[i] = std::move(r);
    });

    NodeClassBuild out;
    Dataset& ds = out.dataset;
    ds.manifest.subset = "nodeclass";
    ds.manifest.seed = opt.seed;
    ds.manifest.split_seed = opt.seed;
    ds.manifest.gamma = opt.gamma;
    ds.manifest.base_style = opt.style;
    nlohmann::ordered_json class_colors = nlohmann::ordered_json::object();
    for (const auto& c : classes) class_colors[c] = color[c];
    ds.manifest.params = {{"hops", opt.hops},
                          {"source_nodes", source.graph.node_count()},
                          {"source_edges", source.graph.edge_count()},
                          {"labeled_nodes", labeled.size()},
                          {"class_colors", std::move(class_colors)},
                          {"max_targets_per_split", opt.max_targets_per_split}};
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!records[i]) {
            out.warnings.push_back("target " + source.original_ids[static_cast<std::size_t>(targets[i].second)] +
                                   " has an empty neighborhood; skipped");
            continue;
        }
        ds.manifest.split[records[i]->id] = targets[i].first;
        ++ds.manifest.counts[TaskKind::NodeClass];
        ds.images.emplace(records[i]->image, std::move(images[i]));
        ds.records.push_back(std::move(*records[i]));
    }
    return out;
}

}  // namespace gita
