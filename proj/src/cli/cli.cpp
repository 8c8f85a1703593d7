// SPDX-License-Identifier: Apache-2.0

#include "gita/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "gita/dataset.hpp"
#include "gita/describer.hpp"
#include "gita/digest.hpp"
#include "gita/error.hpp"
#include "gita/eval.hpp"
#include "gita/generator.hpp"
#include "gita/oracles.hpp"
#include "gita/rng.hpp"
#include "gita/subgraph.hpp"
#include "gita/visualizer.hpp"

namespace gita {

namespace {

namespace fs = std::filesystem;

/// Semantic usage problem detected after parsing (exit code 2).
class UsageError : public Error {
  public:
    using Error::Error;
};

/// JSON reader and writer for CLI11 configuration. Objects nest subcommands.
class ConfigJson : public CLI::Config {
  public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        return to_json(app, default_also).dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j = nlohmann::json::parse(input, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
        std::vector<CLI::ConfigItem> items;
        flatten(j, "", {}, items);
        return items;
    }

  private:
    static nlohmann::ordered_json to_json(const CLI::App* app, bool default_also) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const CLI::Option* opt : app->get_options({})) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
            const std::string name = opt->get_lnames()[0];
            if (opt->get_type_size() != 0) {
                const bool multi = opt->get_expected_max() > 1;
                if (opt->count() > 0) {
                    j[name] = typed(opt->results(), multi);
                } else if (default_also && !opt->get_default_str().empty()) {
                    std::string d = opt->get_default_str();
                    std::vector<std::string> parts;
                    if (d.size() >= 2 && d.front() == '[' && d.back() == ']') {
                        std::stringstream ss(d.substr(1, d.size() - 2));
                        for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
                    } else {
                        parts.push_back(d);
                    }
                    j[name] = typed(parts, multi);
                }
            } else if (opt->count() > 0) {
                j[name] = true;
            } else if (default_also) {
                j[name] = false;
            }
        }
        for (const CLI::App* sub : app->get_subcommands({})) {
            if (sub->parsed()) j[sub->get_name()] = to_json(sub, default_also);
        }
        return j;
    }

    static nlohmann::ordered_json scalar_value(const std::string& s) {
        const auto v = nlohmann::ordered_json::parse(s, nullptr, false);
        if (!v.is_discarded() && (v.is_number() || v.is_boolean())) return v;
        return s;
    }

    static nlohmann::ordered_json typed(const std::vector<std::string>& values, bool multi) {
        if (!multi && values.size() == 1) return scalar_value(values.front());
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& v : values) arr.push_back(scalar_value(v));
        return arr;
    }

    static void flatten(const nlohmann::json& j, const std::string& name, std::vector<std::string> parents,
                        std::vector<CLI::ConfigItem>& items) {
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (const auto& [k, v] : j.items()) flatten(v, k, parents, items);
            return;
        }
        CLI::ConfigItem item;
        item.name = name;
        item.parents = parents;
        auto scalar = [&](const nlohmann::json& v) {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
            if (v.is_number()) return v.dump();
            throw CLI::ConversionError("unsupported config value for \"" + name + "\"");
        };
        if (j.is_array()) {
            for (const auto& v : j) item.inputs.push_back(scalar(v));
        } else {
            item.inputs.push_back(scalar(j));
        }
        items.push_back(std::move(item));
    }
};

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const fs::path& p, std::string_view content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + p.string());
}

template <typename T, std::size_t N, typename NameFn>
std::vector<std::string> names_of(const std::array<T, N>& values, NameFn name) {
    std::vector<std::string> out;
    for (const T& v : values) out.emplace_back(name(v));
    return out;
}

TaskKind task_arg(const std::string& s) {
    const auto t = parse_task(s);
    if (!t) throw UsageError("unknown task \"" + s + "\"");
    return *t;
}

std::vector<TaskKind> task_list(const std::vector<std::string>& names) {
    std::vector<TaskKind> out;
    for (const auto& n : names) out.push_back(task_arg(n));
    return out;
}

std::vector<Split> split_list(const std::vector<std::string>& names) {
    std::vector<Split> out;
    for (const auto& n : names) {
        const auto s = parse_split(n);
        if (!s) throw UsageError("unknown split \"" + n + "\"");
        out.push_back(*s);
    }
    return out;
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct StyleArgs {
    std::string layout = "stress";
    std::string shape = "ellipse";
    std::string outline = "solid";
    std::string thickness = "1.0";
    int dpi = 96;

    void add_to(CLI::App* app) {
        app->add_option("--layout", layout, "Layout algorithm")
            ->check(CLI::IsMember(names_of(kLayoutAlgorithms, layout_name)))
            ->capture_default_str();
        app->add_option("--shape", shape, "Node shape")
            ->check(CLI::IsMember(names_of(kNodeShapes, shape_name)))
            ->capture_default_str();
        app->add_option("--outline", outline, "Node outline")
            ->check(CLI::IsMember(names_of(kNodeOutlines, outline_name)))
            ->capture_default_str();
        app->add_option("--thickness", thickness, "Edge thickness in points (1.0, 2.0, 3.0, 4.0)")
            ->check(CLI::Validator(
                [](std::string& s) { return parse_thickness(s) ? std::string() : "unknown edge thickness " + s; },
                "THICKNESS"))
            ->capture_default_str();
        app->add_option("--dpi", dpi, "Output resolution")->check(CLI::Range(36, 1200))->capture_default_str();
    }

    GraphStyles style() const {
        GraphStyles s;
        s.layout = *parse_layout(layout);
        s.node_shape = *parse_shape(shape);
        s.node_outline = *parse_outline(outline);
        s.edge_thickness = *parse_thickness(thickness);
        return s;
    }

    BasicStyles gamma() const {
        BasicStyles g;
        g.dpi = dpi;
        return g;
    }
};

struct Cli {
    std::ostream& out;
    std::ostream& err;
    CLI::App app{"Graph reasoning dataset toolkit: generate, render, describe, build and evaluate."};
    std::function<int()> action;

    // generate
    std::string gen_task;
    std::size_t gen_count = 1;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    int gen_nodes_min = 0, gen_nodes_max = 0;
    double gen_density = 0.0;
    CLI::Option* gen_nodes_min_opt = nullptr;
    CLI::Option* gen_nodes_max_opt = nullptr;
    CLI::Option* gen_density_opt = nullptr;

    // render
    std::string render_graph, render_out, render_augment;
    std::uint64_t render_seed = 0;
    bool render_emit_dot = false;
    StyleArgs render_style;

    // describe
    std::string describe_graph, describe_out, describe_parse;
    bool describe_templates = false;

    // sample-subgraph
    std::string sample_graph, sample_edge_list, sample_out;
    std::vector<std::string> sample_centers;
    int sample_hops = 2;

    // build
    std::string build_subset, build_out, build_edge_list, build_labels;
    double build_scale = 1.0;
    std::uint64_t build_seed = 0;
    unsigned build_jobs = default_jobs();
    std::vector<std::string> build_tasks;
    std::vector<std::string> build_splits = {"valid", "test"};
    int build_hops = 2;
    std::size_t build_max_pairs = 0;
    StyleArgs build_style;

    // split
    std::string split_dataset;
    std::uint64_t split_seed = 0;
    double split_ratio = 0.7;

    // stats / verify
    std::string stats_dataset;
    bool stats_json = false;
    std::string verify_dataset_dir;
    unsigned verify_jobs = default_jobs();

    // eval
    std::string eval_dataset, eval_endpoint, eval_out, eval_mode = "vision_text", eval_cache_dir, eval_base_url,
                                                       eval_model;
    std::vector<std::string> eval_tasks;
    std::vector<std::string> eval_splits = {"test"};
    std::size_t eval_limit = 0;
    unsigned eval_concurrency = 0;
    bool eval_exclude_errored = false, eval_no_cache = false;

    Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {
        app.name("gita");
        app.require_subcommand(1);
        app.fallthrough();
        app.failure_message(CLI::FailureMessage::help);
        app.config_formatter(std::make_shared<ConfigJson>());
        app.set_config("--config", "", "JSON file with option values; flags override it");
        add_generate();
        add_render();
        add_describe();
        add_sample();
        add_build();
        add_split();
        add_stats();
        add_verify();
        add_eval();
    }

    void write_resolved_config(const fs::path& dir) {
        const std::string text = app.config_to_str(true, false);
        write_text(dir / "resolved_config.json", text + "\n");
    }

    void add_generate() {
        CLI::App* c = app.add_subcommand("generate", "Generate task graphs with gold answers");
        c->add_option("--task", gen_task, "Task id")
            ->required()
            ->check(CLI::IsMember(names_of(kBenchmarkTasks, task_id)));
        c->add_option("-n,--count", gen_count, "Number of graphs")->check(CLI::PositiveNumber)->capture_default_str();
        c->add_option("--seed", gen_seed, "Base seed")->capture_default_str();
        c->add_option("--out", gen_out, "Output directory")->required();
        gen_nodes_min_opt = c->add_option("--nodes-min", gen_nodes_min, "Override the minimum node count");
        gen_nodes_max_opt = c->add_option("--nodes-max", gen_nodes_max, "Override the maximum node count");
        gen_density_opt = c->add_option("--density", gen_density, "Override the edge density")
                              ->check(CLI::Range(0.0, 1.0));
        c->callback([this] { action = [this] { return cmd_generate(); }; });
    }

    int cmd_generate() {
        const TaskKind task = task_arg(gen_task);
        const fs::path dir(gen_out);
        fs::create_directories(dir);
        std::string answers;
        for (std::size_t i = 0; i < gen_count; ++i) {
            char name[64];
            std::snprintf(name, sizeof name, "%s-%06zu", std::string(task_id(task)).c_str(), i);
            const std::uint64_t seed = derive_seed(gen_seed, name);
            GeneratorSpec spec = default_generator_spec(task, seed);
            if (gen_nodes_min_opt->count() > 0) spec.nodes.min = gen_nodes_min;
            if (gen_nodes_max_opt->count() > 0) spec.nodes.max = gen_nodes_max;
            if (gen_density_opt->count() > 0) spec.edge_density = gen_density;
            const TaskInstance inst = generate_instance(spec);
            const std::string file = std::string(name) + ".json";
            save_graph(inst.graph, (dir / file).string());
            nlohmann::ordered_json line;
            line["graph"] = file;
            line["task"] = task_id(task);
            line["seed"] = seed;
            line["graph_hash"] = graph_hash(inst.graph);
            line["params"] = params_to_json(inst.params);
            line["answer"] = inst.gold.canonical_text;
            answers += line.dump() + "\n";
        }
        write_text(dir / "answers.jsonl", answers);
        write_resolved_config(dir);
        out << "wrote " << gen_count << " graph(s) and answers.jsonl to " << dir.string() << "\n";
        return kExitOk;
    }

    void add_render() {
        CLI::App* c = app.add_subcommand("render", "Render a graph file to SVG");
        c->add_option("graph", render_graph, "Graph JSON file")->required();
        c->add_option("--out", render_out, "Output SVG file, or directory with --augment")->required();
        c->add_option("--seed", render_seed, "Layout seed")->capture_default_str();
        c->add_option("--augment", render_augment, "Render every value of this style axis")
            ->check(CLI::Validator(
                [](std::string& s) { return parse_axis(s) ? std::string() : "unknown augmentation axis " + s; },
                "AXIS"));
        c->add_flag("--emit-dot", render_emit_dot, "Also write a Graphviz DOT file per image");
        render_style.add_to(c);
        c->callback([this] { action = [this] { return cmd_render(); }; });
    }

    int cmd_render() {
        const Graph g = load_graph(render_graph);
        const GraphStyles base = render_style.style();
        const BasicStyles gamma = render_style.gamma();
        if (render_augment.empty()) {
            const VisualGraph vg = render(g, gamma, base, render_seed);
            if (vg.layout_warning) err << "warning: " << *vg.layout_warning << "\n";
            const fs::path target(render_out);
            write_text(target, vg.svg);
            if (render_emit_dot) write_text(fs::path(target).replace_extension(".dot"), to_dot(g, gamma, base));
            write_resolved_config(target.has_parent_path() ? target.parent_path() : fs::path("."));
            out << "wrote " << target.string() << "\n";
            return kExitOk;
        }
        const AugmentAxis axis = *parse_axis(render_augment);
        const fs::path dir(render_out);
        const std::string stem = fs::path(render_graph).stem().string();
        const auto styles = axis_variants(base, axis);
        const auto images = augment(g, gamma, base, axis, render_seed);
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (images[i].layout_warning) err << "warning: " << *images[i].layout_warning << "\n";
            const std::string name =
                stem + "_" + std::string(axis_name(axis)) + "_" + axis_value_name(axis, styles[i]);
            write_text(dir / (name + ".svg"), images[i].svg);
            if (render_emit_dot) write_text(dir / (name + ".dot"), to_dot(g, gamma, styles[i]));
        }
        write_resolved_config(dir);
        out << "wrote " << images.size() << " image(s) to " << dir.string() << "\n";
        return kExitOk;
    }

    void add_describe() {
        CLI::App* c = app.add_subcommand("describe", "Describe a graph in text, parse a description, or export templates");
        auto* g = c->add_option("graph", describe_graph, "Graph JSON file");
        auto* t = c->add_flag("--templates", describe_templates, "Print the description template catalog");
        auto* p = c->add_option("--parse", describe_parse, "Description text file to convert back to graph JSON");
        g->excludes(t)->excludes(p);
        t->excludes(p);
        c->add_option("--out", describe_out, "Output file (standard output when omitted)");
        c->callback([this] { action = [this] { return cmd_describe(); }; });
    }

    int cmd_describe() {
        std::string text;
        if (describe_templates) {
            text = template_catalog();
        } else if (!describe_parse.empty()) {
            text = to_json(parse_description(read_text(describe_parse))) + "\n";
        } else if (!describe_graph.empty()) {
            text = describe(load_graph(describe_graph)).text + "\n";
        } else {
            throw UsageError("describe needs a graph file, --templates or --parse");
        }
        if (describe_out.empty()) {
            out << text;
        } else {
            const fs::path target(describe_out);
            write_text(target, text);
            write_resolved_config(target.has_parent_path() ? target.parent_path() : fs::path("."));
        }
        return kExitOk;
    }

    void add_sample() {
        CLI::App* c = app.add_subcommand("sample-subgraph", "Extract the k-hop neighborhood of center nodes");
        auto* g = c->add_option("--graph", sample_graph, "Graph JSON file");
        auto* e = c->add_option("--edge-list", sample_edge_list, "Whitespace-separated edge list file");
        g->excludes(e);
        c->add_option("--center", sample_centers, "Center node (repeatable); edge-list ids as written in the file")
            ->required();
        c->add_option("--hops", sample_hops, "Neighborhood radius")->check(CLI::NonNegativeNumber)->capture_default_str();
        c->add_option("--out", sample_out, "Output graph JSON file")->required();
        c->callback([this] { action = [this] { return cmd_sample(); }; });
    }

    int cmd_sample() {
        Graph source;
        std::vector<std::string> names;
        if (!sample_edge_list.empty()) {
            IngestedGraph ing = load_edge_list(sample_edge_list);
            source = std::move(ing.graph);
            names = std::move(ing.original_ids);
        } else if (!sample_graph.empty()) {
            source = load_graph(sample_graph);
            for (NodeId i = 0; i < source.node_count(); ++i) names.push_back(std::to_string(i));
        } else {
            throw UsageError("sample-subgraph needs --graph or --edge-list");
        }
        std::map<std::string, NodeId> by_name;
        for (std::size_t i = 0; i < names.size(); ++i) by_name[names[i]] = static_cast<NodeId>(i);
        std::vector<NodeId> centers;
        for (const auto& c : sample_centers) {
            const auto it = by_name.find(c);
            if (it == by_name.end()) throw ParameterError("center \"" + c + "\" is not a node of the graph");
            centers.push_back(it->second);
        }
        const SubgraphSample s = sample_k_hop(source, centers, sample_hops);
        const fs::path target(sample_out);
        if (target.has_parent_path()) fs::create_directories(target.parent_path());
        save_graph(s.subgraph, target.string());
        nlohmann::ordered_json nodes;
        nodes["hops"] = s.hops;
        nodes["centers"] = s.centers;
        std::vector<std::string> original;
        for (NodeId id : s.original_ids) original.push_back(names[static_cast<std::size_t>(id)]);
        nodes["original_ids"] = original;
        write_text(fs::path(target).replace_extension(".nodes.json"), nodes.dump(1) + "\n");
        write_resolved_config(target.has_parent_path() ? target.parent_path() : fs::path("."));
        out << "wrote " << target.string() << " (" << s.subgraph.node_count() << " nodes, "
            << s.subgraph.edge_count() << " edges)\n";
        return kExitOk;
    }

    void add_build() {
        CLI::App* c = app.add_subcommand("build", "Build a dataset subset");
        std::vector<std::string> subsets = names_of(kSubsets, subset_name);
        subsets.push_back("linkpred");
        subsets.push_back("nodeclass");
        c->add_option("--subset", build_subset, "Subset to build")->required()->check(CLI::IsMember(subsets));
        c->add_option("--scale", build_scale, "Fraction of the reference instance counts")
            ->check(CLI::Range(1e-9, 1.0))
            ->capture_default_str();
        c->add_option("--seed", build_seed, "Base seed")->capture_default_str();
        c->add_option("--jobs", build_jobs, "Worker threads")->check(CLI::PositiveNumber);
        c->add_option("--out", build_out, "Output dataset directory")->required();
        c->add_option("--tasks", build_tasks, "Restrict synthetic builds to these tasks")
            ->check(CLI::IsMember(names_of(kBenchmarkTasks, task_id)));
        c->add_option("--edge-list", build_edge_list, "Edge list for linkpred / nodeclass");
        c->add_option("--labels", build_labels, "Node label file for nodeclass");
        c->add_option("--hops", build_hops, "Neighborhood radius for real-world records")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        c->add_option("--max-per-split", build_max_pairs, "Cap on pairs or targets per split (0 = all)")
            ->capture_default_str();
        c->add_option("--splits", build_splits, "Splits to emit for real-world records")
            ->check(CLI::IsMember({"train", "valid", "test"}))
            ->capture_default_str();
        build_style.add_to(c);
        c->callback([this] { action = [this] { return cmd_build(); }; });
    }

    int cmd_build() {
        const fs::path dir(build_out);
        Dataset ds;
        if (build_subset == "linkpred" || build_subset == "nodeclass") {
            if (build_edge_list.empty()) throw UsageError(build_subset + " needs --edge-list");
            const IngestedGraph source = load_edge_list(build_edge_list);
            if (build_subset == "linkpred") {
                LinkPredOptions o;
                o.hops = build_hops;
                o.seed = build_seed;
                o.jobs = build_jobs;
                o.gamma = build_style.gamma();
                o.style = build_style.style();
                o.splits = split_list(build_splits);
                o.max_pairs_per_split = build_max_pairs;
                ds = build_link_prediction(source, o);
            } else {
                if (build_labels.empty()) throw UsageError("nodeclass needs --labels");
                NodeClassOptions o;
                o.hops = build_hops;
                o.seed = build_seed;
                o.jobs = build_jobs;
                o.gamma = build_style.gamma();
                o.style = build_style.style();
                o.splits = split_list(build_splits);
                o.max_targets_per_split = build_max_pairs;
                NodeClassBuild b = build_node_classification(source, load_labels(build_labels, source), o);
                for (const auto& w : b.warnings) err << "warning: " << w << "\n";
                ds = std::move(b.dataset);
            }
        } else {
            BuildOptions o;
            o.subset = *parse_subset(build_subset);
            o.scale = build_scale;
            o.seed = build_seed;
            o.jobs = build_jobs;
            o.gamma = build_style.gamma();
            o.base_style = build_style.style();
            o.tasks = task_list(build_tasks);
            ds = gita::build_subset(o);
        }
        write_dataset(dir, ds);
        write_resolved_config(dir);
        out << format_stats(compute_stats(ds));
        out << "wrote " << ds.records.size() << " record(s) to " << dir.string() << "\n";
        return kExitOk;
    }

    void add_split() {
        CLI::App* c = app.add_subcommand("split", "Reassign the train/test split of a synthetic dataset");
        c->add_option("--dataset", split_dataset, "Dataset directory")->required();
        c->add_option("--seed", split_seed, "Split seed")->capture_default_str();
        c->add_option("--ratio", split_ratio, "Train fraction")->check(CLI::Range(0.0, 1.0))->capture_default_str();
        c->callback([this] { action = [this] { return cmd_split(); }; });
    }

    int cmd_split() {
        Dataset ds = read_dataset(split_dataset);
        if (!parse_subset(ds.manifest.subset)) {
            throw ParameterError("split applies to synthetic subsets; " + ds.manifest.subset +
                                 " splits are fixed at build time");
        }
        assign_split(ds, split_seed, split_ratio);
        write_manifest(split_dataset, ds.manifest);
        write_resolved_config(split_dataset);
        out << format_stats(compute_stats(ds));
        return kExitOk;
    }

    void add_stats() {
        CLI::App* c = app.add_subcommand("stats", "Print dataset statistics");
        c->add_option("--dataset", stats_dataset, "Dataset directory")->required();
        c->add_flag("--json", stats_json, "Print JSON instead of a table");
        c->callback([this] { action = [this] { return cmd_stats(); }; });
    }

    int cmd_stats() {
        const DatasetStats s = compute_stats(read_dataset(stats_dataset));
        if (stats_json) {
            out << stats_to_json(s).dump(2) << "\n";
        } else {
            out << format_stats(s);
        }
        return kExitOk;
    }

    void add_verify() {
        CLI::App* c = app.add_subcommand("verify", "Re-solve every record and check the dataset");
        c->add_option("--dataset", verify_dataset_dir, "Dataset directory")->required();
        c->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::PositiveNumber);
        c->callback([this] { action = [this] { return cmd_verify(); }; });
    }

    int cmd_verify() {
        const auto issues = verify_dataset(verify_dataset_dir, verify_jobs);
        if (issues.empty()) {
            out << "ok: every record verified\n";
            return kExitOk;
        }
        for (const auto& i : issues) err << i.record_id << ": " << i.problem << "\n";
        err << issues.size() << " problem(s) found\n";
        return kExitVerifyFailed;
    }

    void add_eval() {
        CLI::App* c = app.add_subcommand("eval", "Evaluate a chat endpoint on a dataset");
        c->add_option("--dataset", eval_dataset, "Dataset directory")->required();
        c->add_option("--endpoint", eval_endpoint, "Endpoint JSON file");
        c->add_option("--base-url", eval_base_url, "Override the endpoint base URL");
        c->add_option("--model", eval_model, "Override the model name");
        c->add_option("--concurrency", eval_concurrency, "Override the number of in-flight requests")
            ->check(CLI::PositiveNumber);
        c->add_option("--mode", eval_mode, "Input modality")
            ->check(CLI::IsMember({"text_only", "vision_only", "vision_text"}))
            ->capture_default_str();
        c->add_option("--out", eval_out, "Report directory")->required();
        c->add_option("--cache-dir", eval_cache_dir, "Response cache (default <out>/cache; GITA_CACHE_DIR wins)");
        c->add_flag("--no-cache", eval_no_cache, "Disable the response cache");
        c->add_option("--tasks", eval_tasks, "Restrict to these tasks");
        c->add_option("--splits", eval_splits, "Splits to evaluate")
            ->check(CLI::IsMember({"train", "valid", "test"}))
            ->capture_default_str();
        c->add_option("--limit", eval_limit, "Records per task (0 = all)")->capture_default_str();
        c->add_flag("--exclude-errored", eval_exclude_errored, "Drop errored records from the denominators");
        c->callback([this] { action = [this] { return cmd_eval(); }; });
    }

    int cmd_eval() {
        ModelEndpoint ep;
        if (!eval_endpoint.empty()) {
            const auto j = nlohmann::json::parse(read_text(eval_endpoint), nullptr, false);
            if (j.is_discarded()) throw ConfigError("endpoint file is not valid JSON: " + eval_endpoint);
            ep = endpoint_from_json(j);
        }
        if (!eval_base_url.empty()) ep.base_url = eval_base_url;
        if (!eval_model.empty()) ep.model = eval_model;
        if (eval_concurrency > 0) ep.concurrency = eval_concurrency;
        ep = endpoint_from_json(endpoint_to_json(ep));

        const fs::path dir(eval_out);
        EvalOptions opt;
        opt.mode = *parse_mode(eval_mode);
        opt.splits = split_list(eval_splits);
        opt.tasks = task_list(eval_tasks);
        opt.limit = eval_limit;
        opt.exclude_errored = eval_exclude_errored;
        if (!eval_no_cache) {
            opt.cache_dir = resolve_cache_dir(eval_cache_dir.empty() ? dir / "cache" : fs::path(eval_cache_dir));
        }
        HttpChatClient client(ep);
        const EvalRun run = run_eval(eval_dataset, client, ep, opt);
        const std::string table = format_report_table(run.report);
        write_text(dir / "report.json", report_to_json(run.report).dump(1) + "\n");
        write_text(dir / "report.txt", table);
        write_resolved_config(dir);
        out << table;
        out << "requests: " << client.requests_sent() << ", cache hits: " << run.cache_hits << "\n";
        std::size_t errored = 0;
        for (const auto& s : run.report.samples) errored += s.error ? 1 : 0;
        if (errored > 0) err << "warning: " << errored << " record(s) failed at the endpoint\n";
        if (!run.report.monotonicity_violations.empty()) {
            err << "warning: validity below exact match for";
            for (const auto& v : run.report.monotonicity_violations) err << " " << v;
            err << "\n";
        }
        return kExitOk;
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Cli cli(out, err);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        cli.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = cli.app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }
    try {
        return cli.action ? cli.action() : kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << cli.app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace gita
