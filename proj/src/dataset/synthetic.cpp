// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gita/dataset.hpp"
#include "gita/describer.hpp"
#include "gita/digest.hpp"
#include "gita/error.hpp"
#include "gita/generator.hpp"
#include "gita/oracles.hpp"
#include "gita/parallel.hpp"
#include "gita/questioner.hpp"

namespace gita {
namespace {

std::string instance_name(TaskKind task, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-%06zu", std::string(task_id(task)).c_str(), index);
    return buf;
}

struct Job {
    TaskKind task;
    std::size_t index;
};

struct JobOutput {
    std::vector<DatasetRecord> records;
    std::vector<std::pair<std::string, std::string>> images;
};

JobOutput build_instance(const BuildOptions& opt, const Job& job) {
    const std::string instance = instance_name(job.task, job.index);
    const std::uint64_t inst_seed = derive_seed(opt.seed, instance);
    const std::uint64_t layout_seed = derive_seed(inst_seed, "layout");
    const TaskInstance inst = generate_instance(default_generator_spec(job.task, inst_seed));
    const GraphDescription desc = describe(inst.graph);
    const TaskQuery query = build_query(inst, desc);
    const std::string hash = graph_hash(inst.graph);

    std::vector<std::string> alts;
    if (inst.graph.node_count() <= opt.alt_answer_max_nodes && opt.alt_answer_limit > 0) {
        for (auto& a : enumerate_valid_answers(inst, opt.alt_answer_limit)) {
            if (a != inst.gold.canonical_text) alts.push_back(std::move(a));
        }
    }

    const auto axis = subset_axis(opt.subset);
    std::vector<GraphStyles> styles = axis ? axis_variants(opt.base_style, *axis) : std::vector{opt.base_style};
    JobOutput out;
    for (const auto& style : styles) {
        const std::string axis_label = axis ? std::string(axis_name(*axis)) : "base";
        const std::string variant = axis ? axis_value_name(*axis, style) : "base";
        DatasetRecord r;
        r.id = axis ? instance + "_" + axis_label + "_" + variant : instance + "_base";
        r.task = job.task;
        r.image = "images/" + std::string(task_id(job.task)) + "/" + r.id + ".svg";
        r.query = query.text;
        r.vo_query = query.vo_variant;
        r.answer = inst.gold.canonical_text;
        r.alt_answers = alts;
        r.meta["instance"] = instance;
        r.meta["seed"] = inst_seed;
        r.meta["layout_seed"] = layout_seed;
        r.meta["subset"] = subset_name(opt.subset);
        r.meta["axis"] = axis_label;
        r.meta["variant"] = variant;
        r.meta["graph_hash"] = hash;
        r.meta["nodes"] = inst.graph.node_count();
        r.meta["edges"] = inst.graph.edge_count();
        VisualGraph vg = render(inst.graph, opt.gamma, style, layout_seed);
        out.images.emplace_back(r.image, std::move(vg.svg));
        out.records.push_back(std::move(r));
    }
    return out;
}

bool is_synthetic(TaskKind t) { return std::ranges::find(kBenchmarkTasks, t) != kBenchmarkTasks.end(); }

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

Dataset build_subset(const BuildOptions& opt) {
    const auto plan = planned_instances(opt.scale);
    const std::vector<TaskKind> tasks =
        opt.tasks.empty() ? std::vector<TaskKind>(kBenchmarkTasks.begin(), kBenchmarkTasks.end()) : opt.tasks;
    std::vector<Job> jobs;
    for (TaskKind t : kBenchmarkTasks) {
        if (std::ranges::find(tasks, t) == tasks.end()) continue;
        for (std::size_t i = 0; i < plan.at(t); ++i) jobs.push_back({t, i});
    }
    for (TaskKind t : tasks) {
        if (!is_synthetic(t)) throw ParameterError(std::string(task_id(t)) + " is not a synthetic task");
    }

    std::vector<JobOutput> outputs(jobs.size());
    parallel_for(jobs.size(), opt.jobs, [&](std::size_t i) { outputs[i] = build_instance(opt, jobs[i]); });

    Dataset ds;
    ds.manifest.subset = subset_name(opt.subset);
    ds.manifest.seed = opt.seed;
    ds.manifest.gamma = opt.gamma;
    ds.manifest.base_style = opt.base_style;
    nlohmann::ordered_json task_list = nlohmann::ordered_json::array();
    for (TaskKind t : kBenchmarkTasks) {
        if (std::ranges::find(tasks, t) != tasks.end()) task_list.push_back(task_id(t));
    }
    ds.manifest.params = {{"scale", opt.scale},
                          {"tasks", std::move(task_list)},
                          {"alt_answer_max_nodes", opt.alt_answer_max_nodes},
                          {"alt_answer_limit", opt.alt_answer_limit}};
    for (auto& o : outputs) {
        for (auto& r : o.records) {
            ++ds.manifest.counts[r.task];
            ds.records.push_back(std::move(r));
        }
        for (auto& [path, svg] : o.images) ds.images.emplace(std::move(path), std::move(svg));
    }
    assign_split(ds, opt.seed);
    return ds;
}

std::size_t train_instance_count(std::size_t n, double train_ratio) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_ratio));
}

void assign_split(Dataset& ds, std::uint64_t seed, double train_ratio) {
    if (!(train_ratio >= 0.0 && train_ratio <= 1.0)) throw ParameterError("train ratio must be in [0, 1]");
    std::map<TaskKind, std::set<std::string>> instances;
    for (const auto& r : ds.records) instances[r.task].insert(r.instance_id());
    std::map<std::string, Split> of_instance;
    for (const auto& [task, ids] : instances) {
        std::vector<std::string> order(ids.begin(), ids.end());
        Rng rng(derive_seed(seed, "split/" + std::string(task_id(task))));
        rng.shuffle(std::span<std::string>(order));
        const std::size_t train = train_instance_count(order.size(), train_ratio);
        for (std::size_t i = 0; i < order.size(); ++i) of_instance[order[i]] = i < train ? Split::Train : Split::Test;
    }
    ds.manifest.split.clear();
    for (const auto& r : ds.records) ds.manifest.split[r.id] = of_instance.at(r.instance_id());
    ds.manifest.split_seed = seed;
}

TaskInstance record_instance(const DatasetRecord& r) {
    if (is_synthetic(r.task)) {
        if (!r.meta.contains("seed")) throw ParseError("record " + r.id + " has no generator seed", 0);
        return generate_instance(default_generator_spec(r.task, r.meta.at("seed").get<std::uint64_t>()));
    }
    if (!r.meta.contains("graph") || !r.meta.contains("params")) {
        throw ParseError("record " + r.id + " lacks the embedded graph", 0);
    }
    TaskInstance inst;
    inst.task = r.task;
    inst.graph = graph_from_json(r.meta.at("graph").dump());
    inst.params = params_from_json(r.meta.at("params"));
    auto gold = parse_canonical_answer(r.task, r.answer);
    if (!gold) throw ParseError("record " + r.id + " has a non-canonical answer", 0);
    inst.gold = std::move(*gold);
    return inst;
}

std::vector<VerifyIssue> verify_dataset(const std::filesystem::path& dir, unsigned jobs) {
    const Dataset ds = read_dataset(dir);
    std::vector<std::vector<VerifyIssue>> found(ds.records.size());
    parallel_for(ds.records.size(), jobs, [&](std::size_t i) {
        const DatasetRecord& r = ds.records[i];
        auto issue = [&](std::string p) { found[i].push_back({r.id, std::move(p)}); };
        try {
            const TaskInstance inst = record_instance(r);
            const std::string hash = graph_hash(inst.graph);
            if (r.meta.value("graph_hash", std::string()) != hash) issue("graph hash differs from the regenerated instance");
            if (r.answer != inst.gold.canonical_text) {
                issue("answer \"" + r.answer + "\" differs from recomputed gold \"" + inst.gold.canonical_text + "\"");
            }
            const auto parsed = parse_canonical_answer(r.task, r.answer);
            if (!parsed || !verify_answer(inst, *parsed)) issue("answer fails verification");
            for (const auto& alt : r.alt_answers) {
                const auto a = parse_canonical_answer(r.task, alt);
                if (!a || !verify_answer(inst, *a)) issue("alternative answer \"" + alt + "\" fails verification");
            }
            const std::string svg = read_text(dir / r.image);
            if (svg.empty()) {
                issue("image " + r.image + " is missing");
            } else if (svg.find("source=" + hash) == std::string::npos) {
                issue("image source hash does not match the instance");
            }
        } catch (const std::exception& e) {
            issue(e.what());
        }
    });

    std::vector<VerifyIssue> issues;
    for (auto& f : found) issues.insert(issues.end(), f.begin(), f.end());

    std::map<std::string, Split> instance_split;
    std::map<TaskKind, std::size_t> counts;
    std::set<std::string> ids;
    for (const auto& r : ds.records) {
        ++counts[r.task];
        if (!ids.insert(r.id).second) issues.push_back({r.id, "duplicate record id"});
        const auto it = ds.manifest.split.find(r.id);
        if (it == ds.manifest.split.end()) {
            issues.push_back({r.id, "record has no split assignment"});
            continue;
        }
        const auto [pos, inserted] = instance_split.emplace(r.instance_id(), it->second);
        if (!inserted && pos->second != it->second) issues.push_back({r.id, "instance variants span several splits"});
    }
    for (const auto& [id, _] : ds.manifest.split) {
        if (!ids.contains(id)) issues.push_back({id, "split entry without a record"});
    }
    if (counts != ds.manifest.counts) issues.push_back({"", "manifest counts differ from the records"});
    if (sha256_hex(read_text(dir / "records.jsonl")) != ds.manifest.records_digest) {
        issues.push_back({"", "records.jsonl digest differs from the manifest"});
    }
    return issues;
}

}  // namespace gita
