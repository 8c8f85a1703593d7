// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gita/dataset.hpp"
#include "gita/digest.hpp"
#include "gita/error.hpp"

namespace gita {
namespace {

constexpr std::string_view kFormat = "gita-dataset/1";

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path& p, std::string_view content) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    const std::filesystem::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, p, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

template <typename J>
TaskKind task_from_json(const J& j) {
    const auto t = parse_task(j.template get<std::string>());
    if (!t) throw ParseError("unknown task \"" + j.template get<std::string>() + "\"", 0);
    return *t;
}

std::string records_text(const std::vector<DatasetRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += record_to_json(r).dump();
        out += '\n';
    }
    return out;
}

}  // namespace

std::string_view subset_name(Subset s) {
    switch (s) {
        case Subset::Base: return "base";
        case Subset::AugLy: return "augly";
        case Subset::AugNs: return "augns";
        case Subset::AugNo: return "augno";
        case Subset::AugEt: return "auget";
    }
    return "unknown";
}

std::optional<Subset> parse_subset(std::string_view s) {
    for (auto v : kSubsets) {
        if (subset_name(v) == s) return v;
    }
    return std::nullopt;
}

std::optional<AugmentAxis> subset_axis(Subset s) {
    switch (s) {
        case Subset::Base: return std::nullopt;
        case Subset::AugLy: return AugmentAxis::Layout;
        case Subset::AugNs: return AugmentAxis::NodeShape;
        case Subset::AugNo: return AugmentAxis::NodeOutline;
        case Subset::AugEt: return AugmentAxis::EdgeThickness;
    }
    return std::nullopt;
}

std::size_t subset_multiplier(Subset s) {
    const auto axis = subset_axis(s);
    return axis ? axis_cardinality(*axis) : 1;
}

const std::map<TaskKind, std::size_t>& reference_base_counts() {
    static const std::map<TaskKind, std::size_t> kCounts = {
        {TaskKind::Connect, 16410}, {TaskKind::Cycle, 4100},    {TaskKind::TopoSort, 2910},
        {TaskKind::ShortestPath, 1560}, {TaskKind::MaxFlow, 1500}, {TaskKind::Matching, 1860},
        {TaskKind::HamiltonPath, 900}};
    return kCounts;
}

std::size_t scaled_count(std::size_t count, double scale) {
    if (!(scale > 0.0 && scale <= 1.0)) throw ParameterError("scale must be in (0, 1]");
    if (count == 0) return 0;
    const double v = std::ceil(scale * static_cast<double>(count) - 1e-9);
    return std::max<std::size_t>(1, static_cast<std::size_t>(v));
}

std::map<TaskKind, std::size_t> planned_instances(double scale) {
    std::map<TaskKind, std::size_t> out;
    for (const auto& [task, count] : reference_base_counts()) out[task] = scaled_count(count, scale);
    return out;
}

std::map<TaskKind, std::size_t> planned_records(Subset subset, double scale) {
    auto out = planned_instances(scale);
    for (auto& [_, c] : out) c *= subset_multiplier(subset);
    return out;
}

std::string_view split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Valid: return "valid";
        case Split::Test: return "test";
    }
    return "unknown";
}

std::optional<Split> parse_split(std::string_view s) {
    for (auto v : {Split::Train, Split::Valid, Split::Test}) {
        if (split_name(v) == s) return v;
    }
    return std::nullopt;
}

std::string DatasetRecord::instance_id() const { return id.substr(0, id.find('_')); }

nlohmann::ordered_json record_to_json(const DatasetRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["task"] = task_id(r.task);
    j["image"] = r.image;
    j["query"] = r.query;
    j["vo_query"] = r.vo_query;
    j["answer"] = r.answer;
    if (!r.alt_answers.empty()) j["alt_answers"] = r.alt_answers;
    j["meta"] = r.meta;
    return j;
}

DatasetRecord record_from_json(const nlohmann::ordered_json& j) {
    try {
        DatasetRecord r;
        r.id = j.at("id").get<std::string>();
        r.task = task_from_json(j.at("task"));
        r.image = j.at("image").get<std::string>();
        r.query = j.at("query").get<std::string>();
        r.vo_query = j.at("vo_query").get<std::string>();
        r.answer = j.at("answer").get<std::string>();
        if (j.contains("alt_answers")) r.alt_answers = j.at("alt_answers").get<std::vector<std::string>>();
        r.meta = j.at("meta");
        if (!r.meta.is_object()) throw ParseError("record meta must be an object", 0);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("dataset record: ") + e.what(), 0);
    }
}

nlohmann::ordered_json manifest_to_json(const DatasetManifest& m) {
    nlohmann::ordered_json j;
    j["format"] = kFormat;
    j["subset"] = m.subset;
    j["seed"] = m.seed;
    j["split_seed"] = m.split_seed;
    j["gamma"] = {{"canvas_width", m.gamma.canvas_width},
                  {"canvas_height", m.gamma.canvas_height},
                  {"dpi", m.gamma.dpi},
                  {"backdrop", m.gamma.backdrop}};
    j["base_style"] = {{"layout", layout_name(m.base_style.layout)},
                       {"node_shape", shape_name(m.base_style.node_shape)},
                       {"node_outline", outline_name(m.base_style.node_outline)},
                       {"edge_thickness", thickness_name(m.base_style.edge_thickness)}};
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    std::size_t total = 0;
    for (const auto& [task, c] : m.counts) {
        counts[std::string(task_id(task))] = c;
        total += c;
    }
    j["counts"] = std::move(counts);
    j["total"] = total;
    j["params"] = m.params;
    j["records_digest"] = m.records_digest;
    j["images_digest"] = m.images_digest;
    nlohmann::ordered_json split = nlohmann::ordered_json::object();
    for (const auto& [id, s] : m.split) split[id] = split_name(s);
    j["split"] = std::move(split);
    return j;
}

DatasetManifest manifest_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.at("format").get<std::string>() != kFormat) throw ParseError("unsupported manifest format", 0);
        DatasetManifest m;
        m.subset = j.at("subset").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.split_seed = j.at("split_seed").get<std::uint64_t>();
        const auto& g = j.at("gamma");
        m.gamma = {g.at("canvas_width").get<int>(), g.at("canvas_height").get<int>(), g.at("dpi").get<int>(),
                   g.at("backdrop").get<std::string>()};
        const auto& s = j.at("base_style");
        auto layout = parse_layout(s.at("layout").get<std::string>());
        auto shape = parse_shape(s.at("node_shape").get<std::string>());
        auto outline = parse_outline(s.at("node_outline").get<std::string>());
        auto thick = parse_thickness(s.at("edge_thickness").get<std::string>());
        if (!layout || !shape || !outline || !thick) throw ParseError("invalid base_style", 0);
        m.base_style = {*layout, *shape, *outline, *thick};
        for (const auto& [k, v] : j.at("counts").items()) m.counts[task_from_json(nlohmann::json(k))] = v.get<std::size_t>();
        m.params = j.at("params");
        m.records_digest = j.at("records_digest").get<std::string>();
        m.images_digest = j.at("images_digest").get<std::string>();
        for (const auto& [id, v] : j.at("split").items()) {
            auto sp = parse_split(v.get<std::string>());
            if (!sp) throw ParseError("invalid split \"" + v.get<std::string>() + "\" for " + id, 0);
            m.split[id] = *sp;
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what(), 0);
    }
}

void write_manifest(const std::filesystem::path& dir, const DatasetManifest& m) {
    write_file_atomic(dir / "manifest.json", manifest_to_json(m).dump(1) + "\n");
}

void write_dataset(const std::filesystem::path& dir, Dataset& ds) {
    std::string image_lines;
    for (const auto& r : ds.records) {
        const auto it = ds.images.find(r.image);
        if (it == ds.images.end()) throw ParameterError("record " + r.id + " has no image");
        write_file_atomic(dir / r.image, it->second);
        image_lines += r.image + "\t" + sha256_hex(it->second) + "\n";
    }
    const std::string records = records_text(ds.records);
    write_file_atomic(dir / "records.jsonl", records);
    ds.manifest.records_digest = sha256_hex(records);
    ds.manifest.images_digest = sha256_hex(image_lines);
    write_manifest(dir, ds.manifest);
}

Dataset read_dataset(const std::filesystem::path& dir) {
    Dataset ds;
    const std::string manifest_text = read_file(dir / "manifest.json");
    try {
        ds.manifest = manifest_from_json(nlohmann::ordered_json::parse(manifest_text));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("manifest.json: ") + e.what(), e.byte);
    }
    const std::string records = read_file(dir / "records.jsonl");
    std::size_t offset = 0;
    while (offset < records.size()) {
        const std::size_t nl = records.find('\n', offset);
        const std::size_t end = nl == std::string::npos ? records.size() : nl;
        const std::string_view line(records.data() + offset, end - offset);
        if (!line.empty()) {
            try {
                ds.records.push_back(record_from_json(nlohmann::ordered_json::parse(line)));
            } catch (const nlohmann::json::parse_error& e) {
                throw ParseError(std::string("records.jsonl: ") + e.what(), offset + e.byte);
            }
        }
        offset = end + 1;
    }
    return ds;
}

DatasetStats compute_stats(const Dataset& ds) {
    DatasetStats s;
    std::map<TaskKind, std::set<std::string>> instances;
    std::map<TaskKind, std::size_t> yes;
    for (const auto& r : ds.records) {
        TaskStats& t = s.per_task[r.task];
        ++t.records;
        ++s.total_records;
        instances[r.task].insert(r.instance_id());
        t.avg_nodes += r.meta.value("nodes", 0.0);
        t.avg_edges += r.meta.value("edges", 0.0);
        if (answer_kind_for(r.task) == AnswerKind::Boolean && r.answer == "Yes.") ++yes[r.task];
        if (auto it = ds.manifest.split.find(r.id); it != ds.manifest.split.end()) {
            switch (it->second) {
                case Split::Train: ++t.train; break;
                case Split::Valid: ++t.valid; break;
                case Split::Test: ++t.test; break;
            }
        }
    }
    for (auto& [task, t] : s.per_task) {
        t.instances = instances[task].size();
        t.avg_nodes /= static_cast<double>(t.records);
        t.avg_edges /= static_cast<double>(t.records);
        if (answer_kind_for(task) == AnswerKind::Boolean) {
            t.yes_fraction = static_cast<double>(yes[task]) / static_cast<double>(t.records);
        }
    }
    return s;
}

std::string format_stats(const DatasetStats& s) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %9s %9s %9s %9s %7s %9s %9s %9s\n", "task", "records", "instances",
                  "avg_nodes", "avg_edges", "yes", "train", "valid", "test");
    out += line;
    for (const auto& [task, t] : s.per_task) {
        const std::string yes = t.yes_fraction ? std::to_string(static_cast<int>(std::lround(*t.yes_fraction * 100))) + "%"
                                               : std::string("-");
        std::snprintf(line, sizeof line, "%-10s %9zu %9zu %9.2f %9.2f %7s %9zu %9zu %9zu\n",
                      std::string(task_label(task)).c_str(), t.records, t.instances, t.avg_nodes, t.avg_edges,
                      yes.c_str(), t.train, t.valid, t.test);
        out += line;
    }
    std::snprintf(line, sizeof line, "%-10s %9zu\n", "total", s.total_records);
    out += line;
    return out;
}

nlohmann::ordered_json stats_to_json(const DatasetStats& s) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json tasks = nlohmann::ordered_json::object();
    for (const auto& [task, t] : s.per_task) {
        nlohmann::ordered_json e;
        e["records"] = t.records;
        e["instances"] = t.instances;
        e["avg_nodes"] = t.avg_nodes;
        e["avg_edges"] = t.avg_edges;
        e["yes_fraction"] = t.yes_fraction ? nlohmann::ordered_json(*t.yes_fraction) : nlohmann::ordered_json(nullptr);
        e["train"] = t.train;
        e["valid"] = t.valid;
        e["test"] = t.test;
        tasks[std::string(task_id(task))] = std::move(e);
    }
    j["tasks"] = std::move(tasks);
    j["total_records"] = s.total_records;
    return j;
}

}  // namespace gita
