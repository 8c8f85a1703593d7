// SPDX-License-Identifier: Apache-2.0
//
// Vision-language dataset assembly: synthetic subsets (one base rendering or
// one rendering per value of an augmentation axis, per generated instance),
// seeded train/test splits, statistics, verification, and the real-world
// link-prediction and node-classification adapters.
//
// On-disk layout of a dataset directory:
//   manifest.json     counts, split map, build parameters, digests
//   records.jsonl     one record per line, fixed field order
//   images/<task>/<record id>.svg
//
// Record ids are "<task>-<index>_base" or "<task>-<index>_<axis>_<value>";
// the part before the first '_' is the instance id shared by every variant.

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gita/rng.hpp"
#include "gita/task.hpp"
#include "gita/visualizer.hpp"

namespace gita {

enum class Subset { Base, AugLy, AugNs, AugNo, AugEt };

inline constexpr std::array<Subset, 5> kSubsets = {Subset::Base, Subset::AugLy, Subset::AugNs, Subset::AugNo,
                                                   Subset::AugEt};

/// "base", "augly", "augns", "augno", "auget".
std::string_view subset_name(Subset s);
std::optional<Subset> parse_subset(std::string_view s);
/// Axis varied by an augmented subset; nullopt for Base.
std::optional<AugmentAxis> subset_axis(Subset s);
/// Records per instance: 1, 6, 3, 4, 4.
std::size_t subset_multiplier(Subset s);

/// Reference per-task instance counts of the full-size base subset.
const std::map<TaskKind, std::size_t>& reference_base_counts();
/// ceil(scale * count), never below 1 for a positive count.
std::size_t scaled_count(std::size_t count, double scale);
/// Instances per task at `scale`.
std::map<TaskKind, std::size_t> planned_instances(double scale);
/// Records per task of `subset` at `scale`.
std::map<TaskKind, std::size_t> planned_records(Subset subset, double scale);

enum class Split { Train, Valid, Test };
std::string_view split_name(Split s);
std::optional<Split> parse_split(std::string_view s);

struct DatasetRecord {
    std::string id;
    TaskKind task = TaskKind::Connect;
    /// Relative to the dataset directory.
    std::string image;
    std::string query;
    std::string vo_query;
    std::string answer;
    std::vector<std::string> alt_answers;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();

    /// Text before the first '_' of the id.
    std::string instance_id() const;
};

/// {"id","task","image","query","vo_query","answer","alt_answers"?,"meta"}.
nlohmann::ordered_json record_to_json(const DatasetRecord& r);
/// Throws ParseError on schema violations.
DatasetRecord record_from_json(const nlohmann::ordered_json& j);

struct DatasetManifest {
    /// A Subset name, "linkpred" or "nodeclass".
    std::string subset;
    std::uint64_t seed = 0;
    BasicStyles gamma;
    GraphStyles base_style;
    /// Records per task.
    std::map<TaskKind, std::size_t> counts;
    /// Record id -> split.
    std::map<std::string, Split> split;
    std::uint64_t split_seed = 0;
    /// Subset-specific build parameters (scale, hops, source digest, ...).
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    /// sha256 of records.jsonl.
    std::string records_digest;
    /// sha256 over "<image path>\t<sha256 of image>\n" lines in record order.
    std::string images_digest;
};

nlohmann::ordered_json manifest_to_json(const DatasetManifest& m);
DatasetManifest manifest_from_json(const nlohmann::ordered_json& j);

struct Dataset {
    DatasetManifest manifest;
    std::vector<DatasetRecord> records;
    /// Image path (as in DatasetRecord::image) -> SVG text. Empty after load.
    std::map<std::string, std::string> images;
};

/// Writes manifest.json, records.jsonl and every image; fills the digests.
void write_dataset(const std::filesystem::path& dir, Dataset& ds);
/// Reads manifest and records (images stay on disk). Throws IoError / ParseError.
Dataset read_dataset(const std::filesystem::path& dir);
/// Rewrites manifest.json only.
void write_manifest(const std::filesystem::path& dir, const DatasetManifest& m);

struct BuildOptions {
    Subset subset = Subset::Base;
    /// Fraction of the reference counts, in (0, 1].
    double scale = 1.0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    BasicStyles gamma;
    GraphStyles base_style;
    /// Alternative valid answers are attached to instances with at most this many nodes.
    NodeId alt_answer_max_nodes = 12;
    std::size_t alt_answer_limit = 8;
    /// Restricts the build to these tasks (all seven when empty).
    std::vector<TaskKind> tasks;
};

/// Generates, renders and splits a synthetic subset in memory. Output is a
/// pure function of the options; `jobs` only changes the schedule.
Dataset build_subset(const BuildOptions& opt);

/// Per-task stratified 7:3 split by instance: all variants of an instance share
/// its split. Existing assignments are replaced.
void assign_split(Dataset& ds, std::uint64_t seed, double train_ratio = 0.7);

/// Train-instance count used by assign_split for `n` instances.
std::size_t train_instance_count(std::size_t n, double train_ratio = 0.7);

struct TaskStats {
    std::size_t records = 0;
    std::size_t instances = 0;
    double avg_nodes = 0.0;
    double avg_edges = 0.0;
    /// Share of "Yes." answers for yes/no tasks.
    std::optional<double> yes_fraction;
    std::size_t train = 0;
    std::size_t valid = 0;
    std::size_t test = 0;
};

struct DatasetStats {
    std::map<TaskKind, TaskStats> per_task;
    std::size_t total_records = 0;
};

DatasetStats compute_stats(const Dataset& ds);
std::string format_stats(const DatasetStats& s);
nlohmann::ordered_json stats_to_json(const DatasetStats& s);

/// Rebuilds the task instance a record was made from: regenerated from its
/// seed for synthetic tasks, read from meta for real-world tasks. The gold
/// answer is recomputed (synthetic) or taken from the record (real-world).
TaskInstance record_instance(const DatasetRecord& r);

struct VerifyIssue {
    std::string record_id;
    std::string problem;
};

/// Full re-check of a dataset directory: regenerated instance hash, gold
/// answer, answer validity, alternative answers, image presence and source
/// hash, split coverage and instance-level split consistency.
std::vector<VerifyIssue> verify_dataset(const std::filesystem::path& dir, unsigned jobs = 1);

// ---------------------------------------------------------------------------
// Real-world adapters

struct IngestedGraph {
    /// Undirected, unweighted, compact ids.
    Graph graph;
    /// Compact id -> identifier as written in the file.
    std::vector<std::string> original_ids;
    std::size_t lines_read = 0;
    std::size_t duplicate_edges = 0;
    std::size_t self_loops = 0;
};

/// Whitespace-separated "u v" pairs, one per line; '#' and '%' lines are
/// comments. Identifiers are mapped to compact ids in ascending order
/// (numeric order when every identifier is an integer). Edges are
/// deduplicated ignoring direction; self-loops are dropped and counted.
IngestedGraph load_edge_list(const std::filesystem::path& path);
IngestedGraph parse_edge_list(std::istream& in);

/// "node_id label" lines keyed by the identifiers of `g`. Unknown nodes and
/// conflicting labels raise ParameterError.
std::map<NodeId, std::string> load_labels(const std::filesystem::path& path, const IngestedGraph& g);
std::map<NodeId, std::string> parse_labels(std::istream& in, const IngestedGraph& g);

struct EdgeSplit {
    std::vector<NodePair> train;
    std::vector<NodePair> valid;
    std::vector<NodePair> test;
};

/// Seeded 80/10/10 partition of the undirected edges, as (min,max) pairs.
/// Throws ParameterError when any part would be empty.
EdgeSplit split_edges(const Graph& g, std::uint64_t seed);

/// One uniform non-edge (u<v, u!=v, absent from `g` and from `exclude`) per
/// requested sample, by rejection sampling.
std::vector<NodePair> sample_negative_pairs(const Graph& g, std::size_t count, Rng& rng,
                                            const std::vector<NodePair>& exclude = {});

struct LinkPredOptions {
    int hops = 2;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    BasicStyles gamma;
    GraphStyles style;
    std::vector<Split> splits = {Split::Valid, Split::Test};
    /// Caps the number of positives per split (0 = all); negatives match.
    std::size_t max_pairs_per_split = 0;
};

/// Records for candidate pairs of the chosen splits: every held-out positive
/// plus one sampled negative each. The context is the k-hop union around the
/// pair in the train-edge graph; the pair is drawn with a double outline.
Dataset build_link_prediction(const IngestedGraph& source, const LinkPredOptions& opt);

struct NodeClassOptions {
    int hops = 2;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    BasicStyles gamma;
    GraphStyles style;
    std::vector<Split> splits = {Split::Valid, Split::Test};
    std::size_t max_targets_per_split = 0;
};

struct NodeClassBuild {
    Dataset dataset;
    /// Targets skipped because their k-hop neighborhood is empty.
    std::vector<std::string> warnings;
};

/// Labeled nodes are split 80/10/10; only train labels are shown. Each record
/// renders the target's k-hop subgraph with train-labeled nodes filled by
/// class color and the target stroked in kTargetStroke; the answer is the
/// target's label.
NodeClassBuild build_node_classification(const IngestedGraph& source, const std::map<NodeId, std::string>& labels,
                                         const NodeClassOptions& opt);

}  // namespace gita
