// SPDX-License-Identifier: Apache-2.0
//
// Task kinds, typed answers and their canonical text form.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gita/graph.hpp"

namespace gita {

enum class TaskKind { Connect, Cycle, TopoSort, ShortestPath, MaxFlow, Matching, HamiltonPath, LinkPred, NodeClass };

/// Every task kind, benchmark tasks first.
inline constexpr std::array<TaskKind, 9> kAllTasks = {TaskKind::Connect,  TaskKind::Cycle,   TaskKind::TopoSort,
                                                 TaskKind::ShortestPath, TaskKind::MaxFlow, TaskKind::Matching,
                                                 TaskKind::HamiltonPath, TaskKind::LinkPred, TaskKind::NodeClass};

/// The seven synthetic benchmark tasks, in table order.
inline constexpr std::array<TaskKind, 7> kBenchmarkTasks = {
    TaskKind::Connect,      TaskKind::Cycle,   TaskKind::TopoSort,    TaskKind::ShortestPath,
    TaskKind::MaxFlow,      TaskKind::Matching, TaskKind::HamiltonPath};

/// Short lowercase identifier used in file names and on the command line
/// ("connect", "cycle", "ts", "sp", "maxflow", "bgm", "hp", "linkpred", "nodeclass").
std::string_view task_id(TaskKind task);
/// Column label used in report tables ("Connect", "TS", ...).
std::string_view task_label(TaskKind task);
/// Inverse of task_id; also accepts the labels case-insensitively.
std::optional<TaskKind> parse_task(std::string_view text);

enum class AnswerKind { Boolean, NodeSequence, Integer, EdgeSet, ClassLabel };

using AnswerValue = std::variant<bool, std::vector<NodeId>, std::int64_t, std::vector<NodePair>, std::string>;

AnswerKind answer_kind(const AnswerValue& value);
AnswerKind answer_kind_for(TaskKind task);

/// "Yes."/"No.", "4->6->0", "17", "(0,3),(1,4)", or the label itself.
/// Edge sets are rendered as (min,max) pairs in ascending order.
std::string render_answer(const AnswerValue& value);

struct GoldAnswer {
    AnswerKind kind = AnswerKind::Boolean;
    AnswerValue value;
    std::string canonical_text;

    friend bool operator==(const GoldAnswer&, const GoldAnswer&) = default;
};

/// Canonicalizes the payload (edge sets normalized and sorted) and renders it.
GoldAnswer make_answer(AnswerValue value);

/// Strict inverse of render_answer for the answer kind of `task`: the text,
/// after trimming surrounding whitespace, must be exactly a canonical form.
/// The empty text is the canonical empty edge set.
std::optional<GoldAnswer> parse_canonical_answer(TaskKind task, std::string_view text);

struct TaskParams {
    /// Connect / SP / LinkPred query pair, or MaxFlow (source, sink).
    std::optional<NodePair> endpoints;
    /// NodeClass target node.
    std::optional<NodeId> target;
    /// NodeClass label vocabulary, ascending.
    std::vector<std::string> class_labels;

    friend bool operator==(const TaskParams&, const TaskParams&) = default;
};

/// {"endpoints":[u,v]?, "target":t?, "class_labels":[...]?}
nlohmann::ordered_json params_to_json(const TaskParams& p);
/// Throws ParseError on malformed input.
TaskParams params_from_json(const nlohmann::json& j);

struct TaskInstance {
    TaskKind task = TaskKind::Connect;
    Graph graph;
    TaskParams params;
    GoldAnswer gold;
};

}  // namespace gita
