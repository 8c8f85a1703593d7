// SPDX-License-Identifier: Apache-2.0
//
// Task-specific queries built around a graph description, from fixed manual
// templates or from a chat agent, plus the vision-only variant that omits
// the description.
//
// Manual query layout:
//   preamble "\n" description "\n" responsibility "\n" output_spec
// The vision-only variant is the same string with "description\n" removed.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gita/chat.hpp"
#include "gita/describer.hpp"
#include "gita/task.hpp"

namespace gita {

struct QuestionTemplate {
    TaskKind task;
    /// Meaning of nodes and edges for the task.
    std::string_view preamble;
    /// Task statement; "{u}", "{v}", "{target}", "{classes}" are filled from TaskParams.
    std::string_view responsibility;
    /// Required answer format; same placeholders as the responsibility.
    std::string_view output_spec;
};

/// One template per task kind, nine in total.
const QuestionTemplate& question_template(TaskKind task);

struct TaskQuery {
    std::string text;
    TaskKind task = TaskKind::Connect;
    std::string vo_variant;
    std::string answer_format_note;
};

/// Deterministic manual query. Throws ParameterError when the task needs
/// parameters that `inst.params` lacks.
TaskQuery build_query(const TaskInstance& inst, const GraphDescription& desc);

struct BootstrapResult {
    TaskQuery query;
    bool fell_back = false;
    std::optional<std::string> warning;
    /// Full exchange: request messages, raw reply, fallback flag.
    nlohmann::json audit;
};

/// Asks `agent` to phrase the task for the scenario in `task_brief`. The reply
/// replaces the manual preamble and responsibility; the description and the
/// manual output specification are appended unchanged. A reply that does not
/// mention nodes or lacks an answer-format sentence is replaced by the manual
/// query with a warning. TransportError from the agent propagates.
BootstrapResult bootstrap_query(const TaskInstance& inst, std::string_view task_brief, const GraphDescription& desc,
                                ChatClient& agent);

/// True when `reply` mentions nodes and contains an answer-format sentence.
bool well_formed_agent_reply(std::string_view reply);

}  // namespace gita
