// SPDX-License-Identifier: Apache-2.0

#include "gita/questioner.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "gita/error.hpp"

namespace gita {
namespace {

constexpr std::string_view kYesNo = "Answer with exactly \"Yes.\" or \"No.\" and nothing else.";
constexpr std::string_view kSequenceExample = ", for example 0->2->1, and nothing else.";

constexpr std::array<QuestionTemplate, 9> kTemplates = {{
    {TaskKind::Connect, "Two nodes are connected if a sequence of edges leads from one to the other.",
     "Q: Is there a path between node {u} and node {v}?", kYesNo},
    {TaskKind::Cycle, "A cycle is a path of at least three distinct nodes that returns to its starting node.",
     "Q: Is there a cycle in this graph?", kYesNo},
    {TaskKind::TopoSort,
     "Each node is a job and an edge from node i to node j means that job i must be done before job j.",
     "Q: Give an order of all the nodes in which every node comes before all the nodes it points to.",
     "Answer with the node ids joined by \"->\", for example 0->2->1, and nothing else."},
    {TaskKind::ShortestPath, "The number on each edge is its length; the length of a path is the sum of its edge lengths.",
     "Q: Give the shortest path from node {u} to node {v}.",
     "Answer with the node ids of the path joined by \"->\", starting with node {u} and ending with node {v}, for "
     "example 4->6->0, and nothing else."},
    {TaskKind::MaxFlow,
     "The number on each edge is its capacity, the largest amount that can flow along the edge in its direction.",
     "Q: What is the maximum flow from node {u} to node {v}?",
     "Answer with a single integer, for example 7, and nothing else."},
    {TaskKind::Matching,
     "The nodes form two groups and every edge joins a node of one group to a node of the other. A matching is a set "
     "of edges in which no two edges share a node.",
     "Q: Find a maximum matching, that is, a matching with as many edges as possible.",
     "Answer with the matched edges written as (i,j) with i < j, separated by commas, for example (0,3),(1,5), and "
     "nothing else."},
    {TaskKind::HamiltonPath, "A Hamiltonian path visits every node of the graph exactly once.",
     "Q: Give a path that starts at some node and visits every node exactly once.",
     "Answer with the node ids joined by \"->\", for example 0->2->1, and nothing else."},
    {TaskKind::LinkPred,
     "Nodes are authors and an edge means the two authors have written a paper together. The two candidate nodes "
     "are drawn with a double outline.",
     "Q: Will node {u} and node {v} write a paper together, that is, should there be an edge between them?", kYesNo},
    {TaskKind::NodeClass,
     "Nodes are papers and an edge means one paper cites the other. A paper with a known category is filled with "
     "the color of that category and carries the category as its attribute; the target paper is drawn with a red "
     "outline.",
     "Q: Which category does node {target} belong to? The possible categories are: {classes}.",
     "Answer with exactly one category name from the list and nothing else."},
}};

std::string fill(std::string_view tpl, const TaskInstance& inst) {
    std::string out;
    std::size_t i = 0;
    auto need = [&](bool ok, std::string_view what) {
        if (!ok) throw ParameterError(std::string(task_label(inst.task)) + " query needs " + std::string(what));
    };
    while (i < tpl.size()) {
        if (tpl[i] != '{') {
            out += tpl[i++];
            continue;
        }
        const std::size_t close = tpl.find('}', i);
        const std::string_view key = tpl.substr(i + 1, close - i - 1);
        if (key == "u" || key == "v") {
            need(inst.params.endpoints.has_value(), "endpoints");
            out += std::to_string(key == "u" ? inst.params.endpoints->first : inst.params.endpoints->second);
        } else if (key == "target") {
            need(inst.params.target.has_value(), "a target node");
            out += std::to_string(*inst.params.target);
        } else if (key == "classes") {
            need(!inst.params.class_labels.empty(), "class labels");
            for (std::size_t k = 0; k < inst.params.class_labels.size(); ++k) {
                if (k > 0) out += ", ";
                out += inst.params.class_labels[k];
            }
        } else {
            throw ConfigError("unknown query placeholder {" + std::string(key) + "}");
        }
        i = close + 1;
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const QuestionTemplate& question_template(TaskKind task) {
    for (const auto& t : kTemplates) {
        if (t.task == task) return t;
    }
    throw ConfigError("no query template for task " + std::string(task_id(task)));
}

TaskQuery build_query(const TaskInstance& inst, const GraphDescription& desc) {
    const QuestionTemplate& tpl = question_template(inst.task);
    const std::string preamble = fill(tpl.preamble, inst);
    const std::string resp = fill(tpl.responsibility, inst);
    const std::string note = fill(tpl.output_spec, inst);
    TaskQuery q;
    q.task = inst.task;
    q.text = preamble + "\n" + desc.text + "\n" + resp + "\n" + note;
    q.vo_variant = preamble + "\n" + resp + "\n" + note;
    q.answer_format_note = note;
    return q;
}

bool well_formed_agent_reply(std::string_view reply) {
    const std::string l = lower(reply);
    if (l.find("node") == std::string::npos) return false;
    for (std::string_view w : {"answer", "respond", "output", "format", "reply"}) {
        if (l.find(w) != std::string::npos) return true;
    }
    return false;
}

BootstrapResult bootstrap_query(const TaskInstance& inst, std::string_view task_brief, const GraphDescription& desc,
                                ChatClient& agent) {
    const QuestionTemplate& tpl = question_template(inst.task);
    const std::string resp = fill(tpl.responsibility, inst);
    const std::string note = fill(tpl.output_spec, inst);

    ChatRequest req;
    req.messages.push_back({"system", {ContentPart::text("You write precise task instructions for graph problems.")}});
    req.messages.push_back(
        {"user",
         {ContentPart::text("Scenario: " + std::string(task_brief) +
                            "\nThe graph below will be shown to a solver. Write an instruction for the solver that "
                            "first explains what the nodes and the edges mean in this scenario, then states the task, "
                            "and ends with one sentence saying how the answer must be formatted.\nTask: " +
                            resp + "\nAnswer format: " + note + "\nGraph:\n" + desc.text +
                            "\nReply with the instruction only and do not repeat the graph.")}});

    const std::string reply = agent.complete(req);
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& m : req.messages) messages.push_back(to_json(m));

    BootstrapResult out;
    const std::string body = trim(reply);
    if (body.empty() || !well_formed_agent_reply(body)) {
        out.fell_back = true;
        out.warning = body.empty() ? "agent reply was empty; using the manual template"
                                   : "agent reply lacks a node reference or an answer-format sentence; using the "
                                     "manual template";
        out.query = build_query(inst, desc);
    } else {
        out.query.task = inst.task;
        out.query.text = body + "\n" + desc.text + "\n" + note;
        out.query.vo_variant = body + "\n" + note;
        out.query.answer_format_note = note;
    }
    out.audit = {{"task", task_id(inst.task)},
                 {"task_brief", task_brief},
                 {"temperature", req.temperature},
                 {"messages", std::move(messages)},
                 {"reply", reply},
                 {"fell_back", out.fell_back}};
    if (out.warning) out.audit["warning"] = *out.warning;
    return out;
}

}  // namespace gita
