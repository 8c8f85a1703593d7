// SPDX-License-Identifier: Apache-2.0

#include "gita/task.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "gita/error.hpp"

namespace gita {
namespace {

struct TaskName {
    TaskKind kind;
    std::string_view id;
    std::string_view label;
};

constexpr std::array<TaskName, 9> kNames = {{
    {TaskKind::Connect, "connect", "Connect"},
    {TaskKind::Cycle, "cycle", "Cycle"},
    {TaskKind::TopoSort, "ts", "TS"},
    {TaskKind::ShortestPath, "sp", "SP"},
    {TaskKind::MaxFlow, "maxflow", "MaxFlow"},
    {TaskKind::Matching, "bgm", "BGM"},
    {TaskKind::HamiltonPath, "hp", "HP"},
    {TaskKind::LinkPred, "linkpred", "LinkPred"},
    {TaskKind::NodeClass, "nodeclass", "NodeClass"},
}};

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

}  // namespace

std::string_view task_id(TaskKind task) {
    for (const auto& n : kNames) {
        if (n.kind == task) return n.id;
    }
    return "unknown";
}

std::string_view task_label(TaskKind task) {
    for (const auto& n : kNames) {
        if (n.kind == task) return n.label;
    }
    return "Unknown";
}

std::optional<TaskKind> parse_task(std::string_view text) {
    for (const auto& n : kNames) {
        if (iequals(text, n.id) || iequals(text, n.label)) return n.kind;
    }
    return std::nullopt;
}

AnswerKind answer_kind(const AnswerValue& value) {
    switch (value.index()) {
        case 0: return AnswerKind::Boolean;
        case 1: return AnswerKind::NodeSequence;
        case 2: return AnswerKind::Integer;
        case 3: return AnswerKind::EdgeSet;
        default: return AnswerKind::ClassLabel;
    }
}

AnswerKind answer_kind_for(TaskKind task) {
    switch (task) {
        case TaskKind::Connect:
        case TaskKind::Cycle:
        case TaskKind::LinkPred: return AnswerKind::Boolean;
        case TaskKind::TopoSort:
        case TaskKind::ShortestPath:
        case TaskKind::HamiltonPath: return AnswerKind::NodeSequence;
        case TaskKind::MaxFlow: return AnswerKind::Integer;
        case TaskKind::Matching: return AnswerKind::EdgeSet;
        case TaskKind::NodeClass: return AnswerKind::ClassLabel;
    }
    return AnswerKind::Boolean;
}

namespace {

std::vector<NodePair> canonical_pairs(std::vector<NodePair> pairs) {
    for (auto& [a, b] : pairs) {
        if (a > b) std::swap(a, b);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

}  // namespace

std::string render_answer(const AnswerValue& value) {
    struct Visitor {
        std::string operator()(bool b) const { return b ? "Yes." : "No."; }
        std::string operator()(const std::vector<NodeId>& seq) const {
            std::string out;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (i) out += "->";
                out += std::to_string(seq[i]);
            }
            return out;
        }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::vector<NodePair>& pairs) const {
            std::string out;
            bool first = true;
            for (const auto& [a, b] : canonical_pairs(pairs)) {
                if (!first) out += ",";
                first = false;
                out += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            }
            return out;
        }
        std::string operator()(const std::string& label) const { return label; }
    };
    return std::visit(Visitor{}, value);
}

GoldAnswer make_answer(AnswerValue value) {
    if (auto* pairs = std::get_if<std::vector<NodePair>>(&value)) *pairs = canonical_pairs(std::move(*pairs));
    GoldAnswer a;
    a.kind = answer_kind(value);
    a.canonical_text = render_answer(value);
    a.value = std::move(value);
    return a;
}

namespace {

std::string_view trim_view(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T>
std::optional<T> parse_int(std::string_view s) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<AnswerValue> parse_value(AnswerKind kind, std::string_view t) {
    switch (kind) {
        case AnswerKind::Boolean:
            if (t == "Yes.") return AnswerValue{true};
            if (t == "No.") return AnswerValue{false};
            return std::nullopt;
        case AnswerKind::NodeSequence: {
            std::vector<NodeId> seq;
            std::size_t pos = 0;
            while (true) {
                const std::size_t arrow = t.find("->", pos);
                auto id = parse_int<NodeId>(t.substr(pos, arrow == std::string_view::npos ? arrow : arrow - pos));
                if (!id) return std::nullopt;
                seq.push_back(*id);
                if (arrow == std::string_view::npos) break;
                pos = arrow + 2;
            }
            return AnswerValue{std::move(seq)};
        }
        case AnswerKind::Integer: {
            auto v = parse_int<std::int64_t>(t);
            if (!v) return std::nullopt;
            return AnswerValue{*v};
        }
        case AnswerKind::EdgeSet: {
            std::vector<NodePair> pairs;
            std::size_t pos = 0;
            while (pos < t.size()) {
                if (!pairs.empty()) {
                    if (t[pos] != ',') return std::nullopt;
                    ++pos;
                }
                if (pos >= t.size() || t[pos] != '(') return std::nullopt;
                const std::size_t comma = t.find(',', pos);
                const std::size_t close = t.find(')', pos);
                if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
                    return std::nullopt;
                }
                auto a = parse_int<NodeId>(t.substr(pos + 1, comma - pos - 1));
                auto b = parse_int<NodeId>(t.substr(comma + 1, close - comma - 1));
                if (!a || !b) return std::nullopt;
                pairs.emplace_back(*a, *b);
                pos = close + 1;
            }
            return AnswerValue{std::move(pairs)};
        }
        case AnswerKind::ClassLabel:
            if (t.empty() || t.find('\n') != std::string_view::npos) return std::nullopt;
            return AnswerValue{std::string(t)};
    }
    return std::nullopt;
}

}  // namespace

std::optional<GoldAnswer> parse_canonical_answer(TaskKind task, std::string_view text) {
    const std::string_view t = trim_view(text);
    auto value = parse_value(answer_kind_for(task), t);
    if (!value) return std::nullopt;
    GoldAnswer a = make_answer(std::move(*value));
    if (a.canonical_text != t) return std::nullopt;
    return a;
}

nlohmann::ordered_json params_to_json(const TaskParams& p) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (p.endpoints) j["endpoints"] = {p.endpoints->first, p.endpoints->second};
    if (p.target) j["target"] = *p.target;
    if (!p.class_labels.empty()) j["class_labels"] = p.class_labels;
    return j;
}

TaskParams params_from_json(const nlohmann::json& j) {
    TaskParams p;
    try {
        if (!j.is_object()) throw ParseError("task params must be an object", 0);
        if (j.contains("endpoints")) {
            const auto& e = j.at("endpoints");
            if (!e.is_array() || e.size() != 2) throw ParseError("endpoints must be a pair", 0);
            p.endpoints = NodePair{e[0].get<NodeId>(), e[1].get<NodeId>()};
        }
        if (j.contains("target")) p.target = j.at("target").get<NodeId>();
        if (j.contains("class_labels")) p.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("task params: ") + e.what(), 0);
    }
    return p;
}

}  // namespace gita
