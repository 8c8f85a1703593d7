// SPDX-License-Identifier: Apache-2.0

#include "gita/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "gita/digest.hpp"
#include "gita/error.hpp"
#include "gita/oracles.hpp"
#include "gita/parallel.hpp"

namespace gita {

namespace {

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
    std::ostringstream tid;
    tid << std::this_thread::get_id();
    const std::filesystem::path tmp = p.string() + ".tmp" + tid.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, p, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string_view trim_view(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<NodeId> to_node(const std::string& s) {
    try {
        const long long v = std::stoll(s);
        if (v < 0 || v > std::numeric_limits<NodeId>::max()) return std::nullopt;
        return static_cast<NodeId>(v);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::optional<GoldAnswer> lenient_parse(TaskKind task, std::string_view text,
                                        const std::vector<std::string>& class_labels) {
    const std::string s(text);
    switch (answer_kind_for(task)) {
        case AnswerKind::Boolean: {
            static const std::regex re(R"(\b(yes|no)\b)", std::regex::icase);
            std::smatch m;
            if (!std::regex_search(s, m, re)) return std::nullopt;
            const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(m.str(1)[0])));
            return make_answer(AnswerValue{c == 'y'});
        }
        case AnswerKind::NodeSequence: {
            static const std::regex seq_re(R"(\d+(?:\s*->\s*\d+)+)");
            static const std::regex num_re(R"(\d+)");
            std::smatch m;
            if (!std::regex_search(s, m, seq_re)) return std::nullopt;
            const std::string found = m.str(0);
            std::vector<NodeId> ids;
            for (auto it = std::sregex_iterator(found.begin(), found.end(), num_re); it != std::sregex_iterator();
                 ++it) {
                auto id = to_node(it->str(0));
                if (!id) return std::nullopt;
                ids.push_back(*id);
            }
            return make_answer(AnswerValue{std::move(ids)});
        }
        case AnswerKind::Integer: {
            static const std::regex re(R"(-?\d+)");
            std::optional<std::int64_t> last;
            for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
                try {
                    last = std::stoll(it->str(0));
                } catch (const std::exception&) {
                    last.reset();
                }
            }
            if (!last) return std::nullopt;
            return make_answer(AnswerValue{*last});
        }
        case AnswerKind::EdgeSet: {
            static const std::regex re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
            std::vector<NodePair> pairs;
            for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
                auto a = to_node((*it)[1].str());
                auto b = to_node((*it)[2].str());
                if (!a || !b) return std::nullopt;
                pairs.emplace_back(*a, *b);
            }
            if (pairs.empty()) return std::nullopt;
            return make_answer(AnswerValue{std::move(pairs)});
        }
        case AnswerKind::ClassLabel: {
            if (!class_labels.empty()) {
                std::optional<std::size_t> best_pos;
                const std::string* best = nullptr;
                for (const auto& label : class_labels) {
                    if (label.empty()) continue;
                    for (auto pos = s.find(label); pos != std::string::npos; pos = s.find(label, pos + 1)) {
                        const bool left_ok = pos == 0 || !is_word_char(s[pos - 1]);
                        const std::size_t end = pos + label.size();
                        const bool right_ok = end == s.size() || !is_word_char(s[end]);
                        if (!left_ok || !right_ok) continue;
                        if (!best_pos || pos < *best_pos || (pos == *best_pos && label.size() > best->size())) {
                            best_pos = pos;
                            best = &label;
                        }
                        break;
                    }
                }
                if (!best) return std::nullopt;
                return make_answer(AnswerValue{*best});
            }
            std::string_view line = text.substr(0, text.find('\n'));
            line = trim_view(line);
            while (!line.empty() && line.back() == '.') line.remove_suffix(1);
            line = trim_view(line);
            if (line.empty()) return std::nullopt;
            return make_answer(AnswerValue{std::string(line)});
        }
    }
    return std::nullopt;
}

std::string image_data_url(const std::filesystem::path& svg_path, const ModelEndpoint& ep) {
    if (ep.rasterizer.empty()) return "data:image/svg+xml;base64," + base64_encode(read_file(svg_path));
    const std::string key = sha256_hex(svg_path.string() + "|" + ep.rasterizer);
    std::ostringstream tid;
    tid << std::this_thread::get_id();
    const auto tmp_dir = std::filesystem::temp_directory_path();
    const auto in = tmp_dir / ("gita-raster-" + key.substr(0, 16) + "-" + tid.str() + ".svg");
    const auto out = tmp_dir / ("gita-raster-" + key.substr(0, 16) + "-" + tid.str() + ".png");
    std::filesystem::copy_file(svg_path, in, std::filesystem::copy_options::overwrite_existing);
    std::string cmd = ep.rasterizer;
    for (auto [ph, val] : {std::pair<std::string, std::string>{"{in}", in.string()}, {"{out}", out.string()}}) {
        for (auto pos = cmd.find(ph); pos != std::string::npos; pos = cmd.find(ph, pos + val.size())) {
            cmd.replace(pos, ph.size(), val);
        }
    }
    const int rc = std::system(cmd.c_str());
    std::error_code ec;
    std::filesystem::remove(in, ec);
    if (rc != 0 || !std::filesystem::exists(out)) {
        std::filesystem::remove(out, ec);
        throw IoError("rasterizer failed (exit " + std::to_string(rc) + "): " + cmd);
    }
    std::string png = read_file(out);
    std::filesystem::remove(out, ec);
    return "data:image/png;base64," + base64_encode(png);
}

double percent(std::size_t hits, std::size_t total) {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

nlohmann::ordered_json accuracy_to_json(const TaskAccuracy& a) {
    nlohmann::ordered_json j;
    j["records"] = a.records;
    j["errored"] = a.errored;
    j["scored"] = a.scored;
    j["strict_exact"] = a.strict_exact;
    j["strict_valid"] = a.strict_valid;
    j["lenient_exact"] = a.lenient_exact;
    j["lenient_valid"] = a.lenient_valid;
    return j;
}

nlohmann::ordered_json verdict_to_json(const Verdict& v) {
    nlohmann::ordered_json j;
    j["exact"] = v.exact;
    j["valid"] = v.valid;
    return j;
}

}  // namespace

std::string_view mode_name(EvalMode m) {
    switch (m) {
        case EvalMode::TextOnly: return "text_only";
        case EvalMode::VisionOnly: return "vision_only";
        case EvalMode::VisionText: return "vision_text";
    }
    return "?";
}

std::optional<EvalMode> parse_mode(std::string_view s) {
    for (EvalMode m : {EvalMode::TextOnly, EvalMode::VisionOnly, EvalMode::VisionText}) {
        if (mode_name(m) == s) return m;
    }
    return std::nullopt;
}

ModelEndpoint endpoint_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {"base_url",  "path",          "model",     "token_env",
                                                "temperature", "max_tokens",  "supports_images",
                                                "timeout_seconds", "retry",  "concurrency", "rasterizer"};
    if (!j.is_object()) throw ConfigError("endpoint config must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (!known.contains(k)) throw ConfigError("unknown endpoint field \"" + k + "\"");
    }
    ModelEndpoint e;
    try {
        e.base_url = j.value("base_url", e.base_url);
        e.path = j.value("path", e.path);
        e.model = j.value("model", e.model);
        e.token_env = j.value("token_env", e.token_env);
        e.temperature = j.value("temperature", e.temperature);
        e.max_tokens = j.value("max_tokens", e.max_tokens);
        e.supports_images = j.value("supports_images", e.supports_images);
        e.timeout_seconds = j.value("timeout_seconds", e.timeout_seconds);
        e.concurrency = j.value("concurrency", e.concurrency);
        e.rasterizer = j.value("rasterizer", e.rasterizer);
        if (j.contains("retry")) {
            const auto& r = j.at("retry");
            e.retry.max_attempts = r.value("max_attempts", e.retry.max_attempts);
            e.retry.initial_backoff_ms = r.value("initial_backoff_ms", e.retry.initial_backoff_ms);
            e.retry.multiplier = r.value("multiplier", e.retry.multiplier);
            e.retry.max_backoff_ms = r.value("max_backoff_ms", e.retry.max_backoff_ms);
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("endpoint config: ") + ex.what());
    }
    if (e.base_url.find("://") == std::string::npos) throw ConfigError("base_url needs a scheme: " + e.base_url);
    if (e.temperature < 0.0) throw ConfigError("temperature must be non-negative");
    if (e.max_tokens <= 0) throw ConfigError("max_tokens must be positive");
    if (e.timeout_seconds <= 0) throw ConfigError("timeout_seconds must be positive");
    if (e.concurrency == 0) throw ConfigError("concurrency must be positive");
    if (e.retry.max_attempts < 1) throw ConfigError("retry.max_attempts must be at least 1");
    if (e.retry.initial_backoff_ms < 0 || e.retry.max_backoff_ms < 0 || e.retry.multiplier < 1.0) {
        throw ConfigError("retry backoff must be non-negative with multiplier >= 1");
    }
    return e;
}

nlohmann::ordered_json endpoint_to_json(const ModelEndpoint& e) {
    nlohmann::ordered_json j;
    j["base_url"] = e.base_url;
    j["path"] = e.path;
    j["model"] = e.model;
    j["token_env"] = e.token_env;
    j["temperature"] = e.temperature;
    j["max_tokens"] = e.max_tokens;
    j["supports_images"] = e.supports_images;
    j["timeout_seconds"] = e.timeout_seconds;
    j["retry"] = {{"max_attempts", e.retry.max_attempts},
                  {"initial_backoff_ms", e.retry.initial_backoff_ms},
                  {"multiplier", e.retry.multiplier},
                  {"max_backoff_ms", e.retry.max_backoff_ms}};
    j["concurrency"] = e.concurrency;
    j["rasterizer"] = e.rasterizer;
    return j;
}

nlohmann::ordered_json request_body(const ModelEndpoint& e, const ChatRequest& r) {
    nlohmann::ordered_json j;
    j["model"] = e.model;
    j["temperature"] = r.temperature;
    j["max_tokens"] = r.max_tokens;
    nlohmann::ordered_json msgs = nlohmann::ordered_json::array();
    for (const auto& m : r.messages) msgs.push_back(nlohmann::ordered_json::parse(to_json(m).dump()));
    j["messages"] = std::move(msgs);
    return j;
}

std::string reply_text(const nlohmann::json& response) {
    try {
        const auto& content = response.at("choices").at(0).at("message").at("content");
        if (content.is_string()) return content.get<std::string>();
        if (content.is_array()) {
            std::string out;
            for (const auto& part : content) {
                if (part.value("type", "") == "text") out += part.at("text").get<std::string>();
            }
            return out;
        }
        if (content.is_null()) return {};
    } catch (const nlohmann::json::exception& ex) {
        throw TransportError(std::string("malformed chat response: ") + ex.what());
    }
    throw TransportError("malformed chat response: unsupported content type");
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
    const auto p = dir_ / key.substr(0, 2) / (key + ".json");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.contains("reply") || !j["reply"].is_string()) return std::nullopt;
    return j["reply"].get<std::string>();
}

void ResponseCache::put(const std::string& key, const nlohmann::json& material, const std::string& reply) const {
    nlohmann::ordered_json j;
    j["key"] = key;
    j["material"] = material;
    j["reply"] = reply;
    write_file_atomic(dir_ / key.substr(0, 2) / (key + ".json"), j.dump(1) + "\n");
}

std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback) {
    if (const char* env = std::getenv("GITA_CACHE_DIR"); env && *env) return env;
    return fallback;
}

ParsedReply parse_reply(TaskKind task, std::string_view raw, const std::vector<std::string>& class_labels) {
    ParsedReply out;
    if (trim_view(raw).empty()) return out;
    out.strict = parse_canonical_answer(task, raw);
    if (out.strict && answer_kind_for(task) == AnswerKind::ClassLabel && !class_labels.empty() &&
        std::find(class_labels.begin(), class_labels.end(), out.strict->canonical_text) == class_labels.end()) {
        out.strict.reset();
    }
    out.lenient = out.strict ? out.strict : lenient_parse(task, raw, class_labels);
    return out;
}

Verdict score(const DatasetRecord& record, const TaskInstance& inst, const std::optional<GoldAnswer>& parsed) {
    Verdict v;
    if (!parsed) return v;
    v.exact = parsed->canonical_text == record.answer;
    v.valid = verify_answer(inst, *parsed);
    return v;
}

ChatRequest build_request(const DatasetRecord& record, EvalMode mode, const std::filesystem::path& dataset_dir,
                          const ModelEndpoint& endpoint) {
    ChatRequest req;
    req.temperature = endpoint.temperature;
    req.max_tokens = endpoint.max_tokens;
    ChatMessage user{"user", {}};
    if (mode != EvalMode::TextOnly) {
        if (!endpoint.supports_images) {
            throw ConfigError("endpoint does not accept images; mode " + std::string(mode_name(mode)) +
                              " needs them");
        }
        user.content.push_back(ContentPart::image(image_data_url(dataset_dir / record.image, endpoint)));
    }
    user.content.push_back(ContentPart::text(mode == EvalMode::VisionOnly ? record.vo_query : record.query));
    req.messages.push_back(std::move(user));
    return req;
}

void summarize(EvalReport& report, bool exclude_errored) {
    report.per_task.clear();
    report.monotonicity_violations.clear();
    struct Counts {
        std::size_t records = 0, errored = 0, se = 0, sv = 0, le = 0, lv = 0;
    };
    std::map<TaskKind, Counts> counts;
    for (const auto& s : report.samples) {
        Counts& c = counts[s.task];
        ++c.records;
        if (s.error) ++c.errored;
        c.se += s.strict.exact;
        c.sv += s.strict.valid;
        c.le += s.lenient.exact;
        c.lv += s.lenient.valid;
    }
    TaskAccuracy avg;
    for (const auto& [task, c] : counts) {
        TaskAccuracy a;
        a.records = c.records;
        a.errored = c.errored;
        a.scored = exclude_errored ? c.records - c.errored : c.records;
        a.strict_exact = percent(c.se, a.scored);
        a.strict_valid = percent(c.sv, a.scored);
        a.lenient_exact = percent(c.le, a.scored);
        a.lenient_valid = percent(c.lv, a.scored);
        report.per_task[task] = a;
        avg.records += a.records;
        avg.errored += a.errored;
        avg.scored += a.scored;
        avg.strict_exact += a.strict_exact;
        avg.strict_valid += a.strict_valid;
        avg.lenient_exact += a.lenient_exact;
        avg.lenient_valid += a.lenient_valid;
        const std::string label(task_label(task));
        if (a.strict_valid < a.strict_exact) report.monotonicity_violations.push_back(label + " (strict)");
        if (a.lenient_valid < a.lenient_exact) report.monotonicity_violations.push_back(label + " (lenient)");
    }
    if (!counts.empty()) {
        const double k = static_cast<double>(counts.size());
        avg.strict_exact /= k;
        avg.strict_valid /= k;
        avg.lenient_exact /= k;
        avg.lenient_valid /= k;
    }
    report.aggregate = avg;
}

EvalRun run_eval(const std::filesystem::path& dataset_dir, ChatClient& client, const ModelEndpoint& endpoint,
                 const EvalOptions& opt) {
    const Dataset ds = read_dataset(dataset_dir);
    const std::set<Split> splits(opt.splits.begin(), opt.splits.end());
    const std::set<TaskKind> tasks(opt.tasks.begin(), opt.tasks.end());

    std::vector<const DatasetRecord*> selected;
    std::map<TaskKind, std::size_t> taken;
    for (const auto& r : ds.records) {
        const auto it = ds.manifest.split.find(r.id);
        if (it == ds.manifest.split.end() || !splits.contains(it->second)) continue;
        if (!tasks.empty() && !tasks.contains(r.task)) continue;
        if (opt.limit != 0 && taken[r.task] >= opt.limit) continue;
        ++taken[r.task];
        selected.push_back(&r);
    }
    if (selected.empty()) throw ParameterError("no records selected for evaluation in " + dataset_dir.string());
    if (opt.mode != EvalMode::TextOnly && !endpoint.supports_images) {
        throw ConfigError("endpoint does not accept images; mode " + std::string(mode_name(opt.mode)) +
                          " needs them");
    }

    std::optional<ResponseCache> cache;
    if (!opt.cache_dir.empty()) cache.emplace(opt.cache_dir);

    EvalRun run;
    run.report.mode = opt.mode;
    run.report.endpoint = endpoint_to_json(endpoint);
    {
        nlohmann::ordered_json cfg;
        cfg["endpoint"] = run.report.endpoint;
        cfg["mode"] = mode_name(opt.mode);
        cfg["splits"] = nlohmann::ordered_json::array();
        for (Split s : splits) cfg["splits"].push_back(split_name(s));
        cfg["tasks"] = nlohmann::ordered_json::array();
        for (TaskKind t : tasks) cfg["tasks"].push_back(task_id(t));
        cfg["limit"] = opt.limit;
        cfg["exclude_errored"] = opt.exclude_errored;
        cfg["records_digest"] = ds.manifest.records_digest;
        run.report.config_digest = sha256_hex(cfg.dump());
    }

    run.report.samples.resize(selected.size());
    std::atomic<std::size_t> hits{0}, calls{0};
    parallel_for(selected.size(), endpoint.concurrency, [&](std::size_t i) {
        const DatasetRecord& r = *selected[i];
        SampleTranscript& t = run.report.samples[i];
        t.record_id = r.id;
        t.task = r.task;
        const ChatRequest req = build_request(r, opt.mode, dataset_dir, endpoint);
        nlohmann::json messages = nlohmann::json::array();
        for (const auto& m : req.messages) messages.push_back(to_json(m));
        t.prompt_digest = sha256_hex(messages.dump());

        nlohmann::ordered_json material;
        material["base_url"] = endpoint.base_url;
        material["path"] = endpoint.path;
        material["model"] = endpoint.model;
        material["temperature"] = endpoint.temperature;
        material["max_tokens"] = endpoint.max_tokens;
        material["record_id"] = r.id;
        material["mode"] = mode_name(opt.mode);
        material["prompt_digest"] = t.prompt_digest;
        const std::string key = sha256_hex(material.dump());

        std::optional<std::string> reply = cache ? cache->get(key) : std::nullopt;
        if (reply) {
            ++hits;
        } else {
            ++calls;
            try {
                reply = client.complete(req);
                if (cache) cache->put(key, material, *reply);
            } catch (const TransportError& e) {
                t.error = e.what();
            }
        }
        if (!reply) return;
        t.raw_reply = *reply;
        const TaskInstance inst = record_instance(r);
        const ParsedReply parsed = parse_reply(r.task, *reply, inst.params.class_labels);
        if (parsed.strict) t.strict_answer = parsed.strict->canonical_text;
        if (parsed.lenient) t.lenient_answer = parsed.lenient->canonical_text;
        t.strict = score(r, inst, parsed.strict);
        t.lenient = score(r, inst, parsed.lenient);
    });
    run.cache_hits = hits;
    run.client_calls = calls;
    summarize(run.report, opt.exclude_errored);
    return run;
}

nlohmann::ordered_json report_to_json(const EvalReport& r) {
    nlohmann::ordered_json j;
    j["mode"] = mode_name(r.mode);
    j["endpoint"] = r.endpoint;
    j["config_digest"] = r.config_digest;
    j["tasks"] = nlohmann::ordered_json::object();
    for (const auto& [task, a] : r.per_task) j["tasks"][std::string(task_label(task))] = accuracy_to_json(a);
    j["average"] = accuracy_to_json(r.aggregate);
    j["monotonicity"] = {{"ok", r.monotonicity_violations.empty()}, {"violations", r.monotonicity_violations}};
    j["samples"] = nlohmann::ordered_json::array();
    for (const auto& s : r.samples) {
        nlohmann::ordered_json t;
        t["record_id"] = s.record_id;
        t["task"] = task_id(s.task);
        t["prompt_digest"] = s.prompt_digest;
        t["raw_reply"] = s.raw_reply;
        t["error"] = s.error ? nlohmann::ordered_json(*s.error) : nlohmann::ordered_json(nullptr);
        t["strict_answer"] = s.strict_answer ? nlohmann::ordered_json(*s.strict_answer) : nlohmann::ordered_json(nullptr);
        t["lenient_answer"] = s.lenient_answer ? nlohmann::ordered_json(*s.lenient_answer) : nlohmann::ordered_json(nullptr);
        t["unparseable"] = !s.error && !s.lenient_answer;
        t["strict"] = verdict_to_json(s.strict);
        t["lenient"] = verdict_to_json(s.lenient);
        j["samples"].push_back(std::move(t));
    }
    return j;
}

std::string format_report_table(const EvalReport& r) {
    std::vector<std::string> headers;
    for (const auto& [task, a] : r.per_task) headers.emplace_back(task_label(task));
    headers.emplace_back("Avg");
    std::size_t width = 8;
    for (const auto& h : headers) width = std::max(width, h.size() + 2);

    std::ostringstream out;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-16s", "metric");
    out << buf;
    for (const auto& h : headers) out << std::string(width - h.size(), ' ') << h;
    out << '\n';
    using Field = double TaskAccuracy::*;
    const std::pair<const char*, Field> rows[] = {{"strict exact", &TaskAccuracy::strict_exact},
                                                  {"strict valid", &TaskAccuracy::strict_valid},
                                                  {"lenient exact", &TaskAccuracy::lenient_exact},
                                                  {"lenient valid", &TaskAccuracy::lenient_valid}};
    for (const auto& [name, field] : rows) {
        std::snprintf(buf, sizeof buf, "%-16s", name);
        out << buf;
        auto cell = [&](double v) {
            std::snprintf(buf, sizeof buf, "%.2f", v);
            const std::string s = buf;
            out << std::string(width > s.size() ? width - s.size() : 1, ' ') << s;
        };
        for (const auto& [task, a] : r.per_task) cell(a.*field);
        cell(r.aggregate.*field);
        out << '\n';
    }
    std::snprintf(buf, sizeof buf, "%-16s", "records");
    out << buf;
    for (const auto& [task, a] : r.per_task) {
        const std::string s = std::to_string(a.records);
        out << std::string(width - std::min(width - 1, s.size()), ' ') << s;
    }
    const std::string total = std::to_string(r.aggregate.records);
    out << std::string(width - std::min(width - 1, total.size()), ' ') << total << '\n';
    out << "monotonicity    "
        << (r.monotonicity_violations.empty() ? std::string("ok") : "VIOLATED") << '\n';
    return out.str();
}

}  // namespace gita
