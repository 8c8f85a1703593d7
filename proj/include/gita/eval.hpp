// SPDX-License-Identifier: Apache-2.0
//
// Evaluation of chat-model endpoints over a dataset directory: request
// assembly per modality, HTTP transport with retries, a content-addressed
// response cache, answer extraction (strict and lenient), exact-match and
// validity scoring, and accuracy reports.

#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gita/chat.hpp"
#include "gita/dataset.hpp"
#include "gita/task.hpp"

namespace gita {

enum class EvalMode { TextOnly, VisionOnly, VisionText };

/// "text_only", "vision_only", "vision_text".
std::string_view mode_name(EvalMode m);
std::optional<EvalMode> parse_mode(std::string_view s);

struct RetryPolicy {
    int max_attempts = 5;
    int initial_backoff_ms = 500;
    double multiplier = 2.0;
    int max_backoff_ms = 30000;
};

struct ModelEndpoint {
    /// Scheme, host, optional port and optional path prefix, e.g. "https://api.example.com/v1".
    std::string base_url = "http://127.0.0.1:8000/v1";
    std::string path = "/chat/completions";
    std::string model;
    /// Name of the environment variable holding the bearer token; no header when unset.
    std::string token_env = "GITA_API_TOKEN";
    double temperature = 0.0;
    int max_tokens = 256;
    bool supports_images = true;
    int timeout_seconds = 120;
    RetryPolicy retry;
    unsigned concurrency = 8;
    /// Optional shell command converting an SVG to PNG; "{in}" and "{out}" are
    /// replaced by file paths. Images are sent as SVG when empty.
    std::string rasterizer;
};

/// Missing fields keep their defaults. Throws ConfigError on bad values.
ModelEndpoint endpoint_from_json(const nlohmann::json& j);
nlohmann::ordered_json endpoint_to_json(const ModelEndpoint& e);

/// Wire form of a request: {model, temperature, max_tokens, messages}.
nlohmann::ordered_json request_body(const ModelEndpoint& e, const ChatRequest& r);

/// Assistant text from a chat-completions response body; content given as a
/// string or as an array of text parts. Throws TransportError otherwise.
std::string reply_text(const nlohmann::json& response);

/// Chat client speaking the chat-completions wire protocol over HTTP(S).
/// Thread-safe. Connection failures, 429 and 5xx responses are retried with
/// exponential backoff (Retry-After honored); other statuses fail at once.
class HttpChatClient : public ChatClient {
  public:
    explicit HttpChatClient(ModelEndpoint endpoint);
    std::string complete(const ChatRequest& request) override;
    /// HTTP requests issued so far, retries included.
    std::size_t requests_sent() const { return requests_.load(); }

  private:
    ModelEndpoint endpoint_;
    std::string origin_;
    std::string full_path_;
    std::atomic<std::size_t> requests_{0};
};

/// Content-addressed response store: one JSON file per key under
/// <dir>/<key[0:2]>/<key>.json, written atomically.
class ResponseCache {
  public:
    explicit ResponseCache(std::filesystem::path dir);
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const nlohmann::json& material, const std::string& reply) const;
    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
};

/// Cache directory: $GITA_CACHE_DIR when set, else `fallback`.
std::filesystem::path resolve_cache_dir(const std::filesystem::path& fallback);

struct ParsedReply {
    std::optional<GoldAnswer> strict;
    std::optional<GoldAnswer> lenient;
};

/// Strict: the trimmed reply is exactly a canonical answer. Lenient: first
/// yes/no word; first "->"-joined id sequence; last integer; every "(a,b)"
/// pair; for class labels the earliest listed label (or the trimmed first
/// line when no label list is given).
ParsedReply parse_reply(TaskKind task, std::string_view raw, const std::vector<std::string>& class_labels = {});

struct Verdict {
    bool exact = false;
    bool valid = false;
};

/// exact: canonical text equals the record answer; valid: verify_answer on
/// the rebuilt instance. A missing parse scores false on both.
Verdict score(const DatasetRecord& record, const TaskInstance& inst, const std::optional<GoldAnswer>& parsed);

/// The request a record produces in `mode`.
ChatRequest build_request(const DatasetRecord& record, EvalMode mode, const std::filesystem::path& dataset_dir,
                          const ModelEndpoint& endpoint);

struct SampleTranscript {
    std::string record_id;
    TaskKind task = TaskKind::Connect;
    std::string prompt_digest;
    std::string raw_reply;
    std::optional<std::string> error;
    std::optional<std::string> strict_answer;
    std::optional<std::string> lenient_answer;
    Verdict strict;
    Verdict lenient;
};

struct TaskAccuracy {
    std::size_t records = 0;
    std::size_t errored = 0;
    /// Records in the denominator.
    std::size_t scored = 0;
    double strict_exact = 0.0;
    double strict_valid = 0.0;
    double lenient_exact = 0.0;
    double lenient_valid = 0.0;
};

struct EvalReport {
    EvalMode mode = EvalMode::VisionText;
    nlohmann::ordered_json endpoint;
    std::map<TaskKind, TaskAccuracy> per_task;
    /// Unweighted mean of the per-task figures.
    TaskAccuracy aggregate;
    std::vector<SampleTranscript> samples;
    std::string config_digest;
    /// Tasks where a validity figure falls below its exact-match figure.
    std::vector<std::string> monotonicity_violations;
};

struct EvalOptions {
    EvalMode mode = EvalMode::VisionText;
    std::vector<Split> splits = {Split::Test};
    std::vector<TaskKind> tasks;
    /// Records per task; 0 = every selected record.
    std::size_t limit = 0;
    bool exclude_errored = false;
    /// Cache directory; caching is off when empty.
    std::filesystem::path cache_dir;
};

struct EvalRun {
    EvalReport report;
    std::size_t cache_hits = 0;
    std::size_t client_calls = 0;
};

/// Evaluates the selected records of the dataset in `dataset_dir`. Requests
/// run with endpoint.concurrency workers; the result does not depend on it.
EvalRun run_eval(const std::filesystem::path& dataset_dir, ChatClient& client, const ModelEndpoint& endpoint,
                 const EvalOptions& opt);

/// Aggregates transcripts into per-task and average accuracies (percent) and
/// runs the monotonicity check.
void summarize(EvalReport& report, bool exclude_errored);

nlohmann::ordered_json report_to_json(const EvalReport& r);
/// Tasks as columns, Avg last; one row per metric.
std::string format_report_table(const EvalReport& r);

}  // namespace gita
