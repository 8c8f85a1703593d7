// SPDX-License-Identifier: Apache-2.0

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "gita/error.hpp"
#include "gita/eval.hpp"

namespace gita {

namespace {

bool retryable_status(int status) { return status == 429 || status >= 500; }

std::string snippet(const std::string& body) { return body.size() > 200 ? body.substr(0, 200) + "..." : body; }

}  // namespace

HttpChatClient::HttpChatClient(ModelEndpoint endpoint) : endpoint_(std::move(endpoint)) {
    const auto scheme_end = endpoint_.base_url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("base_url needs a scheme: " + endpoint_.base_url);
    const auto host_end = endpoint_.base_url.find('/', scheme_end + 3);
    origin_ = endpoint_.base_url.substr(0, host_end);
    std::string prefix = host_end == std::string::npos ? "" : endpoint_.base_url.substr(host_end);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    full_path_ = prefix + (endpoint_.path.starts_with('/') ? "" : "/") + endpoint_.path;
}

std::string HttpChatClient::complete(const ChatRequest& request) {
    httplib::Client cli(origin_);
    cli.set_connection_timeout(std::chrono::seconds(endpoint_.timeout_seconds));
    cli.set_read_timeout(std::chrono::seconds(endpoint_.timeout_seconds));
    cli.set_write_timeout(std::chrono::seconds(endpoint_.timeout_seconds));

    httplib::Headers headers;
    if (!endpoint_.token_env.empty()) {
        if (const char* token = std::getenv(endpoint_.token_env.c_str()); token && *token) {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }
    }
    const std::string body = request_body(endpoint_, request).dump();

    const RetryPolicy& rp = endpoint_.retry;
    std::string last_problem;
    for (int attempt = 1; attempt <= rp.max_attempts; ++attempt) {
        ++requests_;
        auto res = cli.Post(full_path_, headers, body, "application/json");
        long wait_ms = -1;
        if (!res) {
            last_problem = "connection failed: " + httplib::to_string(res.error());
        } else if (res->status >= 200 && res->status < 300) {
            nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
            if (parsed.is_discarded()) throw TransportError("response is not JSON: " + snippet(res->body));
            return reply_text(parsed);
        } else if (retryable_status(res->status)) {
            last_problem = "HTTP " + std::to_string(res->status) + ": " + snippet(res->body);
            if (res->has_header("Retry-After")) {
                char* end = nullptr;
                const std::string ra = res->get_header_value("Retry-After");
                const long secs = std::strtol(ra.c_str(), &end, 10);
                if (end && *end == '\0' && secs >= 0) wait_ms = secs * 1000;
            }
        } else {
            throw TransportError("HTTP " + std::to_string(res->status) + " from " + origin_ + full_path_ + ": " +
                                 snippet(res->body));
        }
        if (attempt == rp.max_attempts) break;
        const double backoff = rp.initial_backoff_ms * std::pow(rp.multiplier, attempt - 1);
        wait_ms = std::max<long>(wait_ms, std::lround(backoff));
        wait_ms = std::min<long>(wait_ms, rp.max_backoff_ms);
        std::this_thread::sleep_for(std::chrono::milliseconds(wait_ms));
    }
    throw TransportError("giving up after " + std::to_string(rp.max_attempts) + " attempts: " + last_problem);
}

}  // namespace gita
