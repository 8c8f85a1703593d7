// SPDX-License-Identifier: Apache-2.0
//
// Transport-neutral chat-completion interface. Implementations send one
// request and return the assistant text, throwing TransportError when the
// endpoint cannot produce a reply.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gita {

struct ContentPart {
    enum class Kind { Text, Image };
    Kind kind = Kind::Text;
    /// Text for Kind::Text, a URL (usually a data: URL) for Kind::Image.
    std::string data;

    static ContentPart text(std::string s) { return {Kind::Text, std::move(s)}; }
    static ContentPart image(std::string url) { return {Kind::Image, std::move(url)}; }
};

struct ChatMessage {
    std::string role;
    std::vector<ContentPart> content;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_tokens = 512;
};

/// Wire form: {"role", "content": [{"type":"text","text"} | {"type":"image","image_url":{"url"}}]}.
nlohmann::json to_json(const ChatMessage& m);

class ChatClient {
  public:
    virtual ~ChatClient() = default;
    virtual std::string complete(const ChatRequest& request) = 0;
};

}  // namespace gita
