// SPDX-License-Identifier: Apache-2.0

#include "gita/chat.hpp"

namespace gita {

nlohmann::json to_json(const ChatMessage& m) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : m.content) {
        if (p.kind == ContentPart::Kind::Text) {
            parts.push_back({{"type", "text"}, {"text", p.data}});
        } else {
            parts.push_back({{"type", "image"}, {"image_url", {{"url", p.data}}}});
        }
    }
    return {{"role", m.role}, {"content", std::move(parts)}};
}

}  // namespace gita
