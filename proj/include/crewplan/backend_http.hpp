#ifndef CREWPLAN_BACKEND_HTTP_HPP
#define CREWPLAN_BACKEND_HTTP_HPP

#include <httplib.h>

#include "crewplan/backend.hpp"

namespace crewplan {

// POSTs one chat-completion request, retrying transport failures and 5xx
// per the backoff schedule. Auth and token-limit problems are surfaced as
// their own error types and never retried.
inline std::string HttpChatBackend::complete(const std::string& prompt) {
  const std::string key = resolve_credential(config_);
  const detail::ParsedUrl url = detail::split_url(config_.endpoint);

  nlohmann::json body = {
      {"model", config_.model},
      {"messages",
       nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
      {"temperature", config_.temperature},
      {"max_tokens", config_.max_tokens},
  };
  const std::string payload = body.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(backoff_for_attempt(config_, attempt - 1)));
    }
    httplib::Client client(url.base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);
    httplib::Headers headers = {{"Authorization", "Bearer " + key}};
    httplib::Result res = client.Post(url.path, headers, payload,
                                      "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;  // transport failure, retry
    }
    if (res->status == 401 || res->status == 403) {
      throw AuthError("backend rejected the credential (HTTP " +
                      std::to_string(res->status) + ")");
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      throw TransportError("backend returned malformed JSON (HTTP " +
                           std::to_string(res->status) + ")");
    }
    if (res->status != 200) {
      std::string code = reply.contains("error")
                             ? reply["error"].value("code", std::string{})
                             : std::string{};
      if (code.find("context_length") != std::string::npos ||
          code.find("token") != std::string::npos) {
        throw TokenLimitError("request exceeds the model's token limit: " +
                              code);
      }
      throw TransportError("backend error (HTTP " +
                           std::to_string(res->status) + "): " + res->body);
    }
    const nlohmann::json& choice = reply.at("choices").at(0);
    if (choice.value("finish_reason", std::string{}) == "length") {
      throw TokenLimitError("reply was truncated at the max_tokens limit");
    }
    return choice.at("message").at("content").get<std::string>();
  }
  throw TransportError("backend unreachable after " +
                       std::to_string(config_.retries + 1) + " attempts: " +
                       last_error);
}

}  // namespace crewplan

#endif  // CREWPLAN_BACKEND_HTTP_HPP
