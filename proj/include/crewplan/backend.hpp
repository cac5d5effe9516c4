#ifndef CREWPLAN_BACKEND_HPP
#define CREWPLAN_BACKEND_HPP

#include <chrono>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "crewplan/core.hpp"

namespace crewplan {

struct BackendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The credential environment variable is unset or the server rejected it.
struct AuthError : BackendError {
  using BackendError::BackendError;
};
// The endpoint could not be reached (after all retries).
struct TransportError : BackendError {
  using BackendError::BackendError;
};
// The request or the reply hit the model's token limit.
struct TokenLimitError : BackendError {
  using BackendError::BackendError;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendConfig {
  std::string endpoint;        // full URL of the chat-completions route
  std::string model;
  std::string credential_env;  // env var holding the API key
  double temperature = 0.0;
  int max_tokens = 2048;
  int retries = 2;
  std::vector<int> backoff_ms = {250, 1000};  // clamps at the last entry
};

// Reads a flat key = value config file. `#` comments, values optionally
// double-quoted, backoff_ms as a comma list.
inline BackendConfig load_backend_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open backend config " + path);
  BackendConfig cfg;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "endpoint") {
      cfg.endpoint = value;
    } else if (key == "model") {
      cfg.model = value;
    } else if (key == "credential_env") {
      cfg.credential_env = value;
    } else if (key == "temperature") {
      cfg.temperature = std::strtod(value.c_str(), nullptr);
    } else if (key == "max_tokens") {
      cfg.max_tokens = std::atoi(value.c_str());
    } else if (key == "retries") {
      cfg.retries = std::atoi(value.c_str());
    } else if (key == "backoff_ms") {
      cfg.backoff_ms.clear();
      std::string item;
      for (char c : value + ",") {
        if (c == ',') {
          item = trim(item);
          if (!item.empty()) cfg.backoff_ms.push_back(std::atoi(item.c_str()));
          item.clear();
        } else {
          item.push_back(c);
        }
      }
    } else {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  if (cfg.temperature < 0) throw ConfigError("temperature must be >= 0");
  if (cfg.retries < 0) throw ConfigError("retries must be >= 0");
  if (cfg.endpoint.empty()) throw ConfigError("endpoint is required");
  return cfg;
}

// A chat-completion service: one prompt in, one reply out.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const std::string& prompt) = 0;
};

// Scripted backend for tests and offline runs. Replies are consumed in
// order; running past the script is a transport error.
class MockBackend : public ChatBackend {
 public:
  MockBackend() = default;
  explicit MockBackend(std::vector<std::string> replies)
      : replies_(replies.begin(), replies.end()) {}

  void push_reply(std::string reply) {
    std::lock_guard lock(mu_);
    replies_.push_back(std::move(reply));
  }

  std::string complete(const std::string& prompt) override {
    std::lock_guard lock(mu_);
    prompts_.push_back(prompt);
    if (replies_.empty()) {
      throw TransportError("mock backend has no scripted reply left");
    }
    std::string reply = std::move(replies_.front());
    replies_.pop_front();
    return reply;
  }

  const std::vector<std::string>& prompts() const { return prompts_; }

 private:
  std::mutex mu_;
  std::deque<std::string> replies_;
  std::vector<std::string> prompts_;
};

namespace detail {

struct ParsedUrl {
  std::string base;  // scheme://host:port
  std::string path;  // /v1/chat/completions
};

inline ParsedUrl split_url(const std::string& url) {
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("endpoint URL must include a scheme: " + url);
  }
  size_t slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace detail

// HTTP client speaking the common chat-completions wire format. Declared
// here, defined in backend_http.hpp to keep cpp-httplib out of translation
// units that never talk to a live service.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(BackendConfig config) : config_(std::move(config)) {}

  std::string complete(const std::string& prompt) override;

  const BackendConfig& config() const { return config_; }

 private:
  BackendConfig config_;
};

inline std::string resolve_credential(const BackendConfig& cfg) {
  if (cfg.credential_env.empty()) {
    throw AuthError("no credential environment variable configured");
  }
  const char* key = std::getenv(cfg.credential_env.c_str());
  if (!key || !*key) {
    throw AuthError("credential environment variable " + cfg.credential_env +
                    " is not set");
  }
  return key;
}

inline int backoff_for_attempt(const BackendConfig& cfg, int attempt) {
  if (cfg.backoff_ms.empty()) return 0;
  size_t i = std::min(static_cast<size_t>(attempt), cfg.backoff_ms.size() - 1);
  return cfg.backoff_ms[i];
}

}  // namespace crewplan

#endif  // CREWPLAN_BACKEND_HPP
