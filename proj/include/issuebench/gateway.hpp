#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "issuebench/util.hpp"

namespace issuebench {

struct ChatRequest {
  std::string model_id;
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.0;
  int max_output_tokens = 8192;
};

struct ChatResponse {
  std::string text;
  std::string model_id;
  std::chrono::milliseconds latency{0};
  bool cached = false;
};

/// One configured backend for a model id.
class Provider {
 public:
  virtual ~Provider() = default;
  /// Returns the completion text or throws ProviderError.
  virtual std::string complete(const ChatRequest& req) = 0;
};

/// Table-driven provider for tests and offline runs. Fixture file schema:
///   {
///     "default": {"text": "..."},
///     "responses": [
///       {"key": "<cache key>", "text": "..."},
///       {"match": "<substring of user prompt>", "text": "..."},
///       {"match": "...", "texts": ["attempt 1", "attempt 2"]},
///       {"match": "...", "fail": true}
///     ]
///   }
/// Entries are tried in order: exact key match first, then the first
/// substring match, then the default. "texts" entries answer repeated calls
/// for the same request with successive elements (the last one repeats), so
/// fixtures can script regeneration loops deterministically.
class MockProvider : public Provider {
 public:
  explicit MockProvider(const Json& fixture);
  static std::shared_ptr<MockProvider> from_file(const std::filesystem::path& path);

  std::string complete(const ChatRequest& req) override;

 private:
  struct Entry {
    std::string key;    // exact cache-key match
    std::string match;  // substring match on user prompt
    std::string model;  // optional model filter
    std::vector<std::string> texts;
    bool fail = false;
  };
  std::vector<Entry> entries_;
  std::optional<std::string> default_text_;
  std::map<std::pair<size_t, std::string>, int> attempt_counts_;  // (entry, cache key)
  std::mutex mutex_;
};

/// OpenAI-style chat-completions endpoint over HTTPS. The API key is read
/// from an environment variable at call time, never stored in config files.
class OpenAiChatProvider : public Provider {
 public:
  OpenAiChatProvider(std::string endpoint, std::string api_key_env, std::string model_name);
  std::string complete(const ChatRequest& req) override;

 private:
  std::string endpoint_;
  std::string api_key_env_;
  std::string model_name_;
};

struct GatewayOptions {
  std::filesystem::path cache_dir;     // empty -> caching disabled
  int max_attempts = 3;                // provider attempts per request
  std::chrono::milliseconds backoff_base{500};
  long long call_budget = 0;           // cap on provider calls; 0 = unlimited
};

struct CompleteOptions {
  /// Skip the cache read (the write still happens). Regeneration loops use
  /// this so a cached bad response cannot satisfy the retry.
  bool bypass_cache = false;
};

/// Provider-agnostic chat access with a content-addressed disk cache, retry
/// with exponential backoff, and a call budget. Safe for concurrent callers.
class LlmGateway {
 public:
  explicit LlmGateway(GatewayOptions options);

  void register_provider(const std::string& model_id, std::shared_ptr<Provider> provider);
  bool has_provider(const std::string& model_id) const;

  /// Stable content hash over (model_id, system_prompt, user_prompt,
  /// temperature); equal requests give equal keys.
  static std::string cache_key(const ChatRequest& req);

  ChatResponse complete(const ChatRequest& req, const CompleteOptions& opts = {});

  /// Number of actual provider invocations (cache hits excluded).
  long long provider_calls() const;

 private:
  std::string call_provider(const ChatRequest& req);

  GatewayOptions options_;
  std::map<std::string, std::shared_ptr<Provider>> providers_;
  mutable std::mutex mutex_;
  long long provider_calls_ = 0;
};

/// Build a gateway from a providers config file:
///   {"models": {"<model_id>": {"type": "mock", "fixture": "relative/path.json"},
///               "<model_id>": {"type": "openai_chat", "endpoint": "...",
///                               "api_key_env": "...", "model_name": "..."}}}
/// Mock fixture paths resolve relative to the config file.
std::unique_ptr<LlmGateway> build_gateway(const std::filesystem::path& providers_file,
                                          const GatewayOptions& options);

}  // namespace issuebench
