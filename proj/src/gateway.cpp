#include "issuebench/gateway.hpp"

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "issuebench/errors.hpp"

namespace issuebench {

namespace fs = std::filesystem;

// --- MockProvider ---

MockProvider::MockProvider(const Json& fixture) {
  if (fixture.contains("default")) {
    default_text_ = fixture.at("default").at("text").get<std::string>();
  }
  if (fixture.contains("responses")) {
    for (const Json& r : fixture.at("responses")) {
      Entry entry;
      entry.key = r.value("key", std::string{});
      entry.match = r.value("match", std::string{});
      entry.model = r.value("model", std::string{});
      entry.fail = r.value("fail", false);
      if (r.contains("text")) {
        entry.texts.push_back(r.at("text").get<std::string>());
      }
      if (r.contains("texts")) {
        for (const Json& t : r.at("texts")) {
          entry.texts.push_back(t.get<std::string>());
        }
      }
      entries_.push_back(std::move(entry));
    }
  }
}

std::shared_ptr<MockProvider> MockProvider::from_file(const fs::path& path) {
  return std::make_shared<MockProvider>(read_json_file(path));
}

std::string MockProvider::complete(const ChatRequest& req) {
  const std::string key = LlmGateway::cache_key(req);

  const Entry* found = nullptr;
  size_t found_index = 0;
  for (size_t i = 0; i < entries_.size() && found == nullptr; ++i) {
    if (!entries_[i].key.empty() && entries_[i].key == key) {
      found = &entries_[i];
      found_index = i;
    }
  }
  for (size_t i = 0; i < entries_.size() && found == nullptr; ++i) {
    const Entry& e = entries_[i];
    if (e.key.empty() && !e.match.empty() &&
        (e.model.empty() || e.model == req.model_id) &&
        req.user_prompt.find(e.match) != std::string::npos) {
      found = &e;
      found_index = i;
    }
  }

  if (found != nullptr) {
    if (found->fail) {
      throw ProviderError("mock entry configured to fail (model " + req.model_id + ")");
    }
    if (found->texts.empty()) {
      throw ProviderError("mock entry has no text (model " + req.model_id + ")");
    }
    int attempt = 0;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      attempt = attempt_counts_[{found_index, key}]++;
    }
    const size_t idx = std::min<size_t>(attempt, found->texts.size() - 1);
    return found->texts.at(idx);
  }
  if (default_text_.has_value()) {
    return *default_text_;
  }
  throw ProviderError("no mock entry matches request for model " + req.model_id);
}

// --- OpenAiChatProvider ---

OpenAiChatProvider::OpenAiChatProvider(std::string endpoint, std::string api_key_env,
                                       std::string model_name)
    : endpoint_(std::move(endpoint)),
      api_key_env_(std::move(api_key_env)),
      model_name_(std::move(model_name)) {}

std::string OpenAiChatProvider::complete(const ChatRequest& req) {
  const char* api_key = std::getenv(api_key_env_.c_str());
  if (api_key == nullptr || *api_key == '\0') {
    throw ProviderError("environment variable " + api_key_env_ + " is not set");
  }

  // split endpoint into host part and path
  std::string url = endpoint_;
  std::string scheme_host;
  std::string path = "/";
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ProviderError("endpoint must include scheme: " + endpoint_);
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    scheme_host = url;
  } else {
    scheme_host = url.substr(0, path_start);
    path = url.substr(path_start);
  }

  Json body;
  body["model"] = model_name_.empty() ? req.model_id : model_name_;
  body["messages"] = Json::array({
      Json{{"role", "system"}, {"content", req.system_prompt}},
      Json{{"role", "user"}, {"content", req.user_prompt}},
  });
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_output_tokens;

  httplib::Client client(scheme_host);
  client.set_read_timeout(600, 0);
  client.set_write_timeout(600, 0);
  httplib::Headers headers = {{"Authorization", std::string("Bearer ") + api_key}};
  auto result = client.Post(path, headers, body.dump(), "application/json");
  if (!result) {
    throw ProviderError("HTTP transport failure: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw ProviderError("HTTP " + std::to_string(result->status) + ": " + result->body);
  }
  Json response;
  try {
    response = Json::parse(result->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProviderError(std::string("unparseable provider response: ") + e.what());
  }
  try {
    return response.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(std::string("unexpected provider response shape: ") + e.what());
  }
}

// --- LlmGateway ---

LlmGateway::LlmGateway(GatewayOptions options) : options_(std::move(options)) {}

void LlmGateway::register_provider(const std::string& model_id,
                                   std::shared_ptr<Provider> provider) {
  std::lock_guard<std::mutex> lock(mutex_);
  providers_[model_id] = std::move(provider);
}

bool LlmGateway::has_provider(const std::string& model_id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return providers_.count(model_id) > 0;
}

std::string LlmGateway::cache_key(const ChatRequest& req) {
  Json canonical;
  canonical["model_id"] = req.model_id;
  canonical["system_prompt"] = req.system_prompt;
  canonical["user_prompt"] = req.user_prompt;
  canonical["temperature"] = req.temperature;
  return sha256_hex(canonical.dump());
}

long long LlmGateway::provider_calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return provider_calls_;
}

std::string LlmGateway::call_provider(const ChatRequest& req) {
  std::shared_ptr<Provider> provider;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = providers_.find(req.model_id);
    if (it == providers_.end()) {
      throw ProviderError("no provider registered for model " + req.model_id);
    }
    provider = it->second;
  }

  std::string last_error;
  for (int attempt = 0; attempt < std::max(1, options_.max_attempts); ++attempt) {
    if (attempt > 0 && options_.backoff_base.count() > 0) {
      std::this_thread::sleep_for(options_.backoff_base * (1LL << (attempt - 1)));
    }
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (options_.call_budget > 0 && provider_calls_ >= options_.call_budget) {
        throw BudgetExceededError(options_.call_budget);
      }
      ++provider_calls_;
    }
    try {
      return provider->complete(req);
    } catch (const ProviderError& e) {
      last_error = e.what();
    }
  }
  throw ProviderError("all " + std::to_string(options_.max_attempts) +
                      " attempts failed; last: " + last_error);
}

ChatResponse LlmGateway::complete(const ChatRequest& req, const CompleteOptions& opts) {
  if (req.system_prompt.empty() || req.user_prompt.empty()) {
    throw Error("chat request prompts must be non-empty");
  }
  const std::string key = cache_key(req);
  const fs::path cache_file =
      options_.cache_dir.empty() ? fs::path{} : options_.cache_dir / (key + ".json");

  if (!opts.bypass_cache && !cache_file.empty() && fs::exists(cache_file)) {
    const Json cached = read_json_file(cache_file);
    ChatResponse response;
    response.text = cached.at("text").get<std::string>();
    response.model_id = cached.at("model_id").get<std::string>();
    response.cached = true;
    return response;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string text = call_provider(req);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);

  if (text.empty()) {
    throw ProviderError("provider returned empty text for model " + req.model_id);
  }

  if (!cache_file.empty()) {
    Json record;
    record["model_id"] = req.model_id;
    record["key"] = key;
    record["text"] = text;
    // one writer per key at a time; the atomic rename keeps readers safe
    std::lock_guard<std::mutex> lock(mutex_);
    fs::create_directories(options_.cache_dir);
    write_json_file(cache_file, record);
  }

  ChatResponse response;
  response.text = std::move(text);
  response.model_id = req.model_id;
  response.latency = elapsed;
  response.cached = false;
  return response;
}

std::unique_ptr<LlmGateway> build_gateway(const fs::path& providers_file,
                                          const GatewayOptions& options) {
  auto gateway = std::make_unique<LlmGateway>(options);
  const Json config = read_json_file(providers_file);
  if (!config.contains("models") || !config.at("models").is_object()) {
    throw ConfigError("providers file needs a top-level \"models\" object: " +
                      providers_file.string());
  }
  for (const auto& [model_id, spec] : config.at("models").items()) {
    const std::string type = spec.at("type").get<std::string>();
    if (type == "mock") {
      fs::path fixture = spec.at("fixture").get<std::string>();
      if (fixture.is_relative()) {
        fixture = providers_file.parent_path() / fixture;
      }
      gateway->register_provider(model_id, MockProvider::from_file(fixture));
    } else if (type == "openai_chat") {
      gateway->register_provider(
          model_id,
          std::make_shared<OpenAiChatProvider>(spec.at("endpoint").get<std::string>(),
                                               spec.at("api_key_env").get<std::string>(),
                                               spec.value("model_name", model_id)));
    } else {
      throw ConfigError("unknown provider type \"" + type + "\" for model " + model_id);
    }
  }
  return gateway;
}

}  // namespace issuebench
