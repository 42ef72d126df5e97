#include "issuebench/config.hpp"

#include <fstream>

#include "issuebench/errors.hpp"
#include "issuebench/util.hpp"

namespace issuebench {

namespace {

std::string unquote(const std::string& value) {
  if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                            (value.front() == '\'' && value.back() == '\''))) {
    return value.substr(1, value.size() - 2);
  }
  return value;
}

long long to_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const long long parsed = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key " + key + " expects an integer, got \"" + value + "\"");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("key " + key + " expects true/false, got \"" + value + "\"");
}

}  // namespace

void apply_override(RunConfig& config, const std::string& key, const std::string& raw_value) {
  const std::string value = unquote(raw_value);
  if (key == "baseline_a_model") config.baseline_a_model = value;
  else if (key == "baseline_b_model") config.baseline_b_model = value;
  else if (key == "judge_model") config.judge_model = value;
  else if (key == "providers_file") config.providers_file = value;
  else if (key == "taxonomy_rules") config.taxonomy_rules_file = value;
  else if (key == "cache_dir") config.cache_dir = value;
  else if (key == "seed") config.seed = static_cast<std::uint64_t>(to_int(key, value));
  else if (key == "parallelism") config.parallelism = static_cast<int>(to_int(key, value));
  else if (key == "gateway_attempts") config.gateway_attempts = static_cast<int>(to_int(key, value));
  else if (key == "call_budget") config.call_budget = to_int(key, value);
  else if (key == "backoff_ms") config.backoff_ms = static_cast<int>(to_int(key, value));
  else if (key == "baseline_regen_attempts")
    config.baseline_regen_attempts = static_cast<int>(to_int(key, value));
  else if (key == "baseline_max_output")
    config.baseline_max_output = static_cast<int>(to_int(key, value));
  else if (key == "judge_reask_attempts")
    config.judge_reask_attempts = static_cast<int>(to_int(key, value));
  else if (key == "judge_max_output") config.judge_max_output = static_cast<int>(to_int(key, value));
  else if (key == "allow_partial_report") config.allow_partial_report = to_bool(key, value);
  else throw ConfigError("unknown key: " + key);
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig config;
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    apply_override(config, key, value);
  }

  // relative paths resolve against the config file's directory
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative()) p = base / p;
  };
  resolve(config.providers_file);
  resolve(config.taxonomy_rules_file);
  resolve(config.cache_dir);
  return config;
}

}  // namespace issuebench
