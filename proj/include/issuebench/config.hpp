#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace issuebench {

/// Run configuration. Loaded from a TOML-style key/value file; CLI flags
/// override individual fields.
struct RunConfig {
  // model bindings
  std::string baseline_a_model;
  std::string baseline_b_model;
  std::string judge_model;

  // file locations (relative paths resolve against the config file)
  std::filesystem::path providers_file;
  std::filesystem::path taxonomy_rules_file;
  std::filesystem::path cache_dir;

  // execution
  std::uint64_t seed = 0;
  int parallelism = 4;
  int gateway_attempts = 3;
  long long call_budget = 0;  // 0 = unlimited
  int backoff_ms = 500;

  // baseline generation
  int baseline_regen_attempts = 2;
  int baseline_max_output = 8192;

  // judging
  int judge_reask_attempts = 3;
  int judge_max_output = 16384;

  // reporting: when true, report over the judged subset and list gaps in the
  // summary instead of failing
  bool allow_partial_report = false;
};

/// Parse `key = value` lines; `#` starts a comment, strings may be quoted.
RunConfig load_config(const std::filesystem::path& path);

/// Apply one `key=value` override (same keys as the config file).
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace issuebench
