#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "issuebench/config.hpp"
#include "issuebench/manifest.hpp"

namespace issuebench {

struct StageResult {
  long long completed = 0;  // units of work actually done in this invocation
  long long skipped = 0;    // already done on a previous run
  std::vector<std::pair<std::string, std::string>> failures;  // (paper_id, error)

  bool ok() const { return failures.empty(); }
};

/// Stage 1: write baseline review files for every paper lacking them.
/// Idempotent; per-paper failures are recorded without aborting the run.
StageResult cmd_generate(const std::filesystem::path& corpus_root, const RunConfig& config);

/// Stage 2: blind, judge and unblind every paper with all four streams.
/// Writes one matrix file per paper plus the payload and verdict archives.
StageResult cmd_judge(const std::filesystem::path& corpus_root, const RunConfig& config);

/// Stage 3: merge the per-paper matrices, tag taxonomy, compute metrics and
/// emit the report bundle. Throws IncompleteRunError listing unjudged papers
/// unless config.allow_partial_report is set.
StageResult cmd_report(const std::filesystem::path& corpus_root, const RunConfig& config);

// run artifact locations, relative to the corpus root
std::filesystem::path matrices_dir(const std::filesystem::path& corpus_root);
std::filesystem::path matrix_path(const std::filesystem::path& corpus_root,
                                  const std::string& paper_id);
std::filesystem::path payload_archive_path(const std::filesystem::path& corpus_root,
                                           const std::string& paper_id);
std::filesystem::path verdict_archive_path(const std::filesystem::path& corpus_root,
                                           const std::string& paper_id, int attempt);
std::filesystem::path report_dir(const std::filesystem::path& corpus_root);

}  // namespace issuebench
