#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "issuebench/blinder.hpp"
#include "issuebench/gateway.hpp"
#include "issuebench/matrix.hpp"

namespace issuebench {

/// One judged row under blind labels; statuses indexed m1..m4.
struct BlindIssueRow {
  std::string topic;
  Severity severity = Severity::Important;
  std::array<SourceStatusNote, 4> by_label{};  // index 0 = m1
  int best_rigour_label = 0;                   // 0..3
};

/// Validated judge response, still blind.
struct BlindVerdict {
  std::string paper_title;
  std::string decision;
  long long total_issues = 0;
  std::array<long long, 4> best_rigour_counts{};  // M1..M4
  std::string short_takeaway;
  std::vector<BlindIssueRow> issues;
  std::array<std::string, 4> what_added{};  // what_m1_added..what_m4_added
  std::vector<std::string> prompt_lessons;

  Json to_json() const;
};

/// Judge prompt for a payload: fixed system text plus the user template with
/// the source block replaced by the serialized payload.
std::pair<std::string, std::string> render_judge_prompt(const JudgePayload& payload);

/// Validate a raw judge response against the response schema: field
/// presence, enum membership, and count consistencies. Status, severity and
/// best_rigour matching is case-insensitive with canonical-case
/// normalization; any other variance is a SchemaViolationError naming the
/// first failing path.
BlindVerdict validate_verdict(const std::string& raw_json);

struct JudgeOptions {
  int reask_attempts = 3;  // validation re-asks after the first failure
  int max_output_tokens = 16384;
  /// Called once per attempt with the raw response, valid or not.
  std::function<void(int attempt, const std::string& raw)> archive;
};

/// One judge pass for a paper. Invalid JSON triggers bounded re-asks, each
/// appending the SchemaViolation description to the user prompt. Throws
/// JudgeRejectedError when nothing validates.
BlindVerdict judge_paper(const JudgePayload& payload, const std::string& model_id,
                         LlmGateway& gateway, const JudgeOptions& options = {});

/// Remap blind labels to source names. Only labels change: topics,
/// severities, statuses and notes are preserved exactly. A best_rigour tag on
/// a source whose own status is Missed is kept but recorded as lint.
IssueMatrix unblind(const BlindVerdict& verdict, const BlindMap& map, const PaperRecord& paper);

/// Inverse of unblind, used to check the round trip.
BlindVerdict reblind(const IssueMatrix& matrix, const BlindMap& map);

}  // namespace issuebench
