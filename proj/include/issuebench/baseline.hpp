#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "issuebench/corpus.hpp"
#include "issuebench/gateway.hpp"

namespace issuebench {

enum class DecisionLabel { Accept, Borderline, Reject, StrongReject };

std::string_view to_string(DecisionLabel d);
DecisionLabel decision_label_from_string(std::string_view s);

/// The seven headings, in required order, that a flaw-finder review must
/// carry as literal "## NAME" markdown sections.
inline constexpr std::array<std::string_view, 7> kReviewSections = {
    "CORE CLAIM",       "MAIN RISKS",          "DOMAIN-SPECIFIC CONCERNS", "MISSING VALIDATION",
    "SHARPEST FLAW",    "ACCEPTANCE RECOMMENDATION", "POINTERS"};

struct ParsedReview {
  std::map<std::string, std::string> sections;  // heading -> body text
  std::vector<std::string> pointers;            // bullets under ## POINTERS
  int score = 0;                                // 1..10
  DecisionLabel decision_label = DecisionLabel::Borderline;
  DecisionStratum tier_prediction = DecisionStratum::Rejected;
  std::string reasoning;
};

struct ParseResult {
  ParsedReview review;
  std::vector<std::string> warnings;  // lint findings, e.g. PointerCountOutOfRange
};

/// Flaw-finder prompt for one paper: the fixed system text plus the user
/// template with {title} and {paper_text} substituted positionally.
std::pair<std::string, std::string> render_flaw_finder_prompt(const PaperRecord& paper);

/// Parse a review against the required markdown structure. Throws
/// MissingSectionError / MalformedRecommendationError; an out-of-range
/// pointer count is a warning, not a failure.
ParseResult parse_review(const std::string& text);

struct BaselineOptions {
  int regen_attempts = 2;      // extra generations after a failed parse
  int max_output_tokens = 8192;
  int regen_max_output_tokens = 16384;  // raised on retry; failures usually mean truncation
};

/// Run the flaw-finder prompt for one paper on one model and return the
/// stream for the given baseline slot. The raw response text is preserved
/// exactly; parsing only gates acceptance. Throws ReviewRejectedError once
/// the regeneration budget is exhausted.
ReviewStream generate_baseline_review(const PaperRecord& paper, const std::string& model_id,
                                      SourceName slot, LlmGateway& gateway,
                                      const BaselineOptions& options = {});

}  // namespace issuebench
