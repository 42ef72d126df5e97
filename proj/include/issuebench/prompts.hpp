#pragma once

#include <string_view>

namespace issuebench::prompts {

/// Flaw-finder prompt used verbatim by both baseline runs.
extern const std::string_view kFlawFinderSystem;
/// Flaw-finder user template; placeholders {title} and {paper_text}.
extern const std::string_view kFlawFinderUserTemplate;

/// Blinded union-of-issues judge prompt.
extern const std::string_view kJudgeSystem;
/// Judge user template; placeholder {payload_json} after the "Sources:" line.
extern const std::string_view kJudgeUserTemplate;

}  // namespace issuebench::prompts
