#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "issuebench/errors.hpp"

namespace issuebench {

/// Venue outcome folder of a paper.
enum class DecisionStratum { Oral, Accepted, Conditional, Rejected };

/// The four review streams fed to the judge per paper. Candidate is the
/// system under test; BaselineA/B are the two flaw-finder runs.
enum class SourceName { Human, Candidate, BaselineA, BaselineB };

/// Judge label for one (issue, source) pair.
enum class IssueStatus { Caught, Partial, Missed };

/// Judge-assigned importance of an issue.
enum class Severity { Core, Important, Secondary };

/// Issue taxonomy bucket; assignment is keyword-rule based.
enum class TaxonomyLabel {
  Mechanism,
  Controls,
  Scope,
  Fairness,
  Statistics,
  Presentation,
  DataIntegrity,
  Reproducibility,
  Alignment,
  FailureModes,
  Other,
};

inline constexpr std::array<DecisionStratum, 4> kAllStrata = {
    DecisionStratum::Oral, DecisionStratum::Accepted, DecisionStratum::Conditional,
    DecisionStratum::Rejected};

inline constexpr std::array<SourceName, 4> kAllSources = {
    SourceName::Human, SourceName::Candidate, SourceName::BaselineA, SourceName::BaselineB};

inline constexpr std::array<SourceName, 3> kAutomatedSources = {
    SourceName::Candidate, SourceName::BaselineA, SourceName::BaselineB};

inline constexpr std::array<Severity, 3> kAllSeverities = {Severity::Core, Severity::Important,
                                                           Severity::Secondary};

inline constexpr std::array<TaxonomyLabel, 11> kAllTaxonomyLabels = {
    TaxonomyLabel::Mechanism,      TaxonomyLabel::Controls,     TaxonomyLabel::Scope,
    TaxonomyLabel::Fairness,       TaxonomyLabel::Statistics,   TaxonomyLabel::Presentation,
    TaxonomyLabel::DataIntegrity,  TaxonomyLabel::Reproducibility, TaxonomyLabel::Alignment,
    TaxonomyLabel::FailureModes,   TaxonomyLabel::Other};

std::string_view to_string(DecisionStratum s);
std::string_view to_string(SourceName s);
std::string_view to_string(IssueStatus s);
std::string_view to_string(Severity s);
std::string_view to_string(TaxonomyLabel s);

DecisionStratum stratum_from_string(std::string_view s);
SourceName source_from_string(std::string_view s);
IssueStatus status_from_string(std::string_view s);
Severity severity_from_string(std::string_view s);
TaxonomyLabel taxonomy_from_string(std::string_view s);

inline int index_of(SourceName s) { return static_cast<int>(s); }
inline int index_of(DecisionStratum s) { return static_cast<int>(s); }
inline int index_of(Severity s) { return static_cast<int>(s); }

}  // namespace issuebench
