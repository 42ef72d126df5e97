#include "issuebench/types.hpp"

namespace issuebench {

std::string_view to_string(DecisionStratum s) {
  switch (s) {
    case DecisionStratum::Oral: return "oral";
    case DecisionStratum::Accepted: return "accepted";
    case DecisionStratum::Conditional: return "conditional";
    case DecisionStratum::Rejected: return "rejected";
  }
  throw Error("bad stratum");
}

std::string_view to_string(SourceName s) {
  switch (s) {
    case SourceName::Human: return "Human";
    case SourceName::Candidate: return "Candidate";
    case SourceName::BaselineA: return "BaselineA";
    case SourceName::BaselineB: return "BaselineB";
  }
  throw Error("bad source");
}

std::string_view to_string(IssueStatus s) {
  switch (s) {
    case IssueStatus::Caught: return "Caught";
    case IssueStatus::Partial: return "Partial";
    case IssueStatus::Missed: return "Missed";
  }
  throw Error("bad status");
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Core: return "core";
    case Severity::Important: return "important";
    case Severity::Secondary: return "secondary";
  }
  throw Error("bad severity");
}

std::string_view to_string(TaxonomyLabel s) {
  switch (s) {
    case TaxonomyLabel::Mechanism: return "Mechanism";
    case TaxonomyLabel::Controls: return "Controls";
    case TaxonomyLabel::Scope: return "Scope";
    case TaxonomyLabel::Fairness: return "Fairness";
    case TaxonomyLabel::Statistics: return "Statistics";
    case TaxonomyLabel::Presentation: return "Presentation";
    case TaxonomyLabel::DataIntegrity: return "DataIntegrity";
    case TaxonomyLabel::Reproducibility: return "Reproducibility";
    case TaxonomyLabel::Alignment: return "Alignment";
    case TaxonomyLabel::FailureModes: return "FailureModes";
    case TaxonomyLabel::Other: return "Other";
  }
  throw Error("bad taxonomy label");
}

namespace {

template <typename Enum, size_t N>
Enum parse_enum(std::string_view s, const std::array<Enum, N>& values, const char* what) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  throw Error(std::string("unknown ") + what + ": " + std::string(s));
}

}  // namespace

DecisionStratum stratum_from_string(std::string_view s) {
  return parse_enum(s, kAllStrata, "decision stratum");
}

SourceName source_from_string(std::string_view s) { return parse_enum(s, kAllSources, "source"); }

IssueStatus status_from_string(std::string_view s) {
  return parse_enum(s, std::array<IssueStatus, 3>{IssueStatus::Caught, IssueStatus::Partial,
                                                  IssueStatus::Missed},
                    "status");
}

Severity severity_from_string(std::string_view s) {
  return parse_enum(s, kAllSeverities, "severity");
}

TaxonomyLabel taxonomy_from_string(std::string_view s) {
  return parse_enum(s, kAllTaxonomyLabels, "taxonomy label");
}

}  // namespace issuebench
