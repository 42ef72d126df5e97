#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "issuebench/types.hpp"
#include "issuebench/util.hpp"

namespace issuebench {

struct SourceStatusNote {
  IssueStatus status = IssueStatus::Missed;
  std::string note;
};

/// One judged concern with per-source statuses, unblinded to source names.
struct IssueRow {
  std::string paper_id;
  DecisionStratum stratum = DecisionStratum::Oral;
  std::string topic;
  Severity severity = Severity::Important;
  std::array<SourceStatusNote, 4> statuses{};  // indexed by SourceName
  SourceName best_rigour = SourceName::Human;
  TaxonomyLabel taxonomy = TaxonomyLabel::Other;

  const SourceStatusNote& status_of(SourceName s) const { return statuses[index_of(s)]; }
  SourceStatusNote& status_of(SourceName s) { return statuses[index_of(s)]; }
  bool hit_by(SourceName s) const {
    return status_of(s).status != IssueStatus::Missed;
  }
};

/// Per-paper union of issues plus the judge's summary and analysis fields.
struct IssueMatrix {
  std::string paper_id;
  std::string paper_title;
  DecisionStratum stratum = DecisionStratum::Oral;
  std::string decision;  // judge's free-text decision field, recorded as-is
  std::string short_takeaway;
  std::map<SourceName, long long> best_rigour_counts;
  std::vector<IssueRow> rows;
  std::map<SourceName, std::string> what_added;
  std::vector<std::string> prompt_lessons;
  std::vector<std::string> lint;

  Json to_json() const;
  static IssueMatrix from_json(const Json& j);
};

struct PaperEntry {
  std::string paper_id;
  DecisionStratum stratum = DecisionStratum::Oral;
  long long row_count = 0;
};

/// Concatenation of per-paper matrices: rows from one paper are contiguous
/// and papers appear in paper_id order. No cross-paper deduplication.
struct CorpusMatrix {
  std::vector<IssueRow> rows;
  std::vector<PaperEntry> papers;

  long long n() const { return static_cast<long long>(rows.size()); }
};

CorpusMatrix merge_corpus(const std::vector<IssueMatrix>& matrices);

// --- taxonomy ---

struct TaxonomyRule {
  TaxonomyLabel label = TaxonomyLabel::Other;
  std::vector<std::string> keywords;
};

/// Ordered rule list; the first rule with any keyword matching the topic
/// (case-insensitive substring) wins, otherwise Other.
struct RuleSet {
  std::string version;
  std::vector<TaxonomyRule> rules;
};

RuleSet load_rules(const std::filesystem::path& path);

TaxonomyLabel tag_taxonomy(const IssueRow& row, const RuleSet& rules);
void tag_all(CorpusMatrix& matrix, const RuleSet& rules);

// --- corpus-level measures ---

struct MeanIssues {
  double mean = 0.0;
  double median = 0.0;
};

/// Mean and median judged issue rows per paper. Throws EmptyCorpusError.
MeanIssues mean_issues_per_paper(const CorpusMatrix& matrix);

// --- serialization ---

Json row_to_json(const IssueRow& row);
IssueRow row_from_json(const Json& j);

/// One row per line, stable field order.
void write_matrix_jsonl(const CorpusMatrix& matrix, const std::filesystem::path& path);
/// Flat CSV projection (statuses only, no notes) for spreadsheet audit.
void write_matrix_csv(const CorpusMatrix& matrix, const std::filesystem::path& path);

}  // namespace issuebench
