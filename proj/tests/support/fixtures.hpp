#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "issuebench/corpus.hpp"
#include "issuebench/matrix.hpp"

namespace testfx {

using issuebench::CorpusMatrix;
using issuebench::IssueMatrix;
using issuebench::IssueRow;
using issuebench::Json;

/// Unique temp directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// --- corpus trees ---

struct PaperSpec {
  std::string paper_id;
  std::string stratum = "oral";
  std::string title;
  std::string body = "Body text.";
  bool with_meta_review = true;
  bool with_decision = true;
  bool with_metadata = false;
  bool with_candidate = true;
  bool with_baseline_a = true;
  bool with_baseline_b = true;
};

/// Write one paper directory under root/<stratum>/<paper_id>/.
void write_paper(const std::filesystem::path& root, const PaperSpec& spec);

/// Well-formed flaw-finder review text with the given pointer count.
std::string valid_review_text(int bullets = 10, int score = 4,
                              const std::string& flavor = "baseline");

/// Valid blind verdict with n_issues rows; statuses cycle deterministically
/// from `variant` so different papers get different matrices.
Json valid_verdict_json(const std::string& title, int n_issues, int variant = 0);

/// One single-field corruption of a valid verdict and the schema path the
/// validator must blame for it.
struct VerdictMutation {
  std::string expected_path;
  std::function<void(Json&)> corrupt;
};

/// At least 20 distinct corruptions covering bad enums, count mismatches,
/// missing fields and extra fields. Built for a verdict with >= 3 issues.
std::vector<VerdictMutation> verdict_mutations();

/// The standard three-paper corpus used by the end-to-end tests. Returns the
/// paper ids (alpha/beta/gamma across three strata). Candidate reviews are
/// written; baselines are left for the generate stage.
std::vector<std::string> write_e2e_corpus(const std::filesystem::path& root);

/// Providers file + mock fixtures for the three-paper corpus: mock-gpt and
/// mock-claude answer the flaw-finder prompt, mock-judge answers the judge
/// prompt with valid verdicts.
void write_e2e_providers(const std::filesystem::path& dir);

/// Config file for the three-paper corpus pointing at the providers file and
/// the repo's default taxonomy rules.
std::filesystem::path write_e2e_config(const std::filesystem::path& dir, std::uint64_t seed);

// --- matrices ---

/// Single issue row with the four statuses given as 'C', 'P' or 'M' in
/// source order (Human, Candidate, BaselineA, BaselineB).
IssueRow make_row(const std::string& paper_id, const std::string& stratum,
                  const std::string& statuses, const std::string& best_rigour = "Human",
                  const std::string& severity = "important",
                  const std::string& topic = "fixture topic");

/// Corpus matrix that reproduces the published corpus exactly: stratum sizes
/// and paper counts, per-stratum per-source status counts, the human-salient
/// split, severity and taxonomy partition sizes, best-rigour totals, and the
/// per-paper row-count distribution (mean 45.98, median 45.5).
CorpusMatrix reconstructed_corpus_matrix();

/// Random matrix (1..200 rows, 1..6 papers) for property tests.
CorpusMatrix random_matrix(std::uint64_t seed);

}  // namespace testfx
