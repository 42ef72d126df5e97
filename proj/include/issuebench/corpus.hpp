#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "issuebench/types.hpp"
#include "issuebench/util.hpp"

namespace issuebench {

/// Publicly released review material for one paper. Every document is an
/// opaque JSON value preserved verbatim; interpretation belongs to the judge.
struct HumanBundle {
  Json reviews;  // non-empty array
  std::optional<Json> meta_review;
  std::optional<Json> decision;
  std::optional<Json> metadata;
};

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::string body_text;  // full extracted paper text, non-empty
  DecisionStratum stratum = DecisionStratum::Oral;
};

/// One critique of one paper from one named source. The Human source carries
/// the structured bundle; automated sources carry raw review text.
struct ReviewStream {
  SourceName source = SourceName::Human;
  std::variant<HumanBundle, std::string> content;

  const HumanBundle& bundle() const { return std::get<HumanBundle>(content); }
  const std::string& text() const { return std::get<std::string>(content); }
  bool is_bundle() const { return std::holds_alternative<HumanBundle>(content); }
};

struct Corpus {
  std::vector<PaperRecord> papers;  // ordered by paper_id
  std::map<std::pair<std::string, SourceName>, ReviewStream> streams;

  const PaperRecord* find_paper(const std::string& paper_id) const;
  const ReviewStream* find_stream(const std::string& paper_id, SourceName source) const;
};

/// References to the four streams of one paper.
struct StreamSet {
  const ReviewStream* human = nullptr;
  const ReviewStream* candidate = nullptr;
  const ReviewStream* baseline_a = nullptr;
  const ReviewStream* baseline_b = nullptr;

  const ReviewStream* by_source(SourceName s) const;
};

/// Which streams load_corpus demands per paper. The judge and report stages
/// use the default (all four); the generate stage runs before the baseline
/// files exist and relaxes the baseline requirement.
struct LoadOptions {
  bool require_candidate = true;
  bool require_baselines = true;
};

// On-disk layout, relative to each paper directory.
inline constexpr const char* kTitleFile = "title.txt";
inline constexpr const char* kBodyFile = "paper.txt";
inline constexpr const char* kHumanDir = "human";
inline constexpr const char* kHumanReviewsFile = "human/reviews.json";
inline constexpr const char* kHumanMetaReviewFile = "human/meta_review.json";
inline constexpr const char* kHumanDecisionFile = "human/decision.json";
inline constexpr const char* kHumanMetadataFile = "human/metadata.json";

/// Review file name for an automated source ("candidate.md", "baseline_a.md",
/// "baseline_b.md"). The Human source has no single file.
std::string stream_filename(SourceName source);

/// Load and validate a corpus tree. Papers come back ordered by paper_id;
/// throws MissingStreamError / DuplicatePaperError / MalformedDocumentError,
/// each naming the offending path.
Corpus load_corpus(const std::filesystem::path& root, const LoadOptions& options = {});

std::map<DecisionStratum, long long> stratum_counts(const Corpus& corpus);

/// Collect the four streams of one paper; throws MissingStreamError.
StreamSet streams_for(const Corpus& corpus, const std::string& paper_id);

/// Canonical JSON form of a loaded corpus; two loads of the same tree
/// serialize byte-identically.
Json corpus_to_json(const Corpus& corpus);

}  // namespace issuebench
