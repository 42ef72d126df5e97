#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "issuebench/corpus.hpp"

namespace issuebench {

/// Bijection between anonymised labels M1..M4 and source names for one paper.
/// The Human source is pinned to M1 (the payload gives M1 a structurally
/// distinct shape); the three automated sources are shuffled over M2..M4.
struct BlindMap {
  std::string paper_id;
  std::uint64_t seed = 0;
  std::array<SourceName, 4> label_to_source{};  // index 0 = M1

  SourceName source_for_label(int label_index) const;  // 0..3
  int label_for_source(SourceName source) const;       // 0..3
  /// "M1".."M4" for a source.
  std::string label_name(SourceName source) const;

  Json to_json() const;
  static BlindMap from_json(const Json& j);
};

/// Deterministic label assignment: Human -> M1, the automated sources
/// permuted uniformly over M2..M4 by a splitmix64 stream keyed on
/// (run_seed, paper_id).
BlindMap assign_labels(const std::string& paper_id, std::uint64_t run_seed);

/// The exact JSON source block handed to the judge. Field names follow the
/// released payload template and never mention a source by name.
struct JudgePayload {
  Json doc;

  std::string paper_title() const { return doc.at("paper_title").get<std::string>(); }
  std::string dump() const { return doc.dump(2); }
};

/// Top-level payload keys, in serialization order.
inline constexpr std::array<std::string_view, 7> kPayloadKeys = {
    "paper_title",
    "allowed_statuses",
    "allowed_best_rigour",
    "M1_reviews_and_decision_record",
    "M2_review_full",
    "M3_review_full",
    "M4_review_full",
};

/// Keys inside M1_reviews_and_decision_record.
inline constexpr std::array<std::string_view, 4> kPayloadHumanKeys = {"reviews", "meta_review",
                                                                      "decision", "metadata"};

JudgePayload build_judge_payload(const PaperRecord& paper, const StreamSet& streams,
                                 const BlindMap& map);

}  // namespace issuebench
