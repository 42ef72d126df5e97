#include "issuebench/blinder.hpp"

#include <algorithm>

#include "issuebench/errors.hpp"

namespace issuebench {

SourceName BlindMap::source_for_label(int label_index) const {
  if (label_index < 0 || label_index > 3) {
    throw Error("label index out of range: " + std::to_string(label_index));
  }
  return label_to_source[static_cast<size_t>(label_index)];
}

int BlindMap::label_for_source(SourceName source) const {
  for (int i = 0; i < 4; ++i) {
    if (label_to_source[static_cast<size_t>(i)] == source) return i;
  }
  throw Error("source not present in blind map");
}

std::string BlindMap::label_name(SourceName source) const {
  return "M" + std::to_string(label_for_source(source) + 1);
}

Json BlindMap::to_json() const {
  Json j;
  j["paper_id"] = paper_id;
  j["seed"] = seed;
  Json assignment;
  for (int i = 0; i < 4; ++i) {
    assignment["M" + std::to_string(i + 1)] = to_string(label_to_source[static_cast<size_t>(i)]);
  }
  j["assignment"] = std::move(assignment);
  return j;
}

BlindMap BlindMap::from_json(const Json& j) {
  BlindMap map;
  map.paper_id = j.at("paper_id").get<std::string>();
  map.seed = j.at("seed").get<std::uint64_t>();
  for (int i = 0; i < 4; ++i) {
    const std::string label = "M" + std::to_string(i + 1);
    map.label_to_source[static_cast<size_t>(i)] =
        source_from_string(j.at("assignment").at(label).get<std::string>());
  }
  // bijection check
  auto sorted = map.label_to_source;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 4; ++i) {
    if (index_of(sorted[static_cast<size_t>(i)]) != i) {
      throw Error("blind map assignment is not a bijection for paper " + map.paper_id);
    }
  }
  return map;
}

BlindMap assign_labels(const std::string& paper_id, std::uint64_t run_seed) {
  BlindMap map;
  map.paper_id = paper_id;
  map.seed = run_seed;

  // Per-paper stream: hash (run_seed, paper_id) so each paper draws an
  // independent, machine-independent permutation.
  const std::uint64_t stream_seed =
      fnv1a64(std::to_string(run_seed) + "\x1f" + paper_id);
  SplitMix64 rng(stream_seed);

  // M1 is pinned to Human; the payload shape for M1 is structurally distinct.
  std::array<SourceName, 3> automated = {SourceName::Candidate, SourceName::BaselineA,
                                         SourceName::BaselineB};
  const std::uint64_t draw = rng.next_below(6);
  // permutation of 3 elements in lexicographic order of its index
  const std::array<std::array<int, 3>, 6> perms = {{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
  }};
  const auto& perm = perms[static_cast<size_t>(draw)];

  map.label_to_source[0] = SourceName::Human;
  for (int i = 0; i < 3; ++i) {
    map.label_to_source[static_cast<size_t>(i + 1)] =
        automated[static_cast<size_t>(perm[static_cast<size_t>(i)])];
  }
  return map;
}

namespace {

Json optional_doc(const std::optional<Json>& doc) {
  return doc.has_value() ? *doc : Json(nullptr);
}

}  // namespace

JudgePayload build_judge_payload(const PaperRecord& paper, const StreamSet& streams,
                                 const BlindMap& map) {
  if (map.paper_id != paper.paper_id) {
    throw MapMismatchError(paper.paper_id, map.paper_id);
  }
  for (SourceName source : kAllSources) {
    if (streams.by_source(source) == nullptr) {
      throw MissingStreamError(paper.paper_id, std::string(to_string(source)), "<in-memory>");
    }
  }
  if (map.source_for_label(0) != SourceName::Human) {
    throw Error("blind map must pin Human to M1");
  }

  const HumanBundle& bundle = streams.human->bundle();

  Json payload;
  payload["paper_title"] = paper.title;
  payload["allowed_statuses"] = Json::array({"Caught", "Partial", "Missed"});
  payload["allowed_best_rigour"] = Json::array({"M1", "M2", "M3", "M4"});
  Json m1;
  m1["reviews"] = bundle.reviews;
  m1["meta_review"] = optional_doc(bundle.meta_review);
  m1["decision"] = optional_doc(bundle.decision);
  m1["metadata"] = optional_doc(bundle.metadata);
  payload["M1_reviews_and_decision_record"] = std::move(m1);
  for (int label = 1; label < 4; ++label) {
    const SourceName source = map.source_for_label(label);
    const ReviewStream* stream = streams.by_source(source);
    payload["M" + std::to_string(label + 1) + "_review_full"] = stream->text();
  }
  return JudgePayload{std::move(payload)};
}

}  // namespace issuebench
