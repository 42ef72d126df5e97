#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "issuebench/blinder.hpp"
#include "issuebench/util.hpp"

namespace issuebench {

enum class PaperState { Pending, Generated, Judged, Failed };

std::string_view to_string(PaperState s);
PaperState paper_state_from_string(std::string_view s);

struct PaperManifestEntry {
  PaperState state = PaperState::Pending;
  std::string detail;                 // error text for Failed, etc.
  std::optional<BlindMap> blind_map;  // persisted so unblinding survives restarts
  std::string updated_at;             // informational only, excluded from determinism checks
};

/// Machine-readable record of one run: seed, model bindings, rule-file hash,
/// and per-paper status. Lives at <corpus>/run_manifest.json. Every corpus
/// paper appears exactly once.
struct RunManifest {
  std::string run_id;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> model_bindings;  // baselineA / baselineB / judge
  std::string rule_file_hash;
  std::string created_at;
  std::map<std::string, PaperManifestEntry> papers;  // keyed by paper_id

  Json to_json() const;
  static RunManifest from_json(const Json& j);

  static RunManifest load_or_create(const std::filesystem::path& corpus_root, std::uint64_t seed);
  void save(const std::filesystem::path& corpus_root) const;

  /// Add missing papers as Pending; never drops existing entries.
  void ensure_papers(const std::vector<std::string>& paper_ids);
  void set_state(const std::string& paper_id, PaperState state, const std::string& detail = {});
};

std::filesystem::path manifest_path(const std::filesystem::path& corpus_root);

}  // namespace issuebench
