#include "issuebench/manifest.hpp"

#include "issuebench/errors.hpp"

namespace issuebench {

std::string_view to_string(PaperState s) {
  switch (s) {
    case PaperState::Pending: return "pending";
    case PaperState::Generated: return "generated";
    case PaperState::Judged: return "judged";
    case PaperState::Failed: return "failed";
  }
  throw Error("bad paper state");
}

PaperState paper_state_from_string(std::string_view s) {
  if (s == "pending") return PaperState::Pending;
  if (s == "generated") return PaperState::Generated;
  if (s == "judged") return PaperState::Judged;
  if (s == "failed") return PaperState::Failed;
  throw Error("unknown paper state: " + std::string(s));
}

std::filesystem::path manifest_path(const std::filesystem::path& corpus_root) {
  return corpus_root / "run_manifest.json";
}

Json RunManifest::to_json() const {
  Json j;
  j["run_id"] = run_id;
  j["seed"] = seed;
  j["model_bindings"] = model_bindings;
  // all protocol calls run at temperature 0; recorded so a rerun can verify
  // it used the same sampling settings
  j["sampling"] = Json{{"temperature", 0.0}};
  j["rule_file_hash"] = rule_file_hash;
  j["created_at"] = created_at;
  Json papers_json = Json::object();
  for (const auto& [paper_id, entry] : papers) {
    Json e;
    e["state"] = to_string(entry.state);
    e["detail"] = entry.detail;
    e["blind_map"] = entry.blind_map.has_value() ? entry.blind_map->to_json() : Json(nullptr);
    e["updated_at"] = entry.updated_at;
    papers_json[paper_id] = std::move(e);
  }
  j["papers"] = std::move(papers_json);
  return j;
}

RunManifest RunManifest::from_json(const Json& j) {
  RunManifest manifest;
  manifest.run_id = j.at("run_id").get<std::string>();
  manifest.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [key, value] : j.at("model_bindings").items()) {
    manifest.model_bindings[key] = value.get<std::string>();
  }
  manifest.rule_file_hash = j.value("rule_file_hash", std::string{});
  manifest.created_at = j.value("created_at", std::string{});
  for (const auto& [paper_id, e] : j.at("papers").items()) {
    PaperManifestEntry entry;
    entry.state = paper_state_from_string(e.at("state").get<std::string>());
    entry.detail = e.value("detail", std::string{});
    if (e.contains("blind_map") && !e.at("blind_map").is_null()) {
      entry.blind_map = BlindMap::from_json(e.at("blind_map"));
    }
    entry.updated_at = e.value("updated_at", std::string{});
    manifest.papers[paper_id] = std::move(entry);
  }
  return manifest;
}

RunManifest RunManifest::load_or_create(const std::filesystem::path& corpus_root,
                                        std::uint64_t seed) {
  const std::filesystem::path path = manifest_path(corpus_root);
  if (std::filesystem::exists(path)) {
    RunManifest manifest = from_json(read_json_file(path));
    if (manifest.seed != seed) {
      throw ConfigError("manifest at " + path.string() + " was created with seed " +
                        std::to_string(manifest.seed) + ", run requested seed " +
                        std::to_string(seed) + "; use a fresh corpus or the original seed");
    }
    return manifest;
  }
  RunManifest manifest;
  manifest.run_id = "run-seed" + std::to_string(seed);
  manifest.seed = seed;
  manifest.created_at = utc_timestamp();
  return manifest;
}

void RunManifest::save(const std::filesystem::path& corpus_root) const {
  write_json_file(manifest_path(corpus_root), to_json());
}

void RunManifest::ensure_papers(const std::vector<std::string>& paper_ids) {
  for (const std::string& paper_id : paper_ids) {
    papers.try_emplace(paper_id);
  }
}

void RunManifest::set_state(const std::string& paper_id, PaperState state,
                            const std::string& detail) {
  PaperManifestEntry& entry = papers[paper_id];
  entry.state = state;
  entry.detail = detail;
  entry.updated_at = utc_timestamp();
}

}  // namespace issuebench
