#include "issuebench/pipeline.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>

#include "issuebench/baseline.hpp"
#include "issuebench/corpus.hpp"
#include "issuebench/errors.hpp"
#include "issuebench/gateway.hpp"
#include "issuebench/judge.hpp"
#include "issuebench/report.hpp"

namespace issuebench {

namespace fs = std::filesystem;

fs::path matrices_dir(const fs::path& corpus_root) { return corpus_root / "matrices"; }

fs::path matrix_path(const fs::path& corpus_root, const std::string& paper_id) {
  return matrices_dir(corpus_root) / (paper_id + ".matrix.json");
}

fs::path payload_archive_path(const fs::path& corpus_root, const std::string& paper_id) {
  return corpus_root / "artifacts" / "payloads" / (paper_id + ".payload.json");
}

fs::path verdict_archive_path(const fs::path& corpus_root, const std::string& paper_id,
                              int attempt) {
  return corpus_root / "artifacts" / "judge" /
         (paper_id + ".attempt" + std::to_string(attempt) + ".json");
}

fs::path report_dir(const fs::path& corpus_root) { return corpus_root / "report"; }

namespace {

GatewayOptions gateway_options(const RunConfig& config) {
  GatewayOptions options;
  options.cache_dir = config.cache_dir;
  options.max_attempts = config.gateway_attempts;
  options.backoff_base = std::chrono::milliseconds(config.backoff_ms);
  options.call_budget = config.call_budget;
  return options;
}

/// Run fn(i) for i in [0, count) on a bounded pool; one result slot per item.
void parallel_for(size_t count, int workers, const std::function<void(size_t)>& fn) {
  const int pool = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (pool <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(pool));
  for (int t = 0; t < pool; ++t) {
    threads.emplace_back([&]() {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (std::thread& thread : threads) thread.join();
}

}  // namespace

StageResult cmd_generate(const fs::path& corpus_root, const RunConfig& config) {
  if (config.baseline_a_model.empty() || config.baseline_b_model.empty()) {
    throw ConfigError("generate needs baseline_a_model and baseline_b_model bindings");
  }
  auto gateway = build_gateway(config.providers_file, gateway_options(config));

  LoadOptions load;
  load.require_candidate = false;
  load.require_baselines = false;
  const Corpus corpus = load_corpus(corpus_root, load);

  RunManifest manifest = RunManifest::load_or_create(corpus_root, config.seed);
  {
    std::vector<std::string> ids;
    for (const PaperRecord& paper : corpus.papers) ids.push_back(paper.paper_id);
    manifest.ensure_papers(ids);
  }
  manifest.model_bindings["baselineA"] = config.baseline_a_model;
  manifest.model_bindings["baselineB"] = config.baseline_b_model;

  BaselineOptions baseline_options;
  baseline_options.regen_attempts = config.baseline_regen_attempts;
  baseline_options.max_output_tokens = config.baseline_max_output;
  baseline_options.regen_max_output_tokens = config.baseline_max_output * 2;

  StageResult result;
  std::mutex state_mutex;

  parallel_for(corpus.papers.size(), config.parallelism, [&](size_t i) {
    const PaperRecord& paper = corpus.papers[i];
    const fs::path paper_dir =
        corpus_root / std::string(to_string(paper.stratum)) / paper.paper_id;
    bool wrote = false;
    bool skipped_all = true;
    try {
      for (const auto& [slot, model] :
           {std::pair{SourceName::BaselineA, config.baseline_a_model},
            std::pair{SourceName::BaselineB, config.baseline_b_model}}) {
        const fs::path target = paper_dir / stream_filename(slot);
        if (fs::exists(target)) continue;
        skipped_all = false;
        const ReviewStream stream = generate_baseline_review(paper, model, slot, *gateway,
                                                             baseline_options);
        write_text_file_atomic(target, stream.text());
        wrote = true;
      }
      std::lock_guard<std::mutex> lock(state_mutex);
      if (wrote) ++result.completed;
      if (skipped_all) ++result.skipped;
      PaperManifestEntry& entry = manifest.papers[paper.paper_id];
      if (entry.state == PaperState::Pending || entry.state == PaperState::Failed) {
        manifest.set_state(paper.paper_id, PaperState::Generated);
      }
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(state_mutex);
      result.failures.emplace_back(paper.paper_id, e.what());
      manifest.set_state(paper.paper_id, PaperState::Failed, e.what());
    }
  });

  manifest.save(corpus_root);
  return result;
}

StageResult cmd_judge(const fs::path& corpus_root, const RunConfig& config) {
  if (config.judge_model.empty()) {
    throw ConfigError("judge needs a judge_model binding");
  }
  auto gateway = build_gateway(config.providers_file, gateway_options(config));

  LoadOptions load;
  load.require_candidate = false;
  load.require_baselines = false;
  const Corpus corpus = load_corpus(corpus_root, load);

  RunManifest manifest = RunManifest::load_or_create(corpus_root, config.seed);
  {
    std::vector<std::string> ids;
    for (const PaperRecord& paper : corpus.papers) ids.push_back(paper.paper_id);
    manifest.ensure_papers(ids);
  }
  manifest.model_bindings["judge"] = config.judge_model;
  if (!config.taxonomy_rules_file.empty() && fs::exists(config.taxonomy_rules_file)) {
    manifest.rule_file_hash = sha256_file_hex(config.taxonomy_rules_file);
  }

  StageResult result;
  std::mutex state_mutex;

  parallel_for(corpus.papers.size(), config.parallelism, [&](size_t i) {
    const PaperRecord& paper = corpus.papers[i];
    try {
      if (fs::exists(matrix_path(corpus_root, paper.paper_id))) {
        std::lock_guard<std::mutex> lock(state_mutex);
        ++result.skipped;
        if (manifest.papers[paper.paper_id].state != PaperState::Judged) {
          manifest.set_state(paper.paper_id, PaperState::Judged, "matrix present");
        }
        return;
      }

      const StreamSet streams = streams_for(corpus, paper.paper_id);
      const BlindMap map = assign_labels(paper.paper_id, config.seed);
      const JudgePayload payload = build_judge_payload(paper, streams, map);
      write_text_file_atomic(payload_archive_path(corpus_root, paper.paper_id),
                             payload.dump() + "\n");

      JudgeOptions judge_options;
      judge_options.reask_attempts = config.judge_reask_attempts;
      judge_options.max_output_tokens = config.judge_max_output;
      judge_options.archive = [&](int attempt, const std::string& raw) {
        write_text_file_atomic(verdict_archive_path(corpus_root, paper.paper_id, attempt), raw);
      };

      const BlindVerdict verdict = judge_paper(payload, config.judge_model, *gateway,
                                               judge_options);
      const IssueMatrix matrix = unblind(verdict, map, paper);
      write_json_file(matrix_path(corpus_root, paper.paper_id), matrix.to_json());

      std::lock_guard<std::mutex> lock(state_mutex);
      ++result.completed;
      manifest.papers[paper.paper_id].blind_map = map;
      manifest.set_state(paper.paper_id, PaperState::Judged);
    } catch (const Error& e) {
      std::lock_guard<std::mutex> lock(state_mutex);
      result.failures.emplace_back(paper.paper_id, e.what());
      manifest.set_state(paper.paper_id, PaperState::Failed, e.what());
    }
  });

  manifest.save(corpus_root);
  return result;
}

StageResult cmd_report(const fs::path& corpus_root, const RunConfig& config) {
  LoadOptions load;
  load.require_candidate = false;
  load.require_baselines = false;
  const Corpus corpus = load_corpus(corpus_root, load);

  std::vector<std::string> missing;
  std::vector<IssueMatrix> matrices;
  for (const PaperRecord& paper : corpus.papers) {
    const fs::path path = matrix_path(corpus_root, paper.paper_id);
    if (!fs::exists(path)) {
      missing.push_back(paper.paper_id);
      continue;
    }
    IssueMatrix matrix = IssueMatrix::from_json(read_json_file(path));
    if (matrix.paper_id != paper.paper_id) {
      throw MalformedDocumentError(path.string(), "matrix paper_id disagrees with folder");
    }
    matrices.push_back(std::move(matrix));
  }
  if (corpus.papers.empty() || (!missing.empty() && !config.allow_partial_report)) {
    throw IncompleteRunError(missing);
  }

  if (config.taxonomy_rules_file.empty()) {
    throw ConfigError("report needs taxonomy_rules pointing at a rule file");
  }
  const RuleSet rules = load_rules(config.taxonomy_rules_file);

  CorpusMatrix matrix = merge_corpus(matrices);
  tag_all(matrix, rules);
  const MetricsReport report = compute_report(matrix);
  write_report_bundle(report, matrix, report_dir(corpus_root));

  if (!missing.empty()) {
    Json gaps;
    gaps["unjudged_papers"] = missing;
    write_json_file(report_dir(corpus_root) / "gaps.json", gaps);
  }

  RunManifest manifest = RunManifest::load_or_create(corpus_root, config.seed);
  manifest.rule_file_hash = sha256_file_hex(config.taxonomy_rules_file);
  manifest.save(corpus_root);

  StageResult result;
  result.completed = static_cast<long long>(matrices.size());
  return result;
}

}  // namespace issuebench
