#include "issuebench/pipeline.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "issuebench/corpus.hpp"
#include "issuebench/errors.hpp"
#include "support/fixtures.hpp"

using namespace issuebench;

namespace {

struct E2eRun {
  testfx::TempDir tmp{"pipeline"};
  std::filesystem::path corpus_root;
  RunConfig config;

  explicit E2eRun(std::uint64_t seed = 42) {
    corpus_root = tmp.path() / "corpus";
    std::filesystem::create_directories(corpus_root);
    testfx::write_e2e_corpus(corpus_root);
    testfx::write_e2e_providers(tmp.path());
    config = load_config(testfx::write_e2e_config(tmp.path(), seed));
  }
};

long long count_files(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir)) return 0;
  long long n = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("generate writes both baseline files per paper and is idempotent") {
  E2eRun run;
  const StageResult first = cmd_generate(run.corpus_root, run.config);
  CHECK(first.ok());
  CHECK(first.completed == 3);

  long long baseline_files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(run.corpus_root)) {
    const std::string name = entry.path().filename().string();
    if (name == "baseline_a.md" || name == "baseline_b.md") ++baseline_files;
  }
  CHECK(baseline_files == 6);

  // sabotage every mock entry: a rerun must not need a single provider call
  Json broken;
  broken["responses"] =
      Json::array({Json{{"match", "Paper title"}, {"fail", true}}});
  write_json_file(run.tmp.path() / "mocks" / "baselines.json", broken);

  const StageResult second = cmd_generate(run.corpus_root, run.config);
  CHECK(second.ok());
  CHECK(second.completed == 0);
  CHECK(second.skipped == 3);

  const RunManifest manifest =
      RunManifest::from_json(read_json_file(manifest_path(run.corpus_root)));
  CHECK(manifest.papers.size() == 3);
  CHECK(manifest.model_bindings.at("baselineA") == "mock-gpt");
}

TEST_CASE("a paper that keeps failing is recorded without aborting the run") {
  E2eRun run;
  // make one paper's baseline generation fail every attempt
  Json fixture = read_json_file(run.tmp.path() / "mocks" / "baselines.json");
  Json responses = Json::array();
  responses.push_back(Json{{"match", "Paper title: Beta: Curriculum Distillation"},
                           {"fail", true}});
  for (const Json& entry : fixture.at("responses")) responses.push_back(entry);
  fixture["responses"] = std::move(responses);
  write_json_file(run.tmp.path() / "mocks" / "baselines.json", fixture);

  const StageResult result = cmd_generate(run.corpus_root, run.config);
  REQUIRE(result.failures.size() == 1);
  CHECK(result.failures[0].first == "paper-beta");
  CHECK(result.completed == 2);

  const RunManifest manifest =
      RunManifest::from_json(read_json_file(manifest_path(run.corpus_root)));
  CHECK(manifest.papers.at("paper-beta").state == PaperState::Failed);
  CHECK(manifest.papers.at("paper-alpha").state == PaperState::Generated);
}

TEST_CASE("judge produces one matrix per paper and resumes cleanly") {
  E2eRun run;
  REQUIRE(cmd_generate(run.corpus_root, run.config).ok());
  const StageResult judged = cmd_judge(run.corpus_root, run.config);
  CHECK(judged.ok());
  CHECK(judged.completed == 3);
  CHECK(count_files(matrices_dir(run.corpus_root)) == 3);
  CHECK(std::filesystem::exists(payload_archive_path(run.corpus_root, "paper-alpha")));
  CHECK(std::filesystem::exists(verdict_archive_path(run.corpus_root, "paper-alpha", 1)));

  const IssueMatrix alpha =
      IssueMatrix::from_json(read_json_file(matrix_path(run.corpus_root, "paper-alpha")));
  CHECK(alpha.rows.size() == 2);
  CHECK(alpha.stratum == DecisionStratum::Oral);

  // second run touches nothing
  const StageResult again = cmd_judge(run.corpus_root, run.config);
  CHECK(again.completed == 0);
  CHECK(again.skipped == 3);

  const RunManifest manifest =
      RunManifest::from_json(read_json_file(manifest_path(run.corpus_root)));
  CHECK(manifest.papers.at("paper-gamma").state == PaperState::Judged);
  CHECK(manifest.papers.at("paper-gamma").blind_map.has_value());
  CHECK(manifest.model_bindings.at("judge") == "mock-judge");
}

TEST_CASE("a paper with a missing stream is skipped with the error recorded") {
  E2eRun run;
  REQUIRE(cmd_generate(run.corpus_root, run.config).ok());
  std::filesystem::remove(run.corpus_root / "conditional" / "paper-beta" / "candidate.md");

  const StageResult judged = cmd_judge(run.corpus_root, run.config);
  CHECK(judged.completed == 2);
  REQUIRE(judged.failures.size() == 1);
  CHECK(judged.failures[0].first == "paper-beta");
  CHECK(judged.failures[0].second.find("Candidate") != std::string::npos);

  const RunManifest manifest =
      RunManifest::from_json(read_json_file(manifest_path(run.corpus_root)));
  CHECK(manifest.papers.at("paper-beta").state == PaperState::Failed);
  CHECK(manifest.papers.at("paper-beta").detail.find("missing stream") != std::string::npos);
}

TEST_CASE("changing the seed changes only the M2-M4 assignment in payloads") {
  E2eRun run_a(1);
  E2eRun run_b(2);
  REQUIRE(cmd_generate(run_a.corpus_root, run_a.config).ok());
  REQUIRE(cmd_generate(run_b.corpus_root, run_b.config).ok());
  REQUIRE(cmd_judge(run_a.corpus_root, run_a.config).ok());
  REQUIRE(cmd_judge(run_b.corpus_root, run_b.config).ok());

  bool any_label_difference = false;
  for (const std::string paper : {"paper-alpha", "paper-beta", "paper-gamma"}) {
    const Json payload_a = read_json_file(payload_archive_path(run_a.corpus_root, paper));
    const Json payload_b = read_json_file(payload_archive_path(run_b.corpus_root, paper));

    CHECK(payload_a.at("paper_title") == payload_b.at("paper_title"));
    CHECK(payload_a.at("M1_reviews_and_decision_record") ==
          payload_b.at("M1_reviews_and_decision_record"));
    CHECK(payload_a.at("allowed_statuses") == payload_b.at("allowed_statuses"));

    // the three automated texts are the same set, possibly relabeled
    std::multiset<std::string> texts_a;
    std::multiset<std::string> texts_b;
    for (const char* key : {"M2_review_full", "M3_review_full", "M4_review_full"}) {
      texts_a.insert(payload_a.at(key).get<std::string>());
      texts_b.insert(payload_b.at(key).get<std::string>());
      if (payload_a.at(key) != payload_b.at(key)) any_label_difference = true;
    }
    CHECK(texts_a == texts_b);
  }
  CHECK(any_label_difference);
}

TEST_CASE("report needs every paper judged") {
  E2eRun run;
  REQUIRE(cmd_generate(run.corpus_root, run.config).ok());
  CHECK_THROWS_AS(cmd_report(run.corpus_root, run.config), IncompleteRunError);

  REQUIRE(cmd_judge(run.corpus_root, run.config).ok());
  std::filesystem::remove(matrix_path(run.corpus_root, "paper-beta"));
  try {
    cmd_report(run.corpus_root, run.config);
    FAIL("expected IncompleteRunError");
  } catch (const IncompleteRunError& e) {
    REQUIRE(e.missing.size() == 1);
    CHECK(e.missing[0] == "paper-beta");
  }

  // the partial-report policy is explicit, never the default
  RunConfig partial = run.config;
  partial.allow_partial_report = true;
  const StageResult result = cmd_report(run.corpus_root, partial);
  CHECK(result.completed == 2);
  CHECK(std::filesystem::exists(report_dir(run.corpus_root) / "gaps.json"));
}

TEST_CASE("report bundle is written and internally consistent") {
  E2eRun run;
  REQUIRE(cmd_generate(run.corpus_root, run.config).ok());
  REQUIRE(cmd_judge(run.corpus_root, run.config).ok());
  REQUIRE(cmd_report(run.corpus_root, run.config).ok());

  const std::filesystem::path report = report_dir(run.corpus_root);
  for (const char* name :
       {"metrics_report.json", "table2_coverage.csv", "table3_severity.csv",
        "table4_decision.csv", "table5_alignment.csv", "table6_taxonomy.csv",
        "figure_dataset.json",
        "figure_coverage.json", "figure_severity_recall.json",
        "figure_severity_decision_grid.json", "figure_alignment.json",
        "figure_taxonomy_heatmap.json", "figure_error_surface.json",
        "figure_complementarity.json", "corpus_matrix.jsonl", "corpus_matrix.csv",
        "summary.md"}) {
    CHECK(std::filesystem::exists(report / name));
  }

  // markdown and CSV must print the same hit percentages
  const std::string table2 = read_text_file(report / "table2_coverage.csv");
  const std::string summary = read_text_file(report / "summary.md");
  std::istringstream lines(table2);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::istringstream fieldstream(line);
    std::string field;
    while (std::getline(fieldstream, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 7);
    const std::string expected = "| " + fields[0] + " | " + fields[1] + " | " + fields[2] +
                                 " | " + fields[3] + " | " + fields[4] + " | " + fields[5] +
                                 " | " + fields[6] + " |";
    CHECK(summary.find(expected) != std::string::npos);
  }

  // manifest recorded the rule-file hash
  const RunManifest manifest =
      RunManifest::from_json(read_json_file(manifest_path(run.corpus_root)));
  CHECK(manifest.rule_file_hash.size() == 64);
}

TEST_CASE("matrices rebuilt from published counts reproduce the coverage table") {
  testfx::TempDir tmp("report_published");
  const std::filesystem::path corpus_root = tmp.path() / "corpus";
  const CorpusMatrix reconstructed = testfx::reconstructed_corpus_matrix();

  // corpus tree + one matrix file per paper
  size_t offset = 0;
  for (const PaperEntry& paper : reconstructed.papers) {
    testfx::PaperSpec spec;
    spec.paper_id = paper.paper_id;
    spec.stratum = std::string(to_string(paper.stratum));
    spec.title = "Title " + paper.paper_id;
    testfx::write_paper(corpus_root, spec);

    IssueMatrix matrix;
    matrix.paper_id = paper.paper_id;
    matrix.paper_title = spec.title;
    matrix.stratum = paper.stratum;
    matrix.decision = spec.stratum;
    matrix.short_takeaway = "reconstructed";
    for (SourceName source : kAllSources) {
      matrix.best_rigour_counts[source] = 0;
      matrix.what_added[source] = "";
    }
    for (long long r = 0; r < paper.row_count; ++r) {
      const IssueRow& row = reconstructed.rows[offset + static_cast<size_t>(r)];
      matrix.rows.push_back(row);
      matrix.best_rigour_counts[row.best_rigour] += 1;
    }
    offset += static_cast<size_t>(paper.row_count);
    write_json_file(matrix_path(corpus_root, paper.paper_id), matrix.to_json());
  }

  RunConfig config;
  config.taxonomy_rules_file = std::filesystem::path(ISSUEBENCH_DATA_DIR) /
                               "taxonomy_rules.json";
  const StageResult result = cmd_report(corpus_root, config);
  CHECK(result.completed == 100);

  const std::string table2 = read_text_file(report_dir(corpus_root) / "table2_coverage.csv");
  CHECK(table2.find("Human,1546,1259,1793,61.0,47.3,18.5") != std::string::npos);
  CHECK(table2.find("Candidate,3024,1123,451,90.2,78.0,48.5") != std::string::npos);
  CHECK(table2.find("BaselineA,2137,1296,1165,74.7,60.6,15.1") != std::string::npos);
  CHECK(table2.find("BaselineB,2043,1318,1237,73.1,58.8,18.0") != std::string::npos);

  const std::string table4 = read_text_file(report_dir(corpus_root) / "table4_decision.csv");
  CHECK(table4.find("oral,28,1210,33.5,58.1,66.7,89.5,47.3,74.6,46.0,74.6") != std::string::npos);
  CHECK(table4.find("rejected,29,1353,35.8,67.0,66.7,90.8,46.8,77.0,44.3,74.3") !=
        std::string::npos);

  const std::string table5 = read_text_file(report_dir(corpus_root) / "table5_alignment.csv");
  CHECK(table5.find("human_salient,2805,55.1,100.0,63.7,89.6,49.1,78.6,44.9,76.8") !=
        std::string::npos);
  CHECK(table5.find("human_missed,1793,0.0,0.0,69.0,91.2,42.4,68.5,43.7,67.4") !=
        std::string::npos);
  CHECK(table5.find("all,4598,33.6,61.0,65.8,90.2,46.5,74.7,44.4,73.1") != std::string::npos);
}

}  // TEST_SUITE
