#include "issuebench/matrix.hpp"

#include <algorithm>

#include "doctest.h"
#include "issuebench/errors.hpp"
#include "support/fixtures.hpp"

using namespace issuebench;

namespace {

IssueMatrix paper_matrix(const std::string& paper_id, const std::string& stratum, int rows) {
  IssueMatrix matrix;
  matrix.paper_id = paper_id;
  matrix.paper_title = "Title " + paper_id;
  matrix.stratum = stratum_from_string(stratum);
  matrix.decision = stratum;
  matrix.short_takeaway = "takeaway";
  for (SourceName source : kAllSources) {
    matrix.best_rigour_counts[source] = 0;
    matrix.what_added[source] = "added by " + std::string(to_string(source));
  }
  for (int i = 0; i < rows; ++i) {
    matrix.rows.push_back(testfx::make_row(paper_id, stratum, "CPMM", "Human", "important",
                                           "topic " + std::to_string(i) + " of " + paper_id));
    matrix.best_rigour_counts[SourceName::Human] += 1;
  }
  return matrix;
}

RuleSet fixture_rules() {
  RuleSet rules;
  rules.version = "test";
  rules.rules.push_back({TaxonomyLabel::Controls, {"ablation", "confound"}});
  rules.rules.push_back({TaxonomyLabel::Statistics, {"variance", "ablation study size"}});
  rules.rules.push_back({TaxonomyLabel::Scope, {"generaliz"}});
  return rules;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("merge keeps papers contiguous in id order") {
  const std::vector<IssueMatrix> matrices = {paper_matrix("pc", "rejected", 4),
                                             paper_matrix("pa", "oral", 2),
                                             paper_matrix("pb", "accepted", 3)};
  const CorpusMatrix merged = merge_corpus(matrices);
  CHECK(merged.n() == 9);
  REQUIRE(merged.papers.size() == 3);
  CHECK(merged.papers[0].paper_id == "pa");
  CHECK(merged.papers[1].paper_id == "pb");
  CHECK(merged.papers[2].paper_id == "pc");
  CHECK(merged.papers[0].row_count == 2);
  CHECK(merged.papers[1].row_count == 3);
  CHECK(merged.papers[2].row_count == 4);

  // contiguity: rows 0..1 belong to pa, 2..4 to pb, 5..8 to pc
  CHECK(merged.rows[0].paper_id == "pa");
  CHECK(merged.rows[1].paper_id == "pa");
  CHECK(merged.rows[2].paper_id == "pb");
  CHECK(merged.rows[4].paper_id == "pb");
  CHECK(merged.rows[5].paper_id == "pc");
  CHECK(merged.rows[8].paper_id == "pc");
}

TEST_CASE("empty input merges to an empty matrix") {
  const CorpusMatrix merged = merge_corpus({});
  CHECK(merged.n() == 0);
  CHECK(merged.papers.empty());
}

TEST_CASE("duplicate paper ids are rejected") {
  CHECK_THROWS_AS(merge_corpus({paper_matrix("pa", "oral", 1), paper_matrix("pa", "oral", 2)}),
                  DuplicatePaperError);
}

TEST_CASE("first matching rule wins, unmatched topics fall to Other") {
  const RuleSet rules = fixture_rules();

  IssueRow row = testfx::make_row("p", "oral", "CPMM", "Human", "core",
                                  "missing ablation isolating the controller");
  CHECK(tag_taxonomy(row, rules) == TaxonomyLabel::Controls);

  row.topic = "no variance reported";
  CHECK(tag_taxonomy(row, rules) == TaxonomyLabel::Statistics);

  // matches both Controls ("ablation") and Statistics ("ablation study size"):
  // the earlier rule in the ordered list wins
  row.topic = "tiny ablation study size";
  CHECK(tag_taxonomy(row, rules) == TaxonomyLabel::Controls);

  row.topic = "completely unrelated remark";
  CHECK(tag_taxonomy(row, rules) == TaxonomyLabel::Other);

  // matching is case-insensitive on the topic
  row.topic = "Missing ABLATION";
  CHECK(tag_taxonomy(row, rules) == TaxonomyLabel::Controls);
}

TEST_CASE("re-tagging is idempotent") {
  const RuleSet rules = fixture_rules();
  CorpusMatrix matrix;
  matrix.papers.push_back({"p", DecisionStratum::Oral, 3});
  matrix.rows.push_back(testfx::make_row("p", "oral", "CPMM", "Human", "core", "needs ablation"));
  matrix.rows.push_back(testfx::make_row("p", "oral", "MMCP", "Candidate", "important",
                                         "generalization beyond one dataset"));
  matrix.rows.push_back(testfx::make_row("p", "oral", "PPPP", "BaselineA", "secondary", "other"));

  tag_all(matrix, rules);
  const std::vector<TaxonomyLabel> first = {matrix.rows[0].taxonomy, matrix.rows[1].taxonomy,
                                            matrix.rows[2].taxonomy};
  tag_all(matrix, rules);
  CHECK(matrix.rows[0].taxonomy == first[0]);
  CHECK(matrix.rows[1].taxonomy == first[1]);
  CHECK(matrix.rows[2].taxonomy == first[2]);
  CHECK(first[0] == TaxonomyLabel::Controls);
  CHECK(first[1] == TaxonomyLabel::Scope);
  CHECK(first[2] == TaxonomyLabel::Other);
}

TEST_CASE("the shipped rule file loads and partitions") {
  const RuleSet rules = load_rules(std::filesystem::path(ISSUEBENCH_DATA_DIR) /
                                   "taxonomy_rules.json");
  CHECK(rules.rules.size() == 10);  // ten named buckets, Other is the residual
  CHECK(!rules.version.empty());
}

TEST_CASE("mean and median issues per paper") {
  const CorpusMatrix merged = merge_corpus(
      {paper_matrix("pa", "oral", 2), paper_matrix("pb", "oral", 3), paper_matrix("pc", "oral", 4)});
  const MeanIssues stats = mean_issues_per_paper(merged);
  CHECK(stats.mean == doctest::Approx(3.0));
  CHECK(stats.median == doctest::Approx(3.0));

  const CorpusMatrix single = merge_corpus({paper_matrix("pa", "oral", 7)});
  CHECK(mean_issues_per_paper(single).mean == doctest::Approx(7.0));
  CHECK(mean_issues_per_paper(single).median == doctest::Approx(7.0));

  CHECK_THROWS_AS(mean_issues_per_paper(CorpusMatrix{}), EmptyCorpusError);
}

TEST_CASE("matrix JSON round-trips through serialization") {
  IssueMatrix matrix = paper_matrix("pr", "conditional", 3);
  matrix.lint.push_back("a lint note");
  matrix.prompt_lessons = {"lesson one"};
  const Json j = matrix.to_json();
  const IssueMatrix loaded = IssueMatrix::from_json(j);
  CHECK(loaded.to_json() == j);
}

TEST_CASE("jsonl and csv projections are deterministic") {
  testfx::TempDir tmp("matrix_out");
  CorpusMatrix matrix = merge_corpus({paper_matrix("pa", "oral", 2),
                                      paper_matrix("pb", "rejected", 1)});
  matrix.rows[0].topic = "topic with, comma and \"quotes\"";

  write_matrix_jsonl(matrix, tmp.path() / "a.jsonl");
  write_matrix_jsonl(matrix, tmp.path() / "b.jsonl");
  CHECK(read_text_file(tmp.path() / "a.jsonl") == read_text_file(tmp.path() / "b.jsonl"));

  write_matrix_csv(matrix, tmp.path() / "a.csv");
  const std::string csv = read_text_file(tmp.path() / "a.csv");
  CHECK(csv.find("\"topic with, comma and \"\"quotes\"\"\"") != std::string::npos);
  CHECK(csv.find("paper_id,stratum,topic,severity,taxonomy,Human,Candidate,BaselineA,BaselineB,"
                 "best_rigour") == 0);

  // one line per row plus header
  const size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == static_cast<size_t>(matrix.n()) + 1);
}

}  // TEST_SUITE
