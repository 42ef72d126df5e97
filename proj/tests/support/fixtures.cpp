#include "support/fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>

#include "issuebench/util.hpp"

namespace testfx {

namespace fs = std::filesystem;
using issuebench::PaperEntry;
using issuebench::SplitMix64;
using issuebench::write_json_file;
using issuebench::write_text_file;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("issuebench_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter.fetch_add(1)));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_paper(const fs::path& root, const PaperSpec& spec) {
  const fs::path dir = root / spec.stratum / spec.paper_id;
  fs::create_directories(dir / "human");
  write_text_file(dir / "title.txt", spec.title.empty() ? spec.paper_id : spec.title);
  write_text_file(dir / "paper.txt", spec.body);

  Json reviews = Json::array();
  reviews.push_back(Json{{"reviewer", "R1"},
                         {"rating", 6},
                         {"text", "Solid idea but the evaluation is thin for " + spec.paper_id}});
  reviews.push_back(Json{{"reviewer", "R2"},
                         {"rating", 4},
                         {"text", "Missing ablations and unclear assumptions."}});
  write_json_file(dir / "human" / "reviews.json", reviews);
  if (spec.with_meta_review) {
    write_json_file(dir / "human" / "meta_review.json",
                    Json{{"text", "Reviewers agree the contribution is borderline."}});
  }
  if (spec.with_decision) {
    write_json_file(dir / "human" / "decision.json", Json{{"decision", spec.stratum}});
  }
  if (spec.with_metadata) {
    write_json_file(dir / "human" / "metadata.json", Json{{"forum", spec.paper_id}});
  }
  if (spec.with_candidate) {
    write_text_file(dir / "candidate.md",
                    "Critique of " + spec.paper_id +
                        ": the causal mechanism is asserted, not shown; the main baseline is "
                        "under-tuned; no variance is reported over seeds.");
  }
  if (spec.with_baseline_a) {
    write_text_file(dir / "baseline_a.md", valid_review_text(10, 4, "a-" + spec.paper_id));
  }
  if (spec.with_baseline_b) {
    write_text_file(dir / "baseline_b.md", valid_review_text(9, 5, "b-" + spec.paper_id));
  }
}

std::string valid_review_text(int bullets, int score, const std::string& flavor) {
  std::string text;
  text += "## CORE CLAIM\nThe paper claims a new method (" + flavor + ") beats the baseline.\n\n";
  text += "## MAIN RISKS\nThe gains may come from extra tuning rather than the method.\n\n";
  text += "## DOMAIN-SPECIFIC CONCERNS\nDistribution shift between train and test splits.\n\n";
  text += "## MISSING VALIDATION\nNo ablation isolating the new component.\n\n";
  text += "## SHARPEST FLAW\nThe main comparison is not compute-matched.\n\n";
  text += "## ACCEPTANCE RECOMMENDATION\n";
  text += "**Score:** " + std::to_string(score) + "/10\n";
  text += "**Decision:** Borderline\n";
  text += "**Tier prediction:** rejected\n";
  text += "**Reasoning:** The evidence does not yet support the central claim.\n\n";
  text += "## POINTERS\n";
  for (int i = 0; i < bullets; ++i) {
    text += "- Concern " + std::to_string(i + 1) + " (" + flavor + "): a concrete risk.\n";
  }
  return text;
}

Json valid_verdict_json(const std::string& title, int n_issues, int variant) {
  static const char* kSeverities[3] = {"core", "important", "secondary"};
  static const char* kStatuses[3] = {"Caught", "Partial", "Missed"};
  static const char* kLabels[4] = {"M1", "M2", "M3", "M4"};

  Json issues = Json::array();
  std::array<long long, 4> tally{};
  for (int i = 0; i < n_issues; ++i) {
    Json row;
    row["topic"] = "Concern " + std::to_string(i + 1) + " for " + title;
    row["severity"] = kSeverities[(i + variant) % 3];
    for (int label = 0; label < 4; ++label) {
      Json cell;
      cell["status"] = kStatuses[(i + variant + label) % 3];
      cell["note"] = "note on M" + std::to_string(label + 1) + " row " + std::to_string(i + 1);
      row["m" + std::to_string(label + 1)] = std::move(cell);
    }
    const int best = (i + variant) % 4;
    row["best_rigour"] = kLabels[best];
    ++tally[static_cast<size_t>(best)];
    issues.push_back(std::move(row));
  }

  Json verdict;
  verdict["paper_title"] = title;
  verdict["decision"] = "unknown";
  Json counts;
  for (int label = 0; label < 4; ++label) {
    counts[kLabels[label]] = tally[static_cast<size_t>(label)];
  }
  verdict["summary"] = Json{{"total_issues", n_issues},
                            {"best_rigour_counts", std::move(counts)},
                            {"short_takeaway", "fixture verdict for " + title}};
  verdict["issues"] = std::move(issues);
  Json analysis;
  for (int label = 0; label < 4; ++label) {
    analysis["what_m" + std::to_string(label + 1) + "_added"] =
        "contribution of M" + std::to_string(label + 1);
  }
  analysis["prompt_lessons"] = Json::array({"fixture lesson"});
  verdict["analysis"] = std::move(analysis);
  return verdict;
}

std::vector<VerdictMutation> verdict_mutations() {
  return {
      {"$.paper_title", [](Json& j) { j.erase("paper_title"); }},
      {"$.paper_title", [](Json& j) { j["paper_title"] = 42; }},
      {"$.decision", [](Json& j) { j.erase("decision"); }},
      {"$.confidence", [](Json& j) { j["confidence"] = 0.9; }},
      {"$.summary", [](Json& j) { j.erase("summary"); }},
      {"summary.total_issues", [](Json& j) { j["summary"]["total_issues"] = "five"; }},
      {"summary.total_issues",
       [](Json& j) {
         j["summary"]["total_issues"] = j["summary"]["total_issues"].get<long long>() + 1;
       }},
      {"summary.short_takeaway", [](Json& j) { j["summary"].erase("short_takeaway"); }},
      {"summary.best_rigour_counts.M3",
       [](Json& j) { j["summary"]["best_rigour_counts"].erase("M3"); }},
      {"summary.best_rigour_counts.M5",
       [](Json& j) { j["summary"]["best_rigour_counts"]["M5"] = 1; }},
      {"summary.best_rigour_counts.M1",
       [](Json& j) { j["summary"]["best_rigour_counts"]["M1"] = -1; }},
      {"summary.best_rigour_counts.M2",
       [](Json& j) {
         j["summary"]["best_rigour_counts"]["M2"] =
             j["summary"]["best_rigour_counts"]["M2"].get<long long>() + 1;
       }},
      {"issues", [](Json& j) { j["issues"] = Json::object(); }},
      {"issues[0].topic", [](Json& j) { j["issues"][0]["topic"] = ""; }},
      {"issues[0].severity", [](Json& j) { j["issues"][0]["severity"] = "catastrophic"; }},
      {"issues[0].severity", [](Json& j) { j["issues"][0]["severity"] = 3; }},
      {"issues[0].notes", [](Json& j) { j["issues"][0]["notes"] = "extra"; }},
      {"issues[1].m3", [](Json& j) { j["issues"][1].erase("m3"); }},
      {"issues[1].m1.note", [](Json& j) { j["issues"][1]["m1"].erase("note"); }},
      {"issues[1].m2.status", [](Json& j) { j["issues"][1]["m2"]["status"] = "Cought"; }},
      {"issues[2].m4.note", [](Json& j) { j["issues"][2]["m4"]["note"] = 7; }},
      {"issues[2].best_rigour", [](Json& j) { j["issues"][2]["best_rigour"] = "M5"; }},
      {"analysis.what_m2_added", [](Json& j) { j["analysis"].erase("what_m2_added"); }},
      {"analysis.prompt_lessons", [](Json& j) { j["analysis"]["prompt_lessons"] = "none"; }},
  };
}

std::vector<std::string> write_e2e_corpus(const fs::path& root) {
  PaperSpec alpha;
  alpha.paper_id = "paper-alpha";
  alpha.stratum = "oral";
  alpha.title = "Alpha: Sparse Routing For Long Contexts";
  alpha.body = "Alpha full text. The method routes tokens sparsely.";
  alpha.with_baseline_a = false;
  alpha.with_baseline_b = false;

  PaperSpec beta;
  beta.paper_id = "paper-beta";
  beta.stratum = "conditional";
  beta.title = "Beta: Curriculum Distillation";
  beta.body = "Beta full text. Distillation with a curriculum schedule.";
  beta.with_meta_review = false;  // exercises the null passthrough
  beta.with_baseline_a = false;
  beta.with_baseline_b = false;

  PaperSpec gamma;
  gamma.paper_id = "paper-gamma";
  gamma.stratum = "rejected";
  gamma.title = "Gamma: Retrieval Augmented Planning";
  gamma.body = "Gamma full text. Planning with retrieved traces.";
  gamma.with_metadata = true;
  gamma.with_baseline_a = false;
  gamma.with_baseline_b = false;

  write_paper(root, alpha);
  write_paper(root, beta);
  write_paper(root, gamma);
  return {alpha.paper_id, beta.paper_id, gamma.paper_id};
}

namespace {

struct E2ePaper {
  const char* title;
  int issues;
  int variant;
};

constexpr E2ePaper kE2ePapers[3] = {
    {"Alpha: Sparse Routing For Long Contexts", 2, 1},
    {"Beta: Curriculum Distillation", 3, 2},
    {"Gamma: Retrieval Augmented Planning", 4, 3},
};

}  // namespace

void write_e2e_providers(const fs::path& dir) {
  fs::create_directories(dir / "mocks");

  Json baseline_fixture;
  Json baseline_responses = Json::array();
  for (const E2ePaper& paper : kE2ePapers) {
    for (const auto& [model, flavor] :
         {std::pair{"mock-gpt", "gpt"}, std::pair{"mock-claude", "claude"}}) {
      Json entry;
      entry["match"] = std::string("Paper title: ") + paper.title;
      entry["model"] = model;
      entry["text"] = valid_review_text(8 + paper.variant, 3 + paper.variant,
                                        std::string(flavor) + "-" + paper.title);
      baseline_responses.push_back(std::move(entry));
    }
  }
  baseline_fixture["responses"] = std::move(baseline_responses);
  write_json_file(dir / "mocks" / "baselines.json", baseline_fixture);

  Json judge_fixture;
  Json judge_responses = Json::array();
  for (const E2ePaper& paper : kE2ePapers) {
    Json entry;
    entry["match"] = std::string("\"paper_title\": \"") + paper.title + "\"";
    entry["model"] = "mock-judge";
    entry["text"] = valid_verdict_json(paper.title, paper.issues, paper.variant).dump(2);
    judge_responses.push_back(std::move(entry));
  }
  judge_fixture["responses"] = std::move(judge_responses);
  write_json_file(dir / "mocks" / "judge.json", judge_fixture);

  Json providers;
  providers["models"] = Json{
      {"mock-gpt", Json{{"type", "mock"}, {"fixture", "mocks/baselines.json"}}},
      {"mock-claude", Json{{"type", "mock"}, {"fixture", "mocks/baselines.json"}}},
      {"mock-judge", Json{{"type", "mock"}, {"fixture", "mocks/judge.json"}}},
  };
  write_json_file(dir / "providers.json", providers);
}

fs::path write_e2e_config(const fs::path& dir, std::uint64_t seed) {
  const fs::path path = dir / "config.toml";
  std::string config;
  config += "baseline_a_model = \"mock-gpt\"\n";
  config += "baseline_b_model = \"mock-claude\"\n";
  config += "judge_model = \"mock-judge\"\n";
  config += "providers_file = \"providers.json\"\n";
  config += "taxonomy_rules = \"" ISSUEBENCH_DATA_DIR "/taxonomy_rules.json\"\n";
  config += "cache_dir = \"cache\"\n";
  config += "seed = " + std::to_string(seed) + "\n";
  config += "parallelism = 2\n";
  config += "backoff_ms = 0\n";
  write_text_file(path, config);
  return path;
}

IssueRow make_row(const std::string& paper_id, const std::string& stratum,
                  const std::string& statuses, const std::string& best_rigour,
                  const std::string& severity, const std::string& topic) {
  using issuebench::IssueStatus;
  IssueRow row;
  row.paper_id = paper_id;
  row.stratum = issuebench::stratum_from_string(stratum);
  row.topic = topic;
  row.severity = issuebench::severity_from_string(severity);
  row.best_rigour = issuebench::source_from_string(best_rigour);
  for (size_t i = 0; i < 4; ++i) {
    switch (statuses.at(i)) {
      case 'C': row.statuses[i].status = IssueStatus::Caught; break;
      case 'P': row.statuses[i].status = IssueStatus::Partial; break;
      case 'M': row.statuses[i].status = IssueStatus::Missed; break;
      default: throw std::runtime_error("bad status char");
    }
  }
  return row;
}

namespace {

using issuebench::DecisionStratum;
using issuebench::IssueStatus;
using issuebench::Severity;
using issuebench::SourceName;
using issuebench::TaxonomyLabel;

// Per-source placement inside one stratum: caught/partial counts on the
// human-salient prefix and on the human-missed suffix.
struct SourceAlloc {
  int caught_salient;
  int partial_salient;
  int caught_missed;
  int partial_missed;
};

struct StratumPlan {
  DecisionStratum stratum;
  int rows;
  std::vector<int> paper_rows;
  SourceAlloc alloc[4];  // Human, Candidate, BaselineA, BaselineB
};

std::vector<int> repeat(std::initializer_list<std::pair<int, int>> runs) {
  std::vector<int> out;
  for (const auto& [count, value] : runs) {
    for (int i = 0; i < count; ++i) out.push_back(value);
  }
  return out;
}

// Integer allocations behind the reconstructed corpus: per-stratum status
// counts reproduce the decision-stratified recall table, and the
// salient/missed split reproduces the human-alignment table and the
// human-missed hit counts.
std::vector<StratumPlan> corpus_plan() {
  std::vector<StratumPlan> plan;
  plan.push_back({DecisionStratum::Oral,
                  1210,
                  repeat({{22, 43}, {6, 44}}),
                  {{405, 298, 0, 0}, {450, 176, 357, 100}, {350, 196, 222, 135},
                   {320, 226, 237, 120}}});
  plan.push_back({DecisionStratum::Accepted,
                  1307,
                  repeat({{11, 45}, {1, 46}, {2, 47}, {14, 48}}),
                  {{433, 355, 0, 0}, {500, 200, 351, 118}, {380, 216, 225, 144},
                   {340, 239, 240, 129}}});
  plan.push_back({DecisionStratum::Conditional,
                  728,
                  repeat({{7, 48}, {8, 49}}),
                  {{224, 184, 0, 0}, {280, 96, 183, 107}, {200, 103, 127, 93},
                   {180, 105, 126, 94}}});
  plan.push_back({DecisionStratum::Rejected,
                  1353,
                  repeat({{11, 40}, {5, 50}, {13, 51}}),
                  {{484, 422, 0, 0}, {557, 253, 346, 73}, {447, 312, 186, 97},
                   {419, 324, 181, 81}}});
  return plan;
}

struct TaxonomySlot {
  TaxonomyLabel label;
  int count;
  const char* keyword;
};

// Bucket sizes in published frequency order; keywords chosen so the shipped
// rule file tags each topic into the intended bucket.
constexpr TaxonomySlot kTaxonomyPlan[] = {
    {TaxonomyLabel::Mechanism, 1662, "mechanism"},
    {TaxonomyLabel::Controls, 1013, "ablation"},
    {TaxonomyLabel::Scope, 822, "generalization"},
    {TaxonomyLabel::Fairness, 625, "baseline"},
    {TaxonomyLabel::Statistics, 121, "significance"},
    {TaxonomyLabel::Presentation, 118, "typo"},
    {TaxonomyLabel::Other, 88, "general remark"},
    {TaxonomyLabel::DataIntegrity, 71, "leakage"},
    {TaxonomyLabel::Reproducibility, 31, "reproducibility"},
    {TaxonomyLabel::Alignment, 26, "safety"},
    {TaxonomyLabel::FailureModes, 21, "robustness"},
};

constexpr int kSeverityPlan[3] = {1313, 2713, 572};          // core, important, secondary
constexpr int kBestRigourPlan[4] = {850, 2229, 693, 826};    // Human, Candidate, A, B

IssueStatus status_for(int local, const SourceAlloc& alloc, int salient_rows) {
  if (local < salient_rows) {
    if (local < alloc.caught_salient) return IssueStatus::Caught;
    if (local < alloc.caught_salient + alloc.partial_salient) return IssueStatus::Partial;
    return IssueStatus::Missed;
  }
  const int offset = local - salient_rows;
  if (offset < alloc.caught_missed) return IssueStatus::Caught;
  if (offset < alloc.caught_missed + alloc.partial_missed) return IssueStatus::Partial;
  return IssueStatus::Missed;
}

}  // namespace

CorpusMatrix reconstructed_corpus_matrix() {
  CorpusMatrix matrix;
  int global_index = 0;
  int paper_index = 0;

  for (const StratumPlan& stratum : corpus_plan()) {
    const int salient_rows =
        stratum.alloc[0].caught_salient + stratum.alloc[0].partial_salient;

    // paper boundaries first, so rows can carry their paper_id
    std::vector<std::string> row_paper;
    for (int rows_in_paper : stratum.paper_rows) {
      char id[16];
      std::snprintf(id, sizeof(id), "p%03d", paper_index);
      matrix.papers.push_back({id, stratum.stratum, rows_in_paper});
      for (int r = 0; r < rows_in_paper; ++r) row_paper.emplace_back(id);
      ++paper_index;
    }

    for (int local = 0; local < stratum.rows; ++local, ++global_index) {
      IssueRow row;
      row.paper_id = row_paper[static_cast<size_t>(local)];
      row.stratum = stratum.stratum;

      for (int source = 0; source < 4; ++source) {
        row.statuses[static_cast<size_t>(source)].status =
            status_for(local, stratum.alloc[source], salient_rows);
      }

      int cursor = global_index;
      if (cursor < kSeverityPlan[0]) row.severity = Severity::Core;
      else if (cursor < kSeverityPlan[0] + kSeverityPlan[1]) row.severity = Severity::Important;
      else row.severity = Severity::Secondary;

      cursor = global_index;
      for (const TaxonomySlot& slot : kTaxonomyPlan) {
        if (cursor < slot.count) {
          row.taxonomy = slot.label;
          char topic[96];
          std::snprintf(topic, sizeof(topic), "issue %04d concerning %s", global_index,
                        slot.keyword);
          row.topic = topic;
          break;
        }
        cursor -= slot.count;
      }

      cursor = global_index;
      for (int source = 0; source < 4; ++source) {
        if (cursor < kBestRigourPlan[source]) {
          row.best_rigour = static_cast<SourceName>(source);
          break;
        }
        cursor -= kBestRigourPlan[source];
      }

      matrix.rows.push_back(std::move(row));
    }
  }
  return matrix;
}

CorpusMatrix random_matrix(std::uint64_t seed) {
  SplitMix64 rng(seed);
  CorpusMatrix matrix;
  const int papers = 1 + static_cast<int>(rng.next_below(6));
  int global = 0;
  for (int p = 0; p < papers; ++p) {
    char id[16];
    std::snprintf(id, sizeof(id), "r%03d", p);
    const DecisionStratum stratum = static_cast<DecisionStratum>(rng.next_below(4));
    int rows = static_cast<int>(rng.next_below(34));
    if (p == papers - 1 && matrix.rows.empty() && rows == 0) rows = 1;
    matrix.papers.push_back({id, stratum, rows});
    for (int r = 0; r < rows; ++r, ++global) {
      IssueRow row;
      row.paper_id = id;
      row.stratum = stratum;
      row.topic = "topic " + std::to_string(global);
      row.severity = static_cast<Severity>(rng.next_below(3));
      row.taxonomy = static_cast<TaxonomyLabel>(rng.next_below(11));
      for (size_t s = 0; s < 4; ++s) {
        row.statuses[s].status = static_cast<IssueStatus>(rng.next_below(3));
      }
      row.best_rigour = static_cast<SourceName>(rng.next_below(4));
      matrix.rows.push_back(std::move(row));
    }
  }
  return matrix;
}

}  // namespace testfx
