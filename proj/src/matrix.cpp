#include "issuebench/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "issuebench/errors.hpp"

namespace issuebench {

Json IssueMatrix::to_json() const {
  Json j;
  j["paper_id"] = paper_id;
  j["paper_title"] = paper_title;
  j["stratum"] = to_string(stratum);
  j["decision"] = decision;
  Json summary;
  summary["total_issues"] = static_cast<long long>(rows.size());
  Json counts;
  for (SourceName source : kAllSources) {
    auto it = best_rigour_counts.find(source);
    counts[std::string(to_string(source))] = it == best_rigour_counts.end() ? 0 : it->second;
  }
  summary["best_rigour_counts"] = std::move(counts);
  summary["short_takeaway"] = short_takeaway;
  j["summary"] = std::move(summary);
  Json rows_json = Json::array();
  for (const IssueRow& row : rows) {
    Json r;
    r["topic"] = row.topic;
    r["severity"] = to_string(row.severity);
    Json statuses;
    for (SourceName source : kAllSources) {
      Json cell;
      cell["status"] = to_string(row.status_of(source).status);
      cell["note"] = row.status_of(source).note;
      statuses[std::string(to_string(source))] = std::move(cell);
    }
    r["statuses"] = std::move(statuses);
    r["best_rigour"] = to_string(row.best_rigour);
    rows_json.push_back(std::move(r));
  }
  j["issues"] = std::move(rows_json);
  Json analysis;
  Json added;
  for (SourceName source : kAllSources) {
    auto it = what_added.find(source);
    added[std::string(to_string(source))] = it == what_added.end() ? std::string{} : it->second;
  }
  analysis["what_added"] = std::move(added);
  analysis["prompt_lessons"] = prompt_lessons;
  j["analysis"] = std::move(analysis);
  j["lint"] = lint;
  return j;
}

IssueMatrix IssueMatrix::from_json(const Json& j) {
  IssueMatrix matrix;
  matrix.paper_id = j.at("paper_id").get<std::string>();
  matrix.paper_title = j.at("paper_title").get<std::string>();
  matrix.stratum = stratum_from_string(j.at("stratum").get<std::string>());
  matrix.decision = j.at("decision").get<std::string>();
  matrix.short_takeaway = j.at("summary").at("short_takeaway").get<std::string>();
  for (SourceName source : kAllSources) {
    matrix.best_rigour_counts[source] =
        j.at("summary").at("best_rigour_counts").at(std::string(to_string(source))).get<long long>();
    matrix.what_added[source] =
        j.at("analysis").at("what_added").at(std::string(to_string(source))).get<std::string>();
  }
  for (const Json& r : j.at("issues")) {
    IssueRow row;
    row.paper_id = matrix.paper_id;
    row.stratum = matrix.stratum;
    row.topic = r.at("topic").get<std::string>();
    row.severity = severity_from_string(r.at("severity").get<std::string>());
    for (SourceName source : kAllSources) {
      const Json& cell = r.at("statuses").at(std::string(to_string(source)));
      row.status_of(source).status = status_from_string(cell.at("status").get<std::string>());
      row.status_of(source).note = cell.at("note").get<std::string>();
    }
    row.best_rigour = source_from_string(r.at("best_rigour").get<std::string>());
    matrix.rows.push_back(std::move(row));
  }
  for (const Json& l : j.at("analysis").at("prompt_lessons")) {
    matrix.prompt_lessons.push_back(l.get<std::string>());
  }
  if (j.contains("lint")) {
    for (const Json& l : j.at("lint")) {
      matrix.lint.push_back(l.get<std::string>());
    }
  }
  const long long declared = j.at("summary").at("total_issues").get<long long>();
  if (declared != static_cast<long long>(matrix.rows.size())) {
    throw MalformedDocumentError("<matrix json>", "total_issues disagrees with issue rows");
  }
  return matrix;
}

CorpusMatrix merge_corpus(const std::vector<IssueMatrix>& matrices) {
  std::vector<const IssueMatrix*> ordered;
  ordered.reserve(matrices.size());
  for (const IssueMatrix& m : matrices) ordered.push_back(&m);
  std::sort(ordered.begin(), ordered.end(), [](const IssueMatrix* a, const IssueMatrix* b) {
    return a->paper_id < b->paper_id;
  });
  for (size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i]->paper_id == ordered[i - 1]->paper_id) {
      throw DuplicatePaperError(ordered[i]->paper_id);
    }
  }
  CorpusMatrix corpus;
  for (const IssueMatrix* m : ordered) {
    corpus.papers.push_back(
        {m->paper_id, m->stratum, static_cast<long long>(m->rows.size())});
    corpus.rows.insert(corpus.rows.end(), m->rows.begin(), m->rows.end());
  }
  return corpus;
}

RuleSet load_rules(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  RuleSet rules;
  rules.version = j.value("version", std::string{});
  for (const Json& r : j.at("rules")) {
    TaxonomyRule rule;
    rule.label = taxonomy_from_string(r.at("label").get<std::string>());
    for (const Json& k : r.at("keywords")) {
      rule.keywords.push_back(k.get<std::string>());
    }
    rules.rules.push_back(std::move(rule));
  }
  return rules;
}

TaxonomyLabel tag_taxonomy(const IssueRow& row, const RuleSet& rules) {
  // first rule whose any keyword matches the topic wins; topics only, never
  // notes (notes mention other sources)
  const std::string topic = to_lower(row.topic);
  for (const TaxonomyRule& rule : rules.rules) {
    for (const std::string& keyword : rule.keywords) {
      if (topic.find(to_lower(keyword)) != std::string::npos) {
        return rule.label;
      }
    }
  }
  return TaxonomyLabel::Other;
}

void tag_all(CorpusMatrix& matrix, const RuleSet& rules) {
  for (IssueRow& row : matrix.rows) {
    row.taxonomy = tag_taxonomy(row, rules);
  }
}

MeanIssues mean_issues_per_paper(const CorpusMatrix& matrix) {
  if (matrix.papers.empty()) {
    throw EmptyCorpusError();
  }
  std::vector<long long> counts;
  counts.reserve(matrix.papers.size());
  for (const PaperEntry& paper : matrix.papers) {
    counts.push_back(paper.row_count);
  }
  std::sort(counts.begin(), counts.end());
  MeanIssues out;
  out.mean = static_cast<double>(matrix.n()) / static_cast<double>(matrix.papers.size());
  const size_t mid = counts.size() / 2;
  out.median = counts.size() % 2 == 1
                   ? static_cast<double>(counts[mid])
                   : (static_cast<double>(counts[mid - 1]) + static_cast<double>(counts[mid])) / 2.0;
  return out;
}

Json row_to_json(const IssueRow& row) {
  Json r;
  r["paper_id"] = row.paper_id;
  r["stratum"] = to_string(row.stratum);
  r["topic"] = row.topic;
  r["severity"] = to_string(row.severity);
  r["taxonomy"] = to_string(row.taxonomy);
  Json statuses;
  for (SourceName source : kAllSources) {
    Json cell;
    cell["status"] = to_string(row.status_of(source).status);
    cell["note"] = row.status_of(source).note;
    statuses[std::string(to_string(source))] = std::move(cell);
  }
  r["statuses"] = std::move(statuses);
  r["best_rigour"] = to_string(row.best_rigour);
  return r;
}

IssueRow row_from_json(const Json& j) {
  IssueRow row;
  row.paper_id = j.at("paper_id").get<std::string>();
  row.stratum = stratum_from_string(j.at("stratum").get<std::string>());
  row.topic = j.at("topic").get<std::string>();
  row.severity = severity_from_string(j.at("severity").get<std::string>());
  row.taxonomy = taxonomy_from_string(j.at("taxonomy").get<std::string>());
  for (SourceName source : kAllSources) {
    const Json& cell = j.at("statuses").at(std::string(to_string(source)));
    row.status_of(source).status = status_from_string(cell.at("status").get<std::string>());
    row.status_of(source).note = cell.at("note").get<std::string>();
  }
  row.best_rigour = source_from_string(j.at("best_rigour").get<std::string>());
  return row;
}

void write_matrix_jsonl(const CorpusMatrix& matrix, const std::filesystem::path& path) {
  std::string out;
  for (const IssueRow& row : matrix.rows) {
    out += row_to_json(row).dump();
    out += '\n';
  }
  write_text_file_atomic(path, out);
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

void write_matrix_csv(const CorpusMatrix& matrix, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "paper_id,stratum,topic,severity,taxonomy";
  for (SourceName source : kAllSources) {
    out << "," << to_string(source);
  }
  out << ",best_rigour\n";
  for (const IssueRow& row : matrix.rows) {
    out << csv_escape(row.paper_id) << ',' << to_string(row.stratum) << ','
        << csv_escape(row.topic) << ',' << to_string(row.severity) << ','
        << to_string(row.taxonomy);
    for (SourceName source : kAllSources) {
      out << ',' << to_string(row.status_of(source).status);
    }
    out << ',' << to_string(row.best_rigour) << '\n';
  }
  write_text_file_atomic(path, out.str());
}

}  // namespace issuebench
