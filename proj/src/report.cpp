#include "issuebench/report.hpp"

#include <algorithm>
#include <sstream>

#include "issuebench/errors.hpp"

namespace issuebench {

namespace {

/// Table 6 row order: bucket frequency descending, canonical order on ties.
std::vector<std::string> taxonomy_order(const MetricsReport& report) {
  std::vector<std::pair<long long, std::string>> buckets;
  for (TaxonomyLabel label : kAllTaxonomyLabels) {
    const std::string name(to_string(label));
    auto it = report.by_taxonomy.find(name);
    if (it == report.by_taxonomy.end()) continue;
    buckets.emplace_back(it->second.at(SourceName::Human).n, name);
  }
  std::stable_sort(buckets.begin(), buckets.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::string> order;
  for (const auto& [count, name] : buckets) order.push_back(name);
  return order;
}

}  // namespace

MetricsReport compute_report(const CorpusMatrix& matrix) {
  MetricsReport report;
  report.n = matrix.n();
  report.paper_count = static_cast<long long>(matrix.papers.size());
  if (!matrix.papers.empty()) {
    report.issues_per_paper = mean_issues_per_paper(matrix);
  }
  for (DecisionStratum stratum : kAllStrata) report.papers_per_stratum[stratum] = 0;
  for (const PaperEntry& paper : matrix.papers) {
    ++report.papers_per_stratum[paper.stratum];
  }

  const Slice all(matrix.rows);
  for (SourceName source : kAllSources) {
    report.overall[source] = tally_source(all, source);
    report.alignment[source] = alignment_metrics(all, source);
  }
  report.by_severity = stratify(matrix, StratifyKey::Severity);
  report.by_stratum = stratify(matrix, StratifyKey::Stratum);
  report.by_taxonomy = stratify(matrix, StratifyKey::Taxonomy);
  for (const IssueRow& row : matrix.rows) {
    if (row.severity == Severity::Core) {
      ++report.taxonomy_core_counts[std::string(to_string(row.taxonomy))];
    }
  }
  report.complementarity_counts = complementarity(matrix);
  report.distributions = per_paper_distributions(matrix);
  return report;
}

namespace {

Json source_metrics_json(const SourceMetrics& m) {
  Json j;
  j["n"] = m.n;
  j["caught"] = m.caught;
  j["partial"] = m.partial;
  j["missed"] = m.missed;
  j["best_rigour"] = m.best_rigour;
  j["strict_recall"] = m.strict_recall();
  j["hit_recall"] = m.hit_recall();
  j["weighted_coverage"] = m.weighted_coverage();
  j["best_rigour_share"] = m.best_rigour_share();
  return j;
}

Json cells_json(const std::map<std::string, std::map<SourceName, SourceMetrics>>& cells) {
  Json j;
  for (const auto& [cell, per_source] : cells) {
    Json c;
    for (SourceName source : kAllSources) {
      c[std::string(to_string(source))] = source_metrics_json(per_source.at(source));
    }
    j[cell] = std::move(c);
  }
  return j;
}

}  // namespace

Json metrics_report_json(const MetricsReport& report) {
  Json j;
  j["n"] = report.n;
  j["paper_count"] = report.paper_count;
  j["mean_issues_per_paper"] = report.issues_per_paper.mean;
  j["median_issues_per_paper"] = report.issues_per_paper.median;
  Json overall;
  for (SourceName source : kAllSources) {
    overall[std::string(to_string(source))] = source_metrics_json(report.overall.at(source));
  }
  j["overall"] = std::move(overall);
  j["by_severity"] = cells_json(report.by_severity);
  j["by_stratum"] = cells_json(report.by_stratum);
  j["by_taxonomy"] = cells_json(report.by_taxonomy);
  Json alignment;
  for (SourceName source : kAllSources) {
    const AlignmentMetrics& m = report.alignment.at(source);
    Json a;
    a["human_salient_size"] = m.human_salient_size;
    a["caught_in_salient"] = m.caught_in_salient;
    a["hit_in_salient"] = m.hit_in_salient;
    a["value_beyond_humans"] = m.value_beyond_humans;
    if (m.human_salient_size > 0) {
      a["agreement_strict"] = m.agreement_strict();
      a["agreement_hit"] = m.agreement_hit();
    }
    alignment[std::string(to_string(source))] = std::move(a);
  }
  j["alignment"] = std::move(alignment);
  j["complementarity"] = figure_complementarity_json(report);
  return j;
}

std::string table2_coverage_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "source,caught,partial,missed,hit_pct,weighted_score,best_rigour_pct\n";
  for (SourceName source : kAllSources) {
    const SourceMetrics& m = report.overall.at(source);
    out << to_string(source) << ',' << m.caught << ',' << m.partial << ',' << m.missed << ','
        << m.hit_pct() << ',' << m.weighted_pct() << ',' << m.best_rigour_pct() << '\n';
  }
  return out.str();
}

namespace {

void strict_hit_header(std::ostringstream& out) {
  for (SourceName source : kAllSources) {
    out << ',' << to_string(source) << "_strict," << to_string(source) << "_hit";
  }
  out << '\n';
}

void strict_hit_cells(std::ostringstream& out,
                      const std::map<SourceName, SourceMetrics>& per_source) {
  for (SourceName source : kAllSources) {
    const SourceMetrics& m = per_source.at(source);
    out << ',' << m.strict_pct() << ',' << m.hit_pct();
  }
  out << '\n';
}

}  // namespace

std::string table3_severity_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "severity,issues";
  strict_hit_header(out);
  for (Severity severity : kAllSeverities) {
    const std::string name(to_string(severity));
    auto it = report.by_severity.find(name);
    if (it == report.by_severity.end()) continue;
    out << name << ',' << it->second.at(SourceName::Human).n;
    strict_hit_cells(out, it->second);
  }
  return out.str();
}

std::string table4_decision_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "decision,papers,issues";
  strict_hit_header(out);
  for (DecisionStratum stratum : kAllStrata) {
    const std::string name(to_string(stratum));
    auto it = report.by_stratum.find(name);
    if (it == report.by_stratum.end()) continue;
    out << name << ',' << report.papers_per_stratum.at(stratum) << ','
        << it->second.at(SourceName::Human).n;
    strict_hit_cells(out, it->second);
  }
  return out.str();
}

std::string table5_alignment_csv(const MetricsReport& report) {
  const AlignmentMetrics& human = report.alignment.at(SourceName::Human);
  const long long salient = human.human_salient_size;
  const long long missed = report.n - salient;

  std::ostringstream out;
  out << "issue_stratum,issues";
  strict_hit_header(out);

  out << "human_salient," << salient;
  for (SourceName source : kAllSources) {
    const AlignmentMetrics& m = report.alignment.at(source);
    if (salient > 0) {
      out << ',' << format_percent(m.caught_in_salient, salient) << ','
          << format_percent(m.hit_in_salient, salient);
    } else {
      out << ",0.0,0.0";
    }
  }
  out << '\n';

  out << "human_missed," << missed;
  for (SourceName source : kAllSources) {
    const SourceMetrics& overall = report.overall.at(source);
    const AlignmentMetrics& m = report.alignment.at(source);
    const long long caught_outside = overall.caught - m.caught_in_salient;
    const long long hit_outside = m.value_beyond_humans;
    if (missed > 0) {
      out << ',' << format_percent(caught_outside, missed) << ','
          << format_percent(hit_outside, missed);
    } else {
      out << ",0.0,0.0";
    }
  }
  out << '\n';

  out << "all," << report.n;
  for (SourceName source : kAllSources) {
    const SourceMetrics& m = report.overall.at(source);
    out << ',' << m.strict_pct() << ',' << m.hit_pct();
  }
  out << '\n';
  return out.str();
}

std::string table6_taxonomy_csv(const MetricsReport& report) {
  std::ostringstream out;
  out << "taxonomy,issues,core_pct";
  for (SourceName source : kAllSources) {
    out << ',' << to_string(source) << "_hit";
  }
  out << '\n';
  for (const std::string& bucket : taxonomy_order(report)) {
    const auto& per_source = report.by_taxonomy.at(bucket);
    const long long n = per_source.at(SourceName::Human).n;
    auto core_it = report.taxonomy_core_counts.find(bucket);
    const long long core = core_it == report.taxonomy_core_counts.end() ? 0 : core_it->second;
    out << bucket << ',' << n << ',' << format_percent(core, n);
    for (SourceName source : kAllSources) {
      out << ',' << per_source.at(source).hit_pct();
    }
    out << '\n';
  }
  return out.str();
}

Json figure_dataset_json(const MetricsReport& report, const CorpusMatrix& matrix) {
  Json j;
  Json strata;
  for (DecisionStratum stratum : kAllStrata) {
    strata[std::string(to_string(stratum))] = report.papers_per_stratum.at(stratum);
  }
  j["papers_per_stratum"] = std::move(strata);
  Json per_paper = Json::array();
  for (const PaperEntry& paper : matrix.papers) {
    per_paper.push_back(Json{{"paper_id", paper.paper_id},
                             {"stratum", to_string(paper.stratum)},
                             {"issue_rows", paper.row_count}});
  }
  j["issue_rows_per_paper"] = std::move(per_paper);
  j["mean_issues_per_paper"] = format_fixed(report.issues_per_paper.mean, 1);
  j["median_issues_per_paper"] = report.issues_per_paper.median;
  return j;
}

Json figure_coverage_json(const MetricsReport& report) {
  Json j;
  for (SourceName source : kAllSources) {
    const SourceMetrics& m = report.overall.at(source);
    j[std::string(to_string(source))] = Json{{"caught", m.caught},
                                             {"partial", m.partial},
                                             {"missed", m.missed},
                                             {"hit_pct", m.hit_pct()}};
  }
  return j;
}

Json figure_severity_recall_json(const MetricsReport& report) {
  Json j;
  for (Severity severity : kAllSeverities) {
    const std::string name(to_string(severity));
    auto it = report.by_severity.find(name);
    if (it == report.by_severity.end()) continue;
    Json cell;
    cell["issues"] = it->second.at(SourceName::Human).n;
    for (SourceName source : kAllSources) {
      const SourceMetrics& m = it->second.at(source);
      cell[std::string(to_string(source))] =
          Json{{"strict_pct", m.strict_pct()}, {"hit_pct", m.hit_pct()}};
    }
    j[name] = std::move(cell);
  }
  return j;
}

Json figure_severity_decision_grid_json(const CorpusMatrix& matrix) {
  // per source: stratum rows x severity columns, each cell (n, hit count)
  std::map<std::string, std::map<std::string, std::map<SourceName, std::pair<long long, long long>>>>
      cells;
  for (const IssueRow& row : matrix.rows) {
    auto& cell = cells[std::string(to_string(row.stratum))][std::string(to_string(row.severity))];
    for (SourceName source : kAllSources) {
      auto& [n, hits] = cell[source];
      ++n;
      if (row.hit_by(source)) ++hits;
    }
  }
  Json j;
  for (SourceName source : kAllSources) {
    Json panel;
    for (DecisionStratum stratum : kAllStrata) {
      const std::string stratum_name(to_string(stratum));
      auto stratum_it = cells.find(stratum_name);
      if (stratum_it == cells.end()) continue;
      Json row_json;
      for (Severity severity : kAllSeverities) {
        const std::string severity_name(to_string(severity));
        auto cell_it = stratum_it->second.find(severity_name);
        if (cell_it == stratum_it->second.end()) continue;
        const auto& [n, hits] = cell_it->second.at(source);
        row_json[severity_name] = Json{{"n", n}, {"hit_pct", format_percent(hits, n)}};
      }
      panel[stratum_name] = std::move(row_json);
    }
    j[std::string(to_string(source))] = std::move(panel);
  }
  return j;
}

Json figure_alignment_json(const MetricsReport& report) {
  Json j;
  for (SourceName source : kAutomatedSources) {
    Json agreement_points = Json::array();
    Json beyond_points = Json::array();
    for (const PaperPoint& point : report.distributions.points.at(source)) {
      if (point.agreement_hit.has_value()) {
        agreement_points.push_back(
            Json{{"paper_id", point.paper_id},
                 {"agreement_hit_pct", format_percent(point.hits_in_salient, point.salient_rows)}});
      }
      beyond_points.push_back(
          Json{{"paper_id", point.paper_id}, {"value_beyond_humans", point.value_beyond_humans}});
    }
    const DistributionSummary& agreement = report.distributions.agreement_summary.at(source);
    const DistributionSummary& beyond = report.distributions.beyond_summary.at(source);
    j[std::string(to_string(source))] =
        Json{{"agreement", Json{{"points", std::move(agreement_points)},
                                {"median", agreement.median},
                                {"q1", agreement.q1},
                                {"q3", agreement.q3}}},
             {"beyond", Json{{"points", std::move(beyond_points)},
                             {"median", beyond.median},
                             {"q1", beyond.q1},
                             {"q3", beyond.q3}}}};
  }
  j["papers_with_empty_salient"] = report.distributions.papers_with_empty_salient;
  return j;
}

Json figure_taxonomy_heatmap_json(const MetricsReport& report) {
  Json j;
  for (const std::string& bucket : taxonomy_order(report)) {
    const auto& per_source = report.by_taxonomy.at(bucket);
    Json row;
    row["issues"] = per_source.at(SourceName::Human).n;
    for (SourceName source : kAllSources) {
      const SourceMetrics& m = per_source.at(source);
      row[std::string(to_string(source))] = m.best_rigour_pct();
    }
    j[bucket] = std::move(row);
  }
  return j;
}

Json figure_error_surface_json(const MetricsReport& report) {
  Json j;
  for (const std::string& bucket : taxonomy_order(report)) {
    const auto& per_source = report.by_taxonomy.at(bucket);
    Json row;
    row["issues"] = per_source.at(SourceName::Human).n;
    for (SourceName source : kAllSources) {
      const SourceMetrics& m = per_source.at(source);
      row[std::string(to_string(source))] = Json{{"missed_pct", format_percent(m.missed, m.n)},
                                                 {"partial_pct", format_percent(m.partial, m.n)}};
    }
    j[bucket] = std::move(row);
  }
  return j;
}

Json figure_complementarity_json(const MetricsReport& report) {
  Json j;
  Json unique;
  for (SourceName source : kAllSources) {
    unique[std::string(to_string(source))] =
        report.complementarity_counts.unique_hits.at(source);
  }
  j["unique_hits"] = std::move(unique);
  Json beyond;
  for (SourceName source : kAutomatedSources) {
    beyond[std::string(to_string(source))] =
        report.complementarity_counts.human_missed_hits.at(source);
  }
  j["human_missed_hits"] = std::move(beyond);
  return j;
}

std::string summary_markdown(const MetricsReport& report) {
  std::ostringstream out;
  out << "# Review-source backtest summary\n\n";
  out << "Corpus: " << report.paper_count << " papers, " << report.n << " judged issue rows";
  if (report.paper_count > 0) {
    out << " (mean " << format_fixed(report.issues_per_paper.mean, 1) << " per paper, median "
        << format_fixed(report.issues_per_paper.median, 1) << ")";
  }
  out << ".\n\n";

  out << "## Coverage over the full union\n\n";
  out << "| Source | Caught | Partial | Missed | Hit % | Weighted score | Best-rigour % |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (SourceName source : kAllSources) {
    const SourceMetrics& m = report.overall.at(source);
    out << "| " << to_string(source) << " | " << m.caught << " | " << m.partial << " | "
        << m.missed << " | " << m.hit_pct() << " | " << m.weighted_pct() << " | "
        << m.best_rigour_pct() << " |\n";
  }
  out << "\n";

  const AlignmentMetrics& human = report.alignment.at(SourceName::Human);
  out << "## Alignment with the human reviews\n\n";
  out << "Human-salient rows |H|: " << human.human_salient_size << " of " << report.n
      << "; human-missed rows: " << (report.n - human.human_salient_size) << ".\n\n";
  out << "| Source | Agreement strict % | Agreement hit % | Value beyond humans |\n";
  out << "|---|---|---|---|\n";
  for (SourceName source : kAllSources) {
    const AlignmentMetrics& m = report.alignment.at(source);
    out << "| " << to_string(source) << " | ";
    if (m.human_salient_size > 0) {
      out << format_percent(m.caught_in_salient, m.human_salient_size) << " | "
          << format_percent(m.hit_in_salient, m.human_salient_size);
    } else {
      out << "n/a | n/a";
    }
    out << " | " << m.value_beyond_humans << " |\n";
  }
  out << "\n";

  out << "## Complementarity\n\n";
  out << "| Source | Unique hits | Human-missed hits |\n";
  out << "|---|---|---|\n";
  for (SourceName source : kAllSources) {
    out << "| " << to_string(source) << " | "
        << report.complementarity_counts.unique_hits.at(source) << " | ";
    auto it = report.complementarity_counts.human_missed_hits.find(source);
    if (it == report.complementarity_counts.human_missed_hits.end()) {
      out << "0";
    } else {
      out << it->second;
    }
    out << " |\n";
  }
  out << "\nTables: table2_coverage.csv, table3_severity.csv, table4_decision.csv, "
         "table5_alignment.csv, table6_taxonomy.csv. Figure data: figure_*.json.\n";
  return out.str();
}

void write_report_bundle(const MetricsReport& report, const CorpusMatrix& matrix,
                         const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_json_file(out_dir / "metrics_report.json", metrics_report_json(report));
  write_text_file_atomic(out_dir / "table2_coverage.csv", table2_coverage_csv(report));
  write_text_file_atomic(out_dir / "table3_severity.csv", table3_severity_csv(report));
  write_text_file_atomic(out_dir / "table4_decision.csv", table4_decision_csv(report));
  write_text_file_atomic(out_dir / "table5_alignment.csv", table5_alignment_csv(report));
  write_text_file_atomic(out_dir / "table6_taxonomy.csv", table6_taxonomy_csv(report));
  write_json_file(out_dir / "figure_dataset.json", figure_dataset_json(report, matrix));
  write_json_file(out_dir / "figure_coverage.json", figure_coverage_json(report));
  write_json_file(out_dir / "figure_severity_recall.json", figure_severity_recall_json(report));
  write_json_file(out_dir / "figure_severity_decision_grid.json",
                  figure_severity_decision_grid_json(matrix));
  write_json_file(out_dir / "figure_alignment.json", figure_alignment_json(report));
  write_json_file(out_dir / "figure_taxonomy_heatmap.json", figure_taxonomy_heatmap_json(report));
  write_json_file(out_dir / "figure_error_surface.json", figure_error_surface_json(report));
  write_json_file(out_dir / "figure_complementarity.json", figure_complementarity_json(report));
  write_matrix_jsonl(matrix, out_dir / "corpus_matrix.jsonl");
  write_matrix_csv(matrix, out_dir / "corpus_matrix.csv");
  write_text_file_atomic(out_dir / "summary.md", summary_markdown(report));
}

}  // namespace issuebench
