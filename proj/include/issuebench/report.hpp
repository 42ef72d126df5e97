#pragma once

#include <filesystem>
#include <string>

#include "issuebench/matrix.hpp"
#include "issuebench/metrics.hpp"

namespace issuebench {

/// Everything the report stage computes from a tagged corpus matrix.
struct MetricsReport {
  long long n = 0;
  long long paper_count = 0;
  MeanIssues issues_per_paper;
  std::map<DecisionStratum, long long> papers_per_stratum;
  std::map<SourceName, SourceMetrics> overall;
  std::map<std::string, std::map<SourceName, SourceMetrics>> by_severity;
  std::map<std::string, std::map<SourceName, SourceMetrics>> by_stratum;
  std::map<std::string, std::map<SourceName, SourceMetrics>> by_taxonomy;
  std::map<std::string, long long> taxonomy_core_counts;  // core-severity rows per bucket
  std::map<SourceName, AlignmentMetrics> alignment;
  ComplementarityCounts complementarity_counts;
  PerPaperDistributions distributions;
};

MetricsReport compute_report(const CorpusMatrix& matrix);

/// Write the report bundle: the five table CSVs named after the published
/// tables, figure-data JSON files, the corpus matrix projections, and a
/// markdown summary.
void write_report_bundle(const MetricsReport& report, const CorpusMatrix& matrix,
                         const std::filesystem::path& out_dir);

// individual emitters (exposed for tests)
Json metrics_report_json(const MetricsReport& report);
std::string table2_coverage_csv(const MetricsReport& report);
std::string table3_severity_csv(const MetricsReport& report);
std::string table4_decision_csv(const MetricsReport& report);
std::string table5_alignment_csv(const MetricsReport& report);
std::string table6_taxonomy_csv(const MetricsReport& report);
std::string summary_markdown(const MetricsReport& report);

Json figure_dataset_json(const MetricsReport& report, const CorpusMatrix& matrix);
Json figure_coverage_json(const MetricsReport& report);
Json figure_severity_recall_json(const MetricsReport& report);
Json figure_severity_decision_grid_json(const CorpusMatrix& matrix);
Json figure_alignment_json(const MetricsReport& report);
Json figure_taxonomy_heatmap_json(const MetricsReport& report);
Json figure_error_surface_json(const MetricsReport& report);
Json figure_complementarity_json(const MetricsReport& report);

}  // namespace issuebench
