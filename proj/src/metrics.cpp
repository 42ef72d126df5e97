#include "issuebench/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "issuebench/errors.hpp"

namespace issuebench {

SourceMetrics tally_source(Slice slice, SourceName source) {
  SourceMetrics m;
  m.n = static_cast<long long>(slice.size());
  for (const IssueRow& row : slice) {
    switch (row.status_of(source).status) {
      case IssueStatus::Caught: ++m.caught; break;
      case IssueStatus::Partial: ++m.partial; break;
      case IssueStatus::Missed: ++m.missed; break;
    }
    if (row.best_rigour == source) ++m.best_rigour;
  }
  return m;
}

namespace {

void require_nonempty(Slice slice, const char* what) {
  if (slice.empty()) {
    throw EmptySliceError(what);
  }
}

}  // namespace

double strict_recall(Slice slice, SourceName source) {
  require_nonempty(slice, "strict_recall");
  const SourceMetrics m = tally_source(slice, source);
  return double(m.caught) / double(m.n);
}

double hit_recall(Slice slice, SourceName source) {
  require_nonempty(slice, "hit_recall");
  const SourceMetrics m = tally_source(slice, source);
  return double(m.caught + m.partial) / double(m.n);
}

double weighted_coverage(Slice slice, SourceName source) {
  require_nonempty(slice, "weighted_coverage");
  const SourceMetrics m = tally_source(slice, source);
  return (double(m.caught) + 0.5 * double(m.partial)) / double(m.n);
}

double best_rigour_share(Slice slice, SourceName source) {
  require_nonempty(slice, "best_rigour_share");
  const SourceMetrics m = tally_source(slice, source);
  return double(m.best_rigour) / double(m.n);
}

std::vector<size_t> human_salient_set(Slice slice) {
  std::vector<size_t> indices;
  for (size_t i = 0; i < slice.size(); ++i) {
    if (slice[i].hit_by(SourceName::Human)) {
      indices.push_back(i);
    }
  }
  return indices;
}

std::pair<double, double> agreement_with_humans(Slice slice, SourceName source) {
  const AlignmentMetrics m = alignment_metrics(slice, source);
  if (m.human_salient_size == 0) {
    throw EmptySliceError("agreement_with_humans: human-salient set is empty");
  }
  return {m.agreement_strict(), m.agreement_hit()};
}

long long value_beyond_humans(Slice slice, SourceName source) {
  return alignment_metrics(slice, source).value_beyond_humans;
}

AlignmentMetrics alignment_metrics(Slice slice, SourceName source) {
  AlignmentMetrics m;
  for (const IssueRow& row : slice) {
    const bool salient = row.hit_by(SourceName::Human);
    const IssueStatus status = row.status_of(source).status;
    if (salient) {
      ++m.human_salient_size;
      if (status == IssueStatus::Caught) ++m.caught_in_salient;
      if (status != IssueStatus::Missed) ++m.hit_in_salient;
    } else if (status != IssueStatus::Missed) {
      ++m.value_beyond_humans;
    }
  }
  return m;
}

namespace {

std::string cell_name(const IssueRow& row, StratifyKey key) {
  switch (key) {
    case StratifyKey::Severity: return std::string(to_string(row.severity));
    case StratifyKey::Stratum: return std::string(to_string(row.stratum));
    case StratifyKey::Taxonomy: return std::string(to_string(row.taxonomy));
  }
  throw Error("bad stratify key");
}

std::vector<std::string> canonical_cells(StratifyKey key) {
  std::vector<std::string> cells;
  switch (key) {
    case StratifyKey::Severity:
      for (Severity s : kAllSeverities) cells.emplace_back(to_string(s));
      break;
    case StratifyKey::Stratum:
      for (DecisionStratum s : kAllStrata) cells.emplace_back(to_string(s));
      break;
    case StratifyKey::Taxonomy:
      for (TaxonomyLabel s : kAllTaxonomyLabels) cells.emplace_back(to_string(s));
      break;
  }
  return cells;
}

}  // namespace

std::map<std::string, std::map<SourceName, SourceMetrics>> stratify(const CorpusMatrix& matrix,
                                                                    StratifyKey key) {
  std::map<std::string, std::map<SourceName, SourceMetrics>> cells;
  for (const IssueRow& row : matrix.rows) {
    auto& per_source = cells[cell_name(row, key)];
    for (SourceName source : kAllSources) {
      SourceMetrics& m = per_source[source];
      ++m.n;
      switch (row.status_of(source).status) {
        case IssueStatus::Caught: ++m.caught; break;
        case IssueStatus::Partial: ++m.partial; break;
        case IssueStatus::Missed: ++m.missed; break;
      }
      if (row.best_rigour == source) ++m.best_rigour;
    }
  }
  return cells;
}

std::vector<std::string> stratify_cells(const CorpusMatrix& matrix, StratifyKey key) {
  std::map<std::string, bool> present;
  for (const IssueRow& row : matrix.rows) {
    present[cell_name(row, key)] = true;
  }
  std::vector<std::string> cells;
  for (const std::string& cell : canonical_cells(key)) {
    if (present.count(cell)) cells.push_back(cell);
  }
  return cells;
}

DistributionSummary summarize_distribution(std::vector<double> values) {
  DistributionSummary out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const size_t lower = static_cast<size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lower);
    if (lower + 1 >= values.size()) return values.back();
    return values[lower] + frac * (values[lower + 1] - values[lower]);
  };
  out.q1 = quantile(0.25);
  out.median = quantile(0.5);
  out.q3 = quantile(0.75);
  return out;
}

PerPaperDistributions per_paper_distributions(const CorpusMatrix& matrix) {
  PerPaperDistributions out;
  size_t offset = 0;
  for (const PaperEntry& paper : matrix.papers) {
    const Slice paper_rows(matrix.rows.data() + offset, static_cast<size_t>(paper.row_count));
    offset += static_cast<size_t>(paper.row_count);

    long long salient = 0;
    for (const IssueRow& row : paper_rows) {
      if (row.hit_by(SourceName::Human)) ++salient;
    }
    if (salient == 0) {
      out.papers_with_empty_salient.push_back(paper.paper_id);
    }

    for (SourceName source : kAutomatedSources) {
      const AlignmentMetrics m = alignment_metrics(paper_rows, source);
      PaperPoint point;
      point.paper_id = paper.paper_id;
      point.salient_rows = m.human_salient_size;
      point.hits_in_salient = m.hit_in_salient;
      point.value_beyond_humans = m.value_beyond_humans;
      if (m.human_salient_size > 0) {
        point.agreement_hit = m.agreement_hit();
      }
      out.points[source].push_back(std::move(point));
    }
  }

  for (SourceName source : kAutomatedSources) {
    std::vector<double> agreements;
    std::vector<double> beyond;
    for (const PaperPoint& point : out.points[source]) {
      if (point.agreement_hit.has_value()) {
        agreements.push_back(*point.agreement_hit);
      }
      beyond.push_back(static_cast<double>(point.value_beyond_humans));
    }
    out.agreement_summary[source] = summarize_distribution(std::move(agreements));
    out.beyond_summary[source] = summarize_distribution(std::move(beyond));
  }
  return out;
}

ComplementarityCounts complementarity(const CorpusMatrix& matrix) {
  ComplementarityCounts out;
  for (SourceName source : kAllSources) out.unique_hits[source] = 0;
  for (SourceName source : kAutomatedSources) out.human_missed_hits[source] = 0;

  for (const IssueRow& row : matrix.rows) {
    int hitters = 0;
    SourceName last_hitter = SourceName::Human;
    for (SourceName source : kAllSources) {
      if (row.hit_by(source)) {
        ++hitters;
        last_hitter = source;
      }
    }
    if (hitters == 1) {
      ++out.unique_hits[last_hitter];
    }
    if (!row.hit_by(SourceName::Human)) {
      for (SourceName source : kAutomatedSources) {
        if (row.hit_by(source)) {
          ++out.human_missed_hits[source];
        }
      }
    }
  }
  return out;
}

}  // namespace issuebench
