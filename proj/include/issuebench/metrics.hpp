#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "issuebench/matrix.hpp"

namespace issuebench {

/// Status tallies and the derived fractions for one source over one slice.
/// Counts always satisfy caught + partial + missed = n, and
/// strict_recall <= weighted_coverage <= hit_recall.
struct SourceMetrics {
  long long n = 0;
  long long caught = 0;
  long long partial = 0;
  long long missed = 0;
  long long best_rigour = 0;

  double strict_recall() const { return n ? double(caught) / double(n) : 0.0; }
  double hit_recall() const { return n ? double(caught + partial) / double(n) : 0.0; }
  double weighted_coverage() const { return n ? (double(caught) + 0.5 * double(partial)) / double(n) : 0.0; }
  double best_rigour_share() const { return n ? double(best_rigour) / double(n) : 0.0; }

  // exact one-decimal percent strings (round half away from zero)
  std::string strict_pct() const { return format_percent(caught, n); }
  std::string hit_pct() const { return format_percent(caught + partial, n); }
  std::string weighted_pct() const { return format_percent(2 * caught + partial, 2 * n); }
  std::string best_rigour_pct() const { return format_percent(best_rigour, n); }
};

/// How well one source tracks the human-salient slice H.
struct AlignmentMetrics {
  long long human_salient_size = 0;  // |H|
  long long caught_in_salient = 0;
  long long hit_in_salient = 0;
  long long value_beyond_humans = 0;  // D: human-missed rows the source still hit

  double agreement_strict() const {
    return human_salient_size ? double(caught_in_salient) / double(human_salient_size) : 0.0;
  }
  double agreement_hit() const {
    return human_salient_size ? double(hit_in_salient) / double(human_salient_size) : 0.0;
  }
};

struct ComplementarityCounts {
  std::map<SourceName, long long> unique_hits;        // rows hit by exactly this source
  std::map<SourceName, long long> human_missed_hits;  // automated sources only; equals D
};

using Slice = std::span<const IssueRow>;

// --- per-source recall metrics over a slice ---

double strict_recall(Slice slice, SourceName source);    // #Caught / N
double hit_recall(Slice slice, SourceName source);       // (#Caught + #Partial) / N
double weighted_coverage(Slice slice, SourceName source);  // (#Caught + 0.5 #Partial) / N
double best_rigour_share(Slice slice, SourceName source);  // #{best_rigour = source} / N

SourceMetrics tally_source(Slice slice, SourceName source);

// --- human-salient analysis ---

/// Indices of rows the Human source caught or partially caught.
std::vector<size_t> human_salient_set(Slice slice);

/// (strict, hit) recall restricted to H. Throws EmptySliceError when |H|=0.
std::pair<double, double> agreement_with_humans(Slice slice, SourceName source);

/// Count of human-missed rows the source still hit.
long long value_beyond_humans(Slice slice, SourceName source);

AlignmentMetrics alignment_metrics(Slice slice, SourceName source);

// --- stratification ---

enum class StratifyKey { Severity, Stratum, Taxonomy };

/// Metrics per cell of a partition of the matrix; cell Ns sum to the
/// matrix N for every source.
std::map<std::string, std::map<SourceName, SourceMetrics>> stratify(const CorpusMatrix& matrix,
                                                                    StratifyKey key);

/// Deterministic cell order for a key (severities, strata and taxonomy
/// labels in their canonical enum order).
std::vector<std::string> stratify_cells(const CorpusMatrix& matrix, StratifyKey key);

// --- per-paper distributions ---

struct PaperPoint {
  std::string paper_id;
  long long salient_rows = 0;                 // |H| within this paper
  long long hits_in_salient = 0;
  std::optional<double> agreement_hit;        // absent when the paper's H is empty
  long long value_beyond_humans = 0;
};

struct DistributionSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

struct PerPaperDistributions {
  std::map<SourceName, std::vector<PaperPoint>> points;  // automated sources
  std::map<SourceName, DistributionSummary> agreement_summary;
  std::map<SourceName, DistributionSummary> beyond_summary;
  std::vector<std::string> papers_with_empty_salient;
};

PerPaperDistributions per_paper_distributions(const CorpusMatrix& matrix);

// --- complementarity ---

ComplementarityCounts complementarity(const CorpusMatrix& matrix);

/// Median and quartiles (linear interpolation between order statistics).
DistributionSummary summarize_distribution(std::vector<double> values);

}  // namespace issuebench
