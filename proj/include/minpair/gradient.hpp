#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "minpair/dataio.hpp"
#include "minpair/diagnostics.hpp"
#include "minpair/eval.hpp"
#include "minpair/scores.hpp"

namespace minpair {

enum class StdConvention { Population, Sample };
std::string_view to_string(StdConvention c);
StdConvention parse_std_convention(std::string_view s);

enum class CorrelationMethod { Pearson, Spearman };
std::string_view to_string(CorrelationMethod m);
CorrelationMethod parse_correlation_method(std::string_view s);

double mean(const std::vector<double>& xs);
/// Throws NumericError on an empty input (or fewer than two values for the
/// sample convention).
double stddev(const std::vector<double>& xs, StdConvention c = StdConvention::Population);

/// (x - mean) / std over all values. Throws NumericError "zero variance"
/// when every value is equal, and on an empty input.
std::map<std::string, double> zscore(const std::map<std::string, double>& raw,
                                     StdConvention c = StdConvention::Population);

/// Rows are scorers, columns sentences; NaN marks an absent cell.
struct JudgmentMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> cells;

  std::size_t row(std::string_view scorer_id) const;  // UsageError if absent
};

/// Builds a matrix over `sentence_ids` with one row per scorer in `scorers`
/// (all table scorers when empty). Scores for other sentences are ignored.
JudgmentMatrix build_matrix(const ScoreTable& table, const std::vector<std::string>& sentence_ids,
                            const std::vector<std::string>& scorers = {});

/// Z-scores each row over its present cells.
JudgmentMatrix zscore_rows(const JudgmentMatrix& m, StdConvention c = StdConvention::Population);

/// Per-type mean and std of each scorer's eight judgments. NaN when the
/// scorer lacks a cell for that type.
struct TypeStats {
  std::vector<std::string> scorers;
  std::vector<std::string> type_ids;
  std::vector<std::vector<double>> means;  // [scorer][type]
  std::vector<std::vector<double>> stds;
};

TypeStats type_stats(const JudgmentMatrix& m, const std::vector<SentenceType>& types,
                     StdConvention c = StdConvention::Population);

struct Variability {
  std::string scorer;
  double avg_within_type_std = 0.0;
  std::size_t types_used = 0;
  std::size_t types_excluded = 0;
};

/// Mean over types of the within-type std, per scorer. Types with missing
/// cells are excluded for that scorer and reported through `diag`.
std::vector<Variability> type_variability(const JudgmentMatrix& zscored, const std::vector<SentenceType>& types,
                                          StdConvention c = StdConvention::Population,
                                          Diagnostics* diag = nullptr);

std::string variability_tsv(const std::vector<Variability>& v);

enum class TypeStatistic { Means, Stds };

/// Square matrix over scorers; NaN marks an undefined cell.
struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> cells;
};

double pearson(const std::vector<double>& x, const std::vector<double>& y);  // NaN on zero variance
double spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Correlates per-type statistic vectors restricted to `inclusion` (all
/// types with complete stats when empty). Throws UsageError when the
/// inclusion list names an unknown type or a type lacking complete stats
/// for some scorer. Rows with zero variance are undefined off the
/// diagonal and on it.
CorrelationMatrix correlation_matrix(const TypeStats& stats, TypeStatistic statistic,
                                     const std::vector<std::string>& inclusion = {},
                                     CorrelationMethod method = CorrelationMethod::Pearson);

std::string correlation_tsv(const CorrelationMatrix& m);

/// One record per LI-Adger sentence with scorer id "human" and log base
/// "none".
std::vector<ScoreRecord> human_scores(const std::vector<SentenceType>& types);

struct AccuracyRow {
  std::string scorer;
  double accuracy = 0.0;
  std::size_t pairs = 0;
  std::size_t missing = 0;
};

/// Forced-choice accuracy of each scorer on the LI-Adger pairs.
std::vector<AccuracyRow> li_adger_accuracy(const std::vector<ScorerHandle>& scorers,
                                           const std::vector<MinimalPair>& pairs,
                                           TiePolicy policy = TiePolicy::Half);

/// Bar-chart data: scorer, accuracy, pairs, missing.
std::string accuracy_bars_tsv(const std::vector<AccuracyRow>& rows);

/// Reads a type-id inclusion list (one id per line, '#' comments).
std::vector<std::string> read_inclusion_list(const std::filesystem::path& path);

}  // namespace minpair
