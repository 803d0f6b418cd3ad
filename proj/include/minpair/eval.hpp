#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minpair/dataio.hpp"
#include "minpair/diagnostics.hpp"
#include "minpair/ngram.hpp"
#include "minpair/postag.hpp"
#include "minpair/rulekit.hpp"
#include "minpair/scores.hpp"

namespace minpair {

enum class Verdict { Correct, Incorrect, Tie };
std::string_view to_string(Verdict v);

enum class TiePolicy { Half, Zero };
std::string_view to_string(TiePolicy p);
TiePolicy parse_tie_policy(std::string_view s);

enum class ScorerKind { NgramLL, Slor, Rule, ExternalScores, HumanZ, Oracle };
std::string_view to_string(ScorerKind k);

/// A named way of judging minimal pairs. Score-based scorers compare
/// sentence scores; rule scorers delegate to a rulepack; oracle scorers
/// combine components. A verdict of nullopt means the pair cannot be judged
/// (a score is missing or the paradigm has no rule).
class ScorerHandle {
 public:
  using ScoreFn = std::function<std::optional<double>(const Sentence&)>;

  const std::string& id() const noexcept { return id_; }
  ScorerKind kind() const noexcept { return kind_; }
  const std::string& binding() const noexcept { return binding_; }

  /// Score of one sentence, for score-based scorers.
  std::optional<double> score(const Sentence& s) const;
  bool score_based() const noexcept { return static_cast<bool>(score_); }

  std::optional<Verdict> judge(const MinimalPair& pair) const;

  static ScorerHandle from_function(std::string id, ScorerKind kind, ScoreFn fn, std::string binding = "");
  static ScorerHandle ngram(std::string id, std::shared_ptr<const NGramModel> model, bool use_slor,
                            std::shared_ptr<const TagModel> tagger = nullptr, std::string binding = "");
  static ScorerHandle table(std::string id, ScorerKind kind, std::shared_ptr<const ScoreTable> table,
                            std::string table_scorer_id, std::string binding = "");
  static ScorerHandle rules(std::string id, std::shared_ptr<const Rulepack> pack);
  /// Pair-level oracle: correct if any component is correct, else tie if
  /// any component ties, else incorrect. Missing if any component is
  /// missing. Requires at least two components.
  static ScorerHandle oracle(std::string id, std::vector<ScorerHandle> components);

 private:
  std::string id_;
  ScorerKind kind_ = ScorerKind::ExternalScores;
  std::string binding_;
  ScoreFn score_;
  std::shared_ptr<const Rulepack> rules_;
  std::vector<ScorerHandle> components_;
};

/// correct iff score(good) > score(bad); tie iff equal.
Verdict compare_scores(double good, double bad);

/// Verdict of one scorer on one pair; nullopt when a score is missing.
std::optional<Verdict> forced_choice(const ScorerHandle& scorer, const MinimalPair& pair);

/// Combines component verdicts into a pair-level oracle verdict.
Verdict oracle(const std::vector<Verdict>& components);
std::optional<Verdict> oracle(const std::vector<ScorerHandle>& scorers, const MinimalPair& pair);

struct Tally {
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t ties = 0;
  std::size_t missing = 0;

  std::size_t evaluated() const noexcept { return correct + incorrect + ties; }
  void add(std::optional<Verdict> v);
  /// Percent accuracy over evaluated pairs; NaN when none were evaluated.
  double accuracy(TiePolicy policy) const;
};

Tally tally(const ScorerHandle& scorer, const std::vector<MinimalPair>& pairs);

/// Percent accuracy. Throws UsageError on an empty pair list. Pairs the
/// scorer cannot judge are excluded from the denominator; their count is
/// reported through `diag` when given.
double accuracy(const ScorerHandle& scorer, const std::vector<MinimalPair>& pairs,
                TiePolicy policy = TiePolicy::Half, Diagnostics* diag = nullptr);

// ---------------------------------------------------------------------------
// Summary report

struct SummaryOptions {
  TiePolicy tie_policy = TiePolicy::Half;
  std::string reference;                       // scorer id, optional
  std::vector<std::string> oracle_components;  // adds an oracle_pair column when ≥ 2
  std::vector<std::string> either_components;  // either_paradigm count when ≥ 1
  std::string dataset_hash;
  bool keep_verdicts = true;
};

struct Cell {
  Tally tally;
  double accuracy = 0.0;  // NaN when nothing was evaluated
};

struct ParadigmRow {
  std::string phenomenon;
  std::string paradigm;
  std::size_t pairs = 0;
  std::vector<Cell> cells;  // one per EvalReport::scorers entry
};

struct PhenomenonRow {
  std::string phenomenon;
  std::size_t paradigms = 0;
  std::vector<double> averages;
};

struct PairVerdicts {
  std::string pair_id;
  std::string paradigm;
  std::vector<std::optional<Verdict>> verdicts;
};

struct EvalReport {
  std::vector<std::string> scorers;  // column order; oracle column last when present
  std::vector<std::string> kinds;
  TiePolicy tie_policy = TiePolicy::Half;
  std::string reference;
  std::string dataset_hash;
  std::vector<ParadigmRow> paradigms;  // first-appearance order
  std::vector<PhenomenonRow> phenomena;
  std::vector<double> macro;                // per scorer, mean over paradigms
  std::vector<std::size_t> missing;         // per scorer, pairs excluded
  std::vector<std::size_t> ge_reference;    // per scorer; paradigms with accuracy ≥ reference
  std::vector<std::string> either_components;
  std::size_t either_paradigm = 0;          // paradigms where any either component ≥ reference
  std::vector<PairVerdicts> verdicts;

  std::size_t column(std::string_view scorer_id) const;  // UsageError if absent
};

/// Throws UsageError on an empty pair list, duplicate scorer ids or an
/// unknown reference/oracle/either scorer id.
EvalReport summarize(const std::vector<ScorerHandle>& scorers, const std::vector<MinimalPair>& pairs,
                     const SummaryOptions& options = {});

std::string report_tsv(const EvalReport& report);
std::string report_markdown(const EvalReport& report);
std::string report_json(const EvalReport& report);
std::string verdicts_tsv(const EvalReport& report);

}  // namespace minpair
