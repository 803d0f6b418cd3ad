#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "minpair/dataio.hpp"

namespace minpair {

/// Which tokens count as positions for indexed atoms. `Tokens` keeps
/// punctuation tokens in the sequence; `Words` drops them.
enum class PositionMode { Tokens, Words };

/// Test applied to a single token.
struct WordTest {
  enum class Kind { Equals, Suffix, Prefix, Not, And, Or };
  Kind kind = Kind::Equals;
  std::vector<std::string> values;  // Equals/Suffix/Prefix: match any
  std::vector<WordTest> operands;   // Not/And/Or

  bool matches(std::string_view token) const;
};

/// Sentence-level predicate. Indices are 1-based; negative indices count
/// from the end (-1 is the last position). Out-of-range positions are false.
struct Predicate {
  enum class Kind {
    True,
    False,
    Word,           // word(i, t)
    After,          // after(anchor, k, t): some anchor has t at offset k
    Contains,       // contains(t)
    Substring,      // substring("s") on the space-joined tokens
    CountIs,        // count_is(t, n) over alphabetic tokens
    Even,           // even(t)
    Odd,            // odd(t)
    Adjacent,       // adjacent(t1, t2)
    Before,         // before(t1, t2): some t1 precedes some t2
    Repeats,        // repeats(i): the token at i also occurs elsewhere
    EndsWithAfter,  // ends_with_after(anchor, t): last anchor, final position matches t
    If,             // if(c, then[, else]); else defaults to true
    Iff,
    And,
    Or,
    Not,
  };
  Kind kind = Kind::True;
  int index = 0;
  std::string text;
  std::vector<WordTest> tests;
  std::vector<Predicate> operands;
};

enum class Comparator { Shorter, Longer, FartherRight };

struct Rule {
  enum class Kind { PerSentence, Pairwise };
  std::string paradigm;
  Kind kind = Kind::PerSentence;
  Predicate body;               // PerSentence
  Comparator comparator{};      // Pairwise
  WordTest target;              // FartherRight
  PositionMode positions = PositionMode::Tokens;
  std::size_t line = 0;
};

struct WordSet {
  std::string name;
  std::vector<std::string> members;
};

struct Rulepack {
  std::string name;
  PositionMode positions = PositionMode::Tokens;
  std::vector<WordSet> sets;
  std::vector<Rule> rules;

  const Rule* find(std::string_view paradigm) const;
};

/// Parses rulepack text. Throws ParseError with line/column on syntax
/// errors, unknown predicates, undefined or duplicate sets and duplicate
/// paradigm keys.
Rulepack parse_rulepack(std::string_view source, std::string name = "<input>");

/// Names accepted by `load_rulepack` with the "builtin:" prefix.
std::vector<std::string> builtin_rulepack_names();
std::string_view builtin_rulepack_source(std::string_view name);  // UsageError if unknown

/// "builtin:<name>" or a file path.
Rulepack load_rulepack(const std::string& spec);

enum class RuleVerdict { ChooseGood, ChooseBad, Abstain };
std::string_view to_string(RuleVerdict v);

bool holds(const Predicate& p, const std::vector<std::string>& tokens, PositionMode positions);

/// Per-sentence rules choose the satisfying member; both or neither
/// satisfying abstains. Pairwise rules abstain on ties.
RuleVerdict apply_rule(const Rule& rule, const MinimalPair& pair);

struct RuleEvalOptions {
  double abstain_credit = 0.5;
  bool strict = false;  // abstains earn 0 and uncovered paradigms score 0
};

struct ParadigmRuleResult {
  std::string phenomenon;
  std::string paradigm;
  bool covered = false;
  std::size_t pairs = 0;
  std::size_t chose_good = 0;
  std::size_t chose_bad = 0;
  std::size_t abstained = 0;
  double accuracy = 0.0;  // percent; NaN for uncovered paradigms unless strict
};

struct RuleReport {
  std::string rulepack;
  RuleEvalOptions options;
  std::vector<ParadigmRuleResult> paradigms;  // first-appearance order
  std::vector<std::string> uncovered;
  double macro_average = 0.0;  // over paradigms with a defined accuracy; NaN when none
};

RuleReport eval_rulepack(const Rulepack& pack, const std::vector<MinimalPair>& pairs,
                         const RuleEvalOptions& options = {});

/// phenomenon, paradigm, pairs, chose_good, chose_bad, abstained, accuracy.
std::string rule_report_tsv(const RuleReport& report);

}  // namespace minpair
