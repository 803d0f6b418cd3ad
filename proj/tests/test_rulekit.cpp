#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "minpair/error.hpp"
#include "minpair/rulekit.hpp"
#include "minpair/text.hpp"

using namespace minpair;

namespace {

MinimalPair pair_of(const std::string& paradigm, const std::string& good, const std::string& bad) {
  MinimalPair p;
  p.id = paradigm + ".0";
  p.paradigm = paradigm;
  p.phenomenon = paradigm.substr(0, paradigm.find('-'));
  p.good = make_sentence(p.id + ".good", good);
  p.bad = make_sentence(p.id + ".bad", bad);
  return p;
}

RuleVerdict verdict(const Rulepack& pack, const MinimalPair& p) {
  const Rule* r = pack.find(p.paradigm);
  REQUIRE(r != nullptr);
  return apply_rule(*r, p);
}

bool holds_text(const std::string& pred, const std::string& text, PositionMode m = PositionMode::Tokens) {
  const auto pack = parse_rulepack("rule x: " + pred);
  return holds(pack.rules.at(0).body, tokenize(text), m);
}

std::set<std::string> keys(const Rulepack& pack) {
  std::set<std::string> out;
  for (const auto& r : pack.rules) out.insert(r.paradigm);
  return out;
}

std::set<std::string> pairwise_keys(const Rulepack& pack) {
  std::set<std::string> out;
  for (const auto& r : pack.rules) {
    if (r.kind == Rule::Kind::Pairwise) out.insert(r.paradigm);
  }
  return out;
}

const std::set<std::string> kZorroParadigms = {
    "agreement_subject_verb-across_relative_clause",
    "agreement_subject_verb-in_simple_question",
    "agreement_subject_verb-in_question_with_aux",
    "agreement_subject_verb-across_prepositional_phrase",
    "agreement_determiner_noun-between_neighbors",
    "agreement_determiner_noun-across_1_adjective",
    "filler-gap-wh_question_object",
    "filler-gap-wh_question_subject",
    "island-effects-coordinate_structure_constraint",
    "island-effects-adjunct_island",
    "quantifiers-existential_there",
    "quantifiers-superlative",
    "npi_licensing-only_npi_licensor",
    "npi_licensing-matrix_question",
    "argument_structure-swapped_arguments",
    "argument_structure-transitive",
    "argument_structure-dropped_argument",
    "irregular-verb",
    "anaphor_agreement-pronoun_gender",
    "ellipsis-n_bar",
    "binding-principle_a",
    "case-subjective_pronoun",
    "local_attractor-in_question_with_aux",
};

const std::set<std::string> kBlimpParadigms = {
    "adjunct_island", "anaphor_gender_agreement", "anaphor_number_agreement", "animate_subject_passive",
    "animate_subject_trans", "causative", "complex_NP_island",
    "coordinate_structure_constraint_complex_left_branch", "coordinate_structure_constraint_object_extraction",
    "determiner_noun_agreement_1", "determiner_noun_agreement_2", "determiner_noun_agreement_irregular_1",
    "determiner_noun_agreement_irregular_2", "determiner_noun_agreement_with_adj_2",
    "determiner_noun_agreement_with_adj_irregular_1", "determiner_noun_agreement_with_adj_irregular_2",
    "determiner_noun_agreement_with_adjective_1", "distractor_agreement_relational_noun",
    "distractor_agreement_relative_clause", "drop_argument", "ellipsis_n_bar_1", "ellipsis_n_bar_2",
    "existential_there_object_raising", "existential_there_quantifiers_1", "existential_there_quantifiers_2",
    "existential_there_subject_raising", "expletive_it_object_raising", "inchoative", "intransitive",
    "irregular_past_participle_adjectives", "irregular_past_participle_verbs",
    "irregular_plural_subject_verb_agreement_1", "irregular_plural_subject_verb_agreement_2",
    "left_branch_island_echo_question", "left_branch_island_simple_question",
    "matrix_question_npi_licensor_present", "npi_present_1", "npi_present_2", "only_npi_licensor_present",
    "only_npi_scope", "passive_1", "passive_2", "principle_A_c_command", "principle_A_case_1",
    "principle_A_case_2", "principle_A_domain_1", "principle_A_domain_2", "principle_A_domain_3",
    "principle_A_reconstruction", "regular_plural_subject_verb_agreement_1",
    "regular_plural_subject_verb_agreement_2", "sentential_negation_npi_licensor_present",
    "sentential_negation_npi_scope", "sentential_subject_island", "superlative_quantifiers_1",
    "superlative_quantifiers_2", "tough_vs_raising_1", "tough_vs_raising_2", "transitive", "wh_island",
    "wh_questions_object_gap", "wh_questions_subject_gap", "wh_questions_subject_gap_long_distance",
    "wh_vs_that_no_gap", "wh_vs_that_no_gap_long_distance", "wh_vs_that_with_gap",
    "wh_vs_that_with_gap_long_distance",
};

}  // namespace

TEST_SUITE("rulekit") {

TEST_CASE("per-sentence and pairwise rule declarations") {
  const auto a = parse_rulepack(R"(rule superlative: contains_any(["more","fewer"]))");
  REQUIRE(a.rules.size() == 1);
  CHECK(a.rules[0].paradigm == "superlative");
  CHECK(a.rules[0].kind == Rule::Kind::PerSentence);
  CHECK(a.rules[0].body.kind == Predicate::Kind::Contains);

  const auto b = parse_rulepack("rule principle_A_case_1: pairwise shorter");
  REQUIRE(b.rules.size() == 1);
  CHECK(b.rules[0].kind == Rule::Kind::Pairwise);
  CHECK(b.rules[0].comparator == Comparator::Shorter);
}

TEST_CASE("undefined set is a parse error with a position") {
  try {
    parse_rulepack("# header\nrule x: contains(foo_set)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
    CHECK(std::string(e.what()).find("undefined set 'foo_set'") != std::string::npos);
  }
}

TEST_CASE("malformed rulepacks are rejected") {
  CHECK_THROWS_AS(parse_rulepack("rule x: contains(\"a\")\nrule x: true\n"), ParseError);
  CHECK_THROWS_AS(parse_rulepack("set s = [\"a\"]\nset s = [\"b\"]\n"), ParseError);
  CHECK_THROWS_AS(parse_rulepack("rule x: frobnicate(\"a\")"), ParseError);
  CHECK_THROWS_AS(parse_rulepack("rule x: word(0, \"a\")"), ParseError);
  CHECK_THROWS_AS(parse_rulepack("rule x: word(1)"), ParseError);
  CHECK_THROWS_AS(parse_rulepack("rule x: contains(\"a\""), ParseError);
  CHECK_THROWS_AS(parse_rulepack("rule x: pairwise sideways"), ParseError);
  CHECK_THROWS_AS(parse_rulepack("option positions = letters"), ParseError);
  CHECK_THROWS_AS(parse_rulepack("rule x: contains(\"a)"), ParseError);
}

TEST_CASE("sets may build on earlier sets") {
  const auto p = parse_rulepack("set a = [\"x\"]\nset b = [a, \"y\"]\nrule r: contains(b)\n");
  CHECK(holds(p.rules[0].body, {"q", "y"}, PositionMode::Tokens));
  CHECK(holds(p.rules[0].body, {"x"}, PositionMode::Tokens));
  CHECK_FALSE(holds(p.rules[0].body, {"z"}, PositionMode::Tokens));
}

TEST_CASE("predicate semantics") {
  CHECK(holds_text(R"(word(1, "the"))", "the dog runs"));
  CHECK(holds_text(R"(word(-1, "."))", "the dog runs."));
  CHECK(holds_text(R"(word(-1, "runs"))", "the dog runs.", PositionMode::Words));
  CHECK_FALSE(holds_text(R"(word(9, "the"))", "the dog runs"));
  CHECK(holds_text(R"(word(2, suffix("s")))", "the dogs run"));
  CHECK(holds_text(R"(word(2, prefix("do")))", "the dogs run"));
  CHECK(holds_text(R"(word(2, not("cat")))", "the dogs run"));
  CHECK(holds_text(R"(after("the", 1, "dog"))", "see the dog"));
  CHECK_FALSE(holds_text(R"(after("the", 2, "dog"))", "see the dog"));
  CHECK(holds_text(R"(substring("dog r"))", "the dog runs"));
  CHECK(holds_text(R"(count_is(prefix("wh"), 2))", "who saw what ?"));
  CHECK_FALSE(holds_text(R"(count_is(prefix("wh"), 2))", "who saw it ?"));
  CHECK(holds_text(R"(even("a"))", "a b a"));
  CHECK(holds_text(R"(odd("a"))", "a b"));
  CHECK(holds_text(R"(adjacent("the", "dog"))", "the dog runs"));
  CHECK(holds_text(R"(before("dog", "runs"))", "the dog always runs"));
  CHECK_FALSE(holds_text(R"(before("runs", "dog"))", "the dog always runs"));
  CHECK(holds_text("repeats(1)", "the dog saw the cat"));
  CHECK(holds_text(R"(ends_with_after("the", "cat"))", "the dog saw the cat"));
  CHECK(holds_text(R"(iff(word(1, "a"), word(2, "b")))", "c d"));
  CHECK(holds_text(R"(if(word(1, "a"), word(2, "b")))", "c d"));
  CHECK_FALSE(holds_text(R"(if(word(1, "a"), word(2, "b"), false))", "c d"));
  CHECK(holds_text(R"(and(contains("a"), not(contains("z"))))", "a b"));
  CHECK(holds_text(R"(or(contains("z"), contains("b")))", "a b"));
  CHECK(holds_text("true", "x"));
  CHECK_FALSE(holds_text("false", "x"));
}

TEST_CASE("zorro adjunct island: third-last token 'the' picks the good sentence") {
  const auto pack = load_rulepack("builtin:zorro");
  const auto p = pair_of("island-effects-adjunct_island", "who should the dog see before the ball ?",
                         "who should the dog see the ball before ?");
  CHECK(verdict(pack, p) == RuleVerdict::ChooseGood);
}

TEST_CASE("zorro superlative and pronoun gender") {
  const auto pack = load_rulepack("builtin:zorro");
  CHECK(verdict(pack, pair_of("quantifiers-superlative", "no dog can see more than five toys .",
                              "no dog can see at least five toys .")) == RuleVerdict::ChooseGood);
  CHECK(verdict(pack, pair_of("anaphor_agreement-pronoun_gender", "the boy saw himself .",
                              "the girl saw himself .")) == RuleVerdict::Abstain);
}

TEST_CASE("zorro subject-verb agreement across a prepositional phrase") {
  const auto pack = load_rulepack("builtin:zorro");
  CHECK(verdict(pack, pair_of("agreement_subject_verb-across_prepositional_phrase", "the lie on the foot is flat .",
                              "the lie on the foot are flat .")) == RuleVerdict::ChooseGood);
}

TEST_CASE("pairwise comparators") {
  const auto pack = parse_rulepack(
      "rule s: pairwise shorter\nrule l: pairwise longer\nrule f: pairwise farther_right(\"and\")\n");
  CHECK(verdict(pack, pair_of("s", "he saw himself", "he saw a himself")) == RuleVerdict::ChooseGood);
  CHECK(verdict(pack, pair_of("s", "ab cd", "cd ab")) == RuleVerdict::Abstain);
  CHECK(verdict(pack, pair_of("l", "he saw himself", "he saw a himself")) == RuleVerdict::ChooseBad);
  CHECK(verdict(pack, pair_of("f", "a b and c", "a and b c")) == RuleVerdict::ChooseGood);
  CHECK(verdict(pack, pair_of("f", "a b c", "a and b c")) == RuleVerdict::ChooseBad);
  CHECK(verdict(pack, pair_of("f", "a b and c", "a b c")) == RuleVerdict::ChooseGood);
  CHECK(verdict(pack, pair_of("f", "a b c", "a c b")) == RuleVerdict::Abstain);
}

TEST_CASE("builtin rulepacks cover every paradigm") {
  const auto z = load_rulepack("builtin:zorro");
  const auto b = load_rulepack("builtin:blimp");
  CHECK(keys(z) == kZorroParadigms);
  CHECK(keys(b) == kBlimpParadigms);
  CHECK(z.positions == PositionMode::Tokens);
  CHECK(b.positions == PositionMode::Words);
  CHECK(builtin_rulepack_names() == std::vector<std::string>{"blimp", "zorro"});
  CHECK_THROWS_AS(load_rulepack("builtin:nope"), UsageError);
}

TEST_CASE("pairwise rules are exactly the starred table rows") {
  CHECK(pairwise_keys(load_rulepack("builtin:zorro")) == std::set<std::string>{"ellipsis-n_bar"});
  CHECK(pairwise_keys(load_rulepack("builtin:blimp")) ==
        std::set<std::string>{"principle_A_case_1", "principle_A_case_2", "principle_A_domain_1",
                              "principle_A_domain_2", "irregular_past_participle_verbs",
                              "superlative_quantifiers_1", "animate_subject_trans",
                              "distractor_agreement_relational_noun",
                              "regular_plural_subject_verb_agreement_1"});
}

TEST_CASE("rulepack evaluation report") {
  const auto pack = parse_rulepack("rule a: contains(\"good\")\n");
  std::vector<MinimalPair> pairs{pair_of("a", "good one", "bad one"), pair_of("a", "good one", "good two"),
                                 pair_of("a", "bad one", "good two"), pair_of("b", "x", "y")};
  const auto r = eval_rulepack(pack, pairs);
  REQUIRE(r.paradigms.size() == 2);
  CHECK(r.paradigms[0].chose_good == 1);
  CHECK(r.paradigms[0].chose_bad == 1);
  CHECK(r.paradigms[0].abstained == 1);
  CHECK(r.paradigms[0].accuracy == doctest::Approx(100.0 * 1.5 / 3.0));
  CHECK_FALSE(r.paradigms[1].covered);
  CHECK(std::isnan(r.paradigms[1].accuracy));
  CHECK(r.uncovered == std::vector<std::string>{"b"});
  CHECK(r.macro_average == doctest::Approx(50.0));

  RuleEvalOptions strict;
  strict.strict = true;
  const auto s = eval_rulepack(pack, pairs, strict);
  CHECK(s.paradigms[0].accuracy == doctest::Approx(100.0 / 3.0));
  CHECK(s.paradigms[1].accuracy == 0.0);
  CHECK(s.macro_average == doctest::Approx(100.0 / 6.0));

  const auto tsv = rule_report_tsv(r);
  CHECK(tsv.find("\tNA\n") != std::string::npos);
  CHECK(tsv.find("macro_average") != std::string::npos);
}

TEST_CASE("empty pair list gives an empty report") {
  const auto r = eval_rulepack(load_rulepack("builtin:zorro"), {});
  CHECK(r.paradigms.empty());
  CHECK(r.uncovered.empty());
  CHECK(std::isnan(r.macro_average));
}

}  // TEST_SUITE
