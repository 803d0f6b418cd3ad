#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "minpair/error.hpp"
#include "minpair/eval.hpp"
#include "minpair/text.hpp"

using namespace minpair;

namespace {

MinimalPair pair_of(const std::string& paradigm, int i, const std::string& phenomenon = "ph") {
  MinimalPair p;
  p.id = paradigm + "." + std::to_string(i);
  p.paradigm = paradigm;
  p.phenomenon = phenomenon;
  p.good = make_sentence(p.id + ".good", "good " + std::to_string(i));
  p.bad = make_sentence(p.id + ".bad", "bad " + std::to_string(i));
  return p;
}

// Scorer whose scores come from a map; absent ids are missing.
ScorerHandle map_scorer(const std::string& id, std::map<std::string, double> scores) {
  auto shared = std::make_shared<std::map<std::string, double>>(std::move(scores));
  return ScorerHandle::from_function(id, ScorerKind::ExternalScores, [shared](const Sentence& s) -> std::optional<double> {
    auto it = shared->find(s.id);
    if (it == shared->end()) return std::nullopt;
    return it->second;
  });
}

// The first `correct` pairs are judged correct, the rest incorrect.
void assign(std::map<std::string, double>& scores, const std::vector<MinimalPair>& pairs, std::size_t correct) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    scores[pairs[i].good.id] = i < correct ? 1.0 : 0.0;
    scores[pairs[i].bad.id] = i < correct ? 0.0 : 1.0;
  }
}

struct ZorroRow {
  const char* paradigm;
  double babyberta, word, tag, oracle, rule;
};

// Reference Zorro accuracies: BabyBERTa, 5-gram word/tag/oracle, simple rule.
const std::vector<ZorroRow> kZorroTable = {
    {"across_rel_clause", 64.85, 50.95, 46.35, 68.95, 96.20},
    {"in_simple_question", 92.35, 61.15, 90.9, 93.9, 98.30},
    {"in_question_with_aux", 90.85, 59, 80.15, 90.9, 98.05},
    {"across_prep_phrase", 72.85, 50, 50, 62.6, 98.40},
    {"between_neighbors", 91.3, 83.05, 49.85, 88.6, 98.60},
    {"across_1_adjective", 89.85, 50.45, 50.05, 75.05, 97.20},
    {"wh_question_object", 98.75, 42.8, 100, 100, 100},
    {"wh_question_subject", 75.7, 88.3, 76.55, 97.1, 100},
    {"coord_struct_constr", 97.05, 43.35, 55.6, 83.85, 100},
    {"adjunct_island", 56.15, 66.1, 58.8, 83.85, 100},
    {"existential_there", 92.9, 80.25, 38.4, 89.55, 100},
    {"superlative", 64.55, 45.1, 82, 96.05, 100},
    {"only_npi_licensor", 74.1, 79.4, 3.7, 79.4, 100},
    {"matrix_question", 65.25, 47.5, 28.65, 58, 100},
    {"swapped_arguments", 91, 92.15, 81.7, 98.85, 100},
    {"transitive", 60.05, 64.15, 32.65, 78.6, 58.05},
    {"dropped_argument", 79.9, 85.05, 83.6, 95.75, 100},
    {"verb", 69.65, 62.9, 93.6, 96.35, 88.40},
    {"pronoun_gender", 51.75, 49.15, 1.95, 50.95, 52.75},
    {"n_bar", 55.3, 66.6, 63.6, 89.9, 100},
    {"principle_a", 89.4, 45.9, 3.6, 47.75, 100},
    {"subjective_pronoun", 94.7, 99.55, 97.95, 100, 100},
    {"local_attractor_in_question_with_aux", 96.65, 55.65, 95, 99.05, 100},
};

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("forced choice verdicts") {
  CHECK(compare_scores(-10.2, -12.4) == Verdict::Correct);
  CHECK(compare_scores(-3.0, -3.0) == Verdict::Tie);
  CHECK(compare_scores(-12.4, -10.2) == Verdict::Incorrect);
}

TEST_CASE("pair-level oracle") {
  CHECK(oracle(std::vector<Verdict>{Verdict::Correct, Verdict::Incorrect}) == Verdict::Correct);
  CHECK(oracle(std::vector<Verdict>{Verdict::Incorrect, Verdict::Incorrect}) == Verdict::Incorrect);
  CHECK(oracle(std::vector<Verdict>{Verdict::Tie, Verdict::Incorrect}) == Verdict::Tie);
  CHECK(oracle(std::vector<Verdict>{Verdict::Tie, Verdict::Correct}) == Verdict::Correct);

  const auto p = pair_of("x", 0);
  auto a = map_scorer("a", {{p.good.id, 1}, {p.bad.id, 0}});
  auto b = map_scorer("b", {{p.good.id, 0}});
  CHECK(*oracle({a, a}, p) == Verdict::Correct);
  CHECK_FALSE(oracle({a, b}, p).has_value());
  CHECK_THROWS_AS(ScorerHandle::oracle("o", {a}), UsageError);
}

TEST_CASE("rule scorer maps rule verdicts to forced-choice verdicts") {
  auto pack = std::make_shared<const Rulepack>(parse_rulepack("rule x: contains(\"good\")\nrule y: true\n"));
  const auto rules = ScorerHandle::rules("rule", pack);
  auto p = pair_of("x", 1);
  CHECK(*rules.judge(p) == Verdict::Correct);
  std::swap(p.good, p.bad);
  CHECK(*rules.judge(p) == Verdict::Incorrect);
  p.paradigm = "y";
  CHECK(*rules.judge(p) == Verdict::Tie);
  p.paradigm = "z";
  CHECK_FALSE(rules.judge(p).has_value());
}

TEST_CASE("accuracy bounds and tie policy") {
  std::vector<MinimalPair> pairs;
  for (int i = 0; i < 4; ++i) pairs.push_back(pair_of("x", i));
  std::map<std::string, double> all_correct, all_tie;
  assign(all_correct, pairs, 4);
  for (const auto& p : pairs) all_tie[p.good.id] = all_tie[p.bad.id] = -2.0;
  CHECK(accuracy(map_scorer("c", all_correct), pairs) == 100.0);
  CHECK(accuracy(map_scorer("t", all_tie), pairs) == 50.0);
  CHECK(accuracy(map_scorer("t", all_tie), pairs, TiePolicy::Zero) == 0.0);
  CHECK_THROWS_AS(accuracy(map_scorer("c", all_correct), {}), UsageError);
}

TEST_CASE("missing scores are excluded and reported") {
  std::vector<MinimalPair> pairs{pair_of("x", 0), pair_of("x", 1)};
  std::map<std::string, double> s{{pairs[0].good.id, 1}, {pairs[0].bad.id, 0}};
  Diagnostics diag;
  CHECK(accuracy(map_scorer("a", s), pairs, TiePolicy::Half, &diag) == 100.0);
  CHECK(diag.warnings().size() == 1);
  const auto t = tally(map_scorer("a", s), pairs);
  CHECK(t.missing == 1);
  CHECK(t.evaluated() == 1);
}

TEST_CASE("any scorer on a single pair scores 0, 50 or 100") {
  const auto p = pair_of("x", 0);
  for (auto [g, b] : std::vector<std::pair<double, double>>{{1, 0}, {0, 0}, {0, 1}}) {
    const double a = accuracy(map_scorer("s", {{p.good.id, g}, {p.bad.id, b}}), {p});
    CHECK((a == 0.0 || a == 50.0 || a == 100.0));
  }
}

TEST_CASE("swapping members maps accuracy a to 100 - a") {
  std::mt19937 rng(3);
  std::vector<MinimalPair> pairs;
  std::map<std::string, double> s;
  for (int i = 0; i < 200; ++i) {
    pairs.push_back(pair_of("x", i));
    s[pairs.back().good.id] = static_cast<double>(rng() % 1000);
    s[pairs.back().bad.id] = static_cast<double>(rng() % 1000) + 0.5;
  }
  const auto scorer = map_scorer("s", s);
  const double a = accuracy(scorer, pairs, TiePolicy::Zero);
  for (auto& p : pairs) std::swap(p.good, p.bad);
  CHECK(accuracy(scorer, pairs, TiePolicy::Zero) == doctest::Approx(100.0 - a));
}

TEST_CASE("verdicts are invariant under strictly increasing transforms") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-60.0, -1.0);
  std::vector<MinimalPair> pairs;
  std::map<std::string, double> raw, cubed, expd;
  for (int i = 0; i < 500; ++i) {
    pairs.push_back(pair_of("x", i));
    for (const auto* s : {&pairs.back().good, &pairs.back().bad}) {
      const double v = i % 10 == 0 ? -7.0 : u(rng);
      raw[s->id] = v;
      cubed[s->id] = v * v * v + 3.0 * v;
      expd[s->id] = std::exp(v / 10.0) * 4.0;
    }
  }
  const auto a = map_scorer("a", raw), b = map_scorer("b", cubed), c = map_scorer("c", expd);
  for (const auto& p : pairs) {
    CHECK(a.judge(p) == b.judge(p));
    CHECK(a.judge(p) == c.judge(p));
  }
}

TEST_CASE("single scorer, single paradigm gives a one-row report") {
  std::vector<MinimalPair> pairs{pair_of("x", 0), pair_of("x", 1)};
  std::map<std::string, double> s;
  assign(s, pairs, 1);
  const auto rep = summarize({map_scorer("a", s)}, pairs);
  REQUIRE(rep.paradigms.size() == 1);
  CHECK(rep.scorers == std::vector<std::string>{"a"});
  CHECK(rep.paradigms[0].cells[0].accuracy == 50.0);
  CHECK(rep.macro[0] == 50.0);
  CHECK(rep.phenomena.size() == 1);
}

TEST_CASE("summary checks its arguments") {
  std::vector<MinimalPair> pairs{pair_of("x", 0)};
  const auto a = map_scorer("a", {});
  CHECK_THROWS_AS(summarize({a}, {}), UsageError);
  CHECK_THROWS_AS(summarize({a, a}, pairs), UsageError);
  SummaryOptions opt;
  opt.reference = "nobody";
  CHECK_THROWS_AS(summarize({a}, pairs, opt), UsageError);
}

TEST_CASE("reference Zorro accuracies through the summary") {
  // 2000 pairs per paradigm so each printed accuracy is an exact count.
  std::vector<MinimalPair> pairs;
  std::map<std::string, double> bb, word, tag, orc, rule;
  for (const auto& row : kZorroTable) {
    std::vector<MinimalPair> local;
    for (int i = 0; i < 2000; ++i) local.push_back(pair_of(row.paradigm, i));
    auto n = [](double acc) { return static_cast<std::size_t>(std::llround(acc * 20.0)); };
    assign(bb, local, n(row.babyberta));
    assign(word, local, n(row.word));
    assign(tag, local, n(row.tag));
    assign(orc, local, n(row.oracle));
    assign(rule, local, n(row.rule));
    pairs.insert(pairs.end(), local.begin(), local.end());
  }
  SummaryOptions opt;
  opt.reference = "babyberta";
  opt.either_components = {"word", "tag"};
  const auto rep = summarize({map_scorer("babyberta", bb), map_scorer("word", word), map_scorer("tag", tag),
                              map_scorer("oracle", orc), map_scorer("rule", rule)},
                             pairs, opt);
  REQUIRE(rep.paradigms.size() == 23);
  CHECK(rep.macro[rep.column("babyberta")] == doctest::Approx(78.91).epsilon(0.0001));
  CHECK(rep.ge_reference[rep.column("word")] == 8);
  CHECK(rep.ge_reference[rep.column("tag")] == 8);
  CHECK(rep.either_paradigm == 11);
  CHECK(rep.ge_reference[rep.column("rule")] == 22);
  // The printed oracle count is 14/23; the rows themselves give 15.
  CHECK(rep.ge_reference[rep.column("oracle")] == 15);
  for (std::size_t c = 0; c < rep.scorers.size(); ++c) {
    for (std::size_t r = 0; r < rep.paradigms.size(); ++r) {
      CHECK(rep.paradigms[r].cells[c].tally.ties == 0);
    }
  }
}

TEST_CASE("oracle column dominates its components on every paradigm") {
  std::mt19937 rng(9);
  std::vector<MinimalPair> pairs;
  std::map<std::string, double> a, b;
  for (int p = 0; p < 12; ++p) {
    for (int i = 0; i < 50; ++i) {
      pairs.push_back(pair_of("p" + std::to_string(p), i));
      for (auto* m : {&a, &b}) {
        (*m)[pairs.back().good.id] = static_cast<double>(rng() % 5);
        (*m)[pairs.back().bad.id] = static_cast<double>(rng() % 5);
      }
    }
  }
  SummaryOptions opt;
  opt.oracle_components = {"a", "b"};
  const auto rep = summarize({map_scorer("a", a), map_scorer("b", b)}, pairs, opt);
  const auto o = rep.column("oracle_pair");
  for (const auto& row : rep.paradigms) {
    CHECK(row.cells[o].accuracy >= std::max(row.cells[0].accuracy, row.cells[1].accuracy));
  }
}

TEST_CASE("report renderings are deterministic and well-formed") {
  std::vector<MinimalPair> pairs{pair_of("x", 0, "p1"), pair_of("y", 1, "p2")};
  std::map<std::string, double> s{{pairs[0].good.id, 1}, {pairs[0].bad.id, 0}};
  SummaryOptions opt;
  opt.dataset_hash = "abc";
  const auto rep = summarize({map_scorer("a", s)}, pairs, opt);
  CHECK(report_tsv(rep) == report_tsv(summarize({map_scorer("a", s)}, pairs, opt)));
  CHECK(report_tsv(rep).rfind("# tie_policy=half", 0) == 0);
  const auto j = nlohmann::json::parse(report_json(rep));
  CHECK(j["dataset_sha256"] == "abc");
  CHECK(report_markdown(rep).find("`x`") != std::string::npos);
  CHECK(verdicts_tsv(rep).find("missing") != std::string::npos);
  CHECK(rep.missing[0] == 1);
}

}  // TEST_SUITE
