#include "minpair/eval.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace minpair {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string pct(double v) { return std::isnan(v) ? "NA" : format_fixed(v, 2); }

double mean_defined(const std::vector<double>& xs) {
  double sum = 0;
  std::size_t n = 0;
  for (double x : xs) {
    if (!std::isnan(x)) {
      sum += x;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : kNaN;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Correct: return "correct";
    case Verdict::Incorrect: return "incorrect";
    case Verdict::Tie: return "tie";
  }
  return "tie";
}

std::string_view to_string(TiePolicy p) { return p == TiePolicy::Half ? "half" : "zero"; }

TiePolicy parse_tie_policy(std::string_view s) {
  if (s == "half") return TiePolicy::Half;
  if (s == "zero") return TiePolicy::Zero;
  throw ConfigError("unknown tie policy '" + std::string(s) + "' (expected half|zero)");
}

std::string_view to_string(ScorerKind k) {
  switch (k) {
    case ScorerKind::NgramLL: return "ngram_ll";
    case ScorerKind::Slor: return "slor";
    case ScorerKind::Rule: return "rule";
    case ScorerKind::ExternalScores: return "external_scores";
    case ScorerKind::HumanZ: return "human_z";
    case ScorerKind::Oracle: return "oracle";
  }
  return "external_scores";
}

// ---------------------------------------------------------------------------

std::optional<double> ScorerHandle::score(const Sentence& s) const {
  if (!score_) throw UsageError("scorer '" + id_ + "' does not produce sentence scores");
  return score_(s);
}

std::optional<Verdict> ScorerHandle::judge(const MinimalPair& pair) const {
  if (score_) {
    const auto g = score_(pair.good);
    const auto b = score_(pair.bad);
    if (!g || !b) return std::nullopt;
    return compare_scores(*g, *b);
  }
  if (rules_) {
    const Rule* r = rules_->find(pair.paradigm);
    if (!r) return std::nullopt;
    switch (apply_rule(*r, pair)) {
      case RuleVerdict::ChooseGood: return Verdict::Correct;
      case RuleVerdict::ChooseBad: return Verdict::Incorrect;
      case RuleVerdict::Abstain: return Verdict::Tie;
    }
  }
  if (!components_.empty()) return minpair::oracle(components_, pair);
  return std::nullopt;
}

ScorerHandle ScorerHandle::from_function(std::string id, ScorerKind kind, ScoreFn fn, std::string binding) {
  ScorerHandle h;
  h.id_ = std::move(id);
  h.kind_ = kind;
  h.score_ = std::move(fn);
  h.binding_ = std::move(binding);
  return h;
}

ScorerHandle ScorerHandle::ngram(std::string id, std::shared_ptr<const NGramModel> model, bool use_slor,
                                 std::shared_ptr<const TagModel> tagger, std::string binding) {
  if (!model) throw UsageError("n-gram scorer without a model");
  if (model->level() == Level::Tag && !tagger) {
    throw ConfigError("scorer '" + id + "': a tag-level model needs a tagger");
  }
  auto fn = [model, use_slor, tagger](const Sentence& s) -> std::optional<double> {
    if (model->level() == Level::Tag && (s.tags.size() != s.tokens.size() || s.tags.empty())) {
      const Sentence tagged = tag(*tagger, s);
      return use_slor ? slor(*model, tagged) : logprob(*model, tagged);
    }
    return use_slor ? slor(*model, s) : logprob(*model, s);
  };
  return from_function(std::move(id), use_slor ? ScorerKind::Slor : ScorerKind::NgramLL, fn, std::move(binding));
}

ScorerHandle ScorerHandle::table(std::string id, ScorerKind kind, std::shared_ptr<const ScoreTable> table,
                                 std::string table_scorer_id, std::string binding) {
  if (!table || !table->has_scorer(table_scorer_id)) {
    throw UsageError("no scores for scorer '" + table_scorer_id + "'");
  }
  auto fn = [table, table_scorer_id](const Sentence& s) { return table->lookup(table_scorer_id, s.id); };
  return from_function(std::move(id), kind, fn, std::move(binding));
}

ScorerHandle ScorerHandle::rules(std::string id, std::shared_ptr<const Rulepack> pack) {
  if (!pack) throw UsageError("rule scorer without a rulepack");
  ScorerHandle h;
  h.id_ = std::move(id);
  h.kind_ = ScorerKind::Rule;
  h.binding_ = pack->name;
  h.rules_ = std::move(pack);
  return h;
}

ScorerHandle ScorerHandle::oracle(std::string id, std::vector<ScorerHandle> components) {
  if (components.size() < 2) throw UsageError("an oracle needs at least two component scorers");
  ScorerHandle h;
  h.id_ = std::move(id);
  h.kind_ = ScorerKind::Oracle;
  for (std::size_t i = 0; i < components.size(); ++i) h.binding_ += (i ? "," : "") + components[i].id();
  h.components_ = std::move(components);
  return h;
}

Verdict compare_scores(double good, double bad) {
  if (good > bad) return Verdict::Correct;
  if (good == bad) return Verdict::Tie;
  return Verdict::Incorrect;
}

std::optional<Verdict> forced_choice(const ScorerHandle& scorer, const MinimalPair& pair) {
  return scorer.judge(pair);
}

Verdict oracle(const std::vector<Verdict>& components) {
  if (components.size() < 2) throw UsageError("an oracle needs at least two component verdicts");
  bool tie = false;
  for (auto v : components) {
    if (v == Verdict::Correct) return Verdict::Correct;
    if (v == Verdict::Tie) tie = true;
  }
  return tie ? Verdict::Tie : Verdict::Incorrect;
}

std::optional<Verdict> oracle(const std::vector<ScorerHandle>& scorers, const MinimalPair& pair) {
  std::vector<Verdict> vs;
  for (const auto& s : scorers) {
    const auto v = s.judge(pair);
    if (!v) return std::nullopt;
    vs.push_back(*v);
  }
  return oracle(vs);
}

void Tally::add(std::optional<Verdict> v) {
  if (!v) {
    ++missing;
    return;
  }
  switch (*v) {
    case Verdict::Correct: ++correct; break;
    case Verdict::Incorrect: ++incorrect; break;
    case Verdict::Tie: ++ties; break;
  }
}

double Tally::accuracy(TiePolicy policy) const {
  const auto n = evaluated();
  if (n == 0) return kNaN;
  const double credit = policy == TiePolicy::Half ? 0.5 : 0.0;
  return 100.0 * (static_cast<double>(correct) + credit * static_cast<double>(ties)) / static_cast<double>(n);
}

Tally tally(const ScorerHandle& scorer, const std::vector<MinimalPair>& pairs) {
  Tally t;
  for (const auto& p : pairs) t.add(scorer.judge(p));
  return t;
}

double accuracy(const ScorerHandle& scorer, const std::vector<MinimalPair>& pairs, TiePolicy policy,
                Diagnostics* diag) {
  if (pairs.empty()) throw UsageError("accuracy of an empty pair list is undefined");
  const Tally t = tally(scorer, pairs);
  if (diag && t.missing > 0) {
    diag->warn("scorer '" + scorer.id() + "': " + std::to_string(t.missing) + " of " +
               std::to_string(pairs.size()) + " pairs excluded (missing scores or rules)");
  }
  return t.accuracy(policy);
}

// ---------------------------------------------------------------------------

std::size_t EvalReport::column(std::string_view scorer_id) const {
  for (std::size_t i = 0; i < scorers.size(); ++i) {
    if (scorers[i] == scorer_id) return i;
  }
  throw UsageError("unknown scorer '" + std::string(scorer_id) + "'");
}

EvalReport summarize(const std::vector<ScorerHandle>& scorers, const std::vector<MinimalPair>& pairs,
                     const SummaryOptions& options) {
  if (pairs.empty()) throw UsageError("cannot summarize an empty pair list");
  if (scorers.empty()) throw UsageError("no scorers to summarize");

  std::vector<ScorerHandle> columns = scorers;
  std::set<std::string> ids;
  for (const auto& s : columns) {
    if (!ids.insert(s.id()).second) throw UsageError("duplicate scorer id '" + s.id() + "'");
  }
  auto find = [&](const std::string& id) -> const ScorerHandle& {
    for (const auto& s : scorers) {
      if (s.id() == id) return s;
    }
    throw UsageError("unknown scorer '" + id + "'");
  };
  if (options.oracle_components.size() >= 2) {
    std::vector<ScorerHandle> parts;
    for (const auto& id : options.oracle_components) parts.push_back(find(id));
    if (ids.count("oracle_pair")) throw UsageError("scorer id 'oracle_pair' is reserved");
    columns.push_back(ScorerHandle::oracle("oracle_pair", std::move(parts)));
  } else if (options.oracle_components.size() == 1) {
    throw UsageError("an oracle needs at least two component scorers");
  }
  if (!options.reference.empty()) find(options.reference);
  for (const auto& id : options.either_components) find(id);

  EvalReport rep;
  rep.tie_policy = options.tie_policy;
  rep.reference = options.reference;
  rep.dataset_hash = options.dataset_hash;
  rep.either_components = options.either_components;
  for (const auto& s : columns) {
    rep.scorers.push_back(s.id());
    rep.kinds.emplace_back(to_string(s.kind()));
  }
  const std::size_t k = columns.size();

  std::map<std::string, std::size_t> row_of;
  for (const auto& p : pairs) {
    auto [it, inserted] = row_of.try_emplace(p.paradigm, rep.paradigms.size());
    if (inserted) {
      ParadigmRow row;
      row.phenomenon = p.phenomenon;
      row.paradigm = p.paradigm;
      row.cells.resize(k);
      rep.paradigms.push_back(std::move(row));
    }
    auto& row = rep.paradigms[it->second];
    ++row.pairs;
    PairVerdicts pv;
    pv.pair_id = p.id;
    pv.paradigm = p.paradigm;
    for (std::size_t c = 0; c < k; ++c) {
      const auto v = columns[c].judge(p);
      row.cells[c].tally.add(v);
      if (options.keep_verdicts) pv.verdicts.push_back(v);
    }
    if (options.keep_verdicts) rep.verdicts.push_back(std::move(pv));
  }

  rep.macro.assign(k, kNaN);
  rep.missing.assign(k, 0);
  rep.ge_reference.assign(k, 0);
  std::vector<std::vector<double>> per_scorer(k);
  for (auto& row : rep.paradigms) {
    for (std::size_t c = 0; c < k; ++c) {
      row.cells[c].accuracy = row.cells[c].tally.accuracy(options.tie_policy);
      per_scorer[c].push_back(row.cells[c].accuracy);
      rep.missing[c] += row.cells[c].tally.missing;
    }
  }
  for (std::size_t c = 0; c < k; ++c) rep.macro[c] = mean_defined(per_scorer[c]);

  std::map<std::string, std::size_t> phen_of;
  std::vector<std::vector<std::vector<double>>> phen_values;
  for (const auto& row : rep.paradigms) {
    auto [it, inserted] = phen_of.try_emplace(row.phenomenon, rep.phenomena.size());
    if (inserted) {
      rep.phenomena.push_back(PhenomenonRow{row.phenomenon, 0, {}});
      phen_values.emplace_back(k);
    }
    ++rep.phenomena[it->second].paradigms;
    for (std::size_t c = 0; c < k; ++c) phen_values[it->second][c].push_back(row.cells[c].accuracy);
  }
  for (std::size_t i = 0; i < rep.phenomena.size(); ++i) {
    for (std::size_t c = 0; c < k; ++c) rep.phenomena[i].averages.push_back(mean_defined(phen_values[i][c]));
  }

  if (!options.reference.empty()) {
    const std::size_t ref = rep.column(options.reference);
    std::vector<std::size_t> either_cols;
    for (const auto& id : options.either_components) either_cols.push_back(rep.column(id));
    for (const auto& row : rep.paradigms) {
      const double r = row.cells[ref].accuracy;
      if (std::isnan(r)) continue;
      for (std::size_t c = 0; c < k; ++c) {
        if (c != ref && !std::isnan(row.cells[c].accuracy) && row.cells[c].accuracy >= r) ++rep.ge_reference[c];
      }
      bool any = false;
      for (auto c : either_cols) any = any || (!std::isnan(row.cells[c].accuracy) && row.cells[c].accuracy >= r);
      if (any) ++rep.either_paradigm;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::string report_tsv(const EvalReport& r) {
  std::ostringstream out;
  out << "# tie_policy=" << to_string(r.tie_policy);
  if (!r.dataset_hash.empty()) out << " dataset_sha256=" << r.dataset_hash;
  if (!r.reference.empty()) out << " reference=" << r.reference;
  out << '\n';
  out << "phenomenon\tparadigm\tpairs";
  for (const auto& s : r.scorers) out << '\t' << s;
  out << '\n';
  for (const auto& row : r.paradigms) {
    out << row.phenomenon << '\t' << row.paradigm << '\t' << row.pairs;
    for (const auto& c : row.cells) out << '\t' << pct(c.accuracy);
    out << '\n';
  }
  out << "average\t\t";
  for (double m : r.macro) out << '\t' << pct(m);
  out << '\n';
  if (!r.reference.empty()) {
    const std::size_t ref = r.column(r.reference);
    out << "ge_reference\t\t" << r.paradigms.size();
    for (std::size_t c = 0; c < r.scorers.size(); ++c) {
      out << '\t' << (c == ref ? std::string("-") : std::to_string(r.ge_reference[c]));
    }
    out << '\n';
    if (!r.either_components.empty()) {
      out << "either_paradigm\t" << join(r.either_components, "|") << '\t' << r.paradigms.size() << '\t'
          << r.either_paradigm << '\n';
    }
  }
  return out.str();
}

std::string report_markdown(const EvalReport& r) {
  std::ostringstream out;
  out << "Tie policy: " << to_string(r.tie_policy);
  if (!r.dataset_hash.empty()) out << ". Dataset sha256: `" << r.dataset_hash << "`";
  out << ".\n\n";
  out << "| Phenomenon | Paradigm |";
  for (const auto& s : r.scorers) out << ' ' << s << " |";
  out << "\n|---|---|";
  for (std::size_t c = 0; c < r.scorers.size(); ++c) out << "---:|";
  out << '\n';
  std::string last;
  for (const auto& row : r.paradigms) {
    out << "| " << (row.phenomenon == last ? "" : "`" + row.phenomenon + "`") << " | `" << row.paradigm << "` |";
    last = row.phenomenon;
    for (const auto& c : row.cells) out << ' ' << pct(c.accuracy) << " |";
    out << '\n';
  }
  out << "| **average** | |";
  for (double m : r.macro) out << ' ' << pct(m) << " |";
  out << '\n';
  if (!r.reference.empty()) {
    const std::size_t ref = r.column(r.reference);
    out << "| **fraction >= " << r.reference << "** | |";
    for (std::size_t c = 0; c < r.scorers.size(); ++c) {
      out << ' ' << (c == ref ? std::string("-") : std::to_string(r.ge_reference[c]) + "/" +
                                                        std::to_string(r.paradigms.size()))
          << " |";
    }
    out << '\n';
    if (!r.either_components.empty()) {
      out << "\nEither (" << join(r.either_components, ", ") << ") >= " << r.reference << " on "
          << r.either_paradigm << "/" << r.paradigms.size() << " paradigms.\n";
    }
  }
  return out.str();
}

std::string report_json(const EvalReport& r) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); };
  ordered_json j;
  j["tie_policy"] = std::string(to_string(r.tie_policy));
  j["dataset_sha256"] = r.dataset_hash;
  j["reference"] = r.reference;
  ordered_json scorers = ordered_json::array();
  for (std::size_t c = 0; c < r.scorers.size(); ++c) {
    ordered_json s;
    s["id"] = r.scorers[c];
    s["kind"] = r.kinds[c];
    s["macro_accuracy"] = num(r.macro[c]);
    s["missing_pairs"] = r.missing[c];
    if (!r.reference.empty()) s["ge_reference"] = r.ge_reference[c];
    scorers.push_back(s);
  }
  j["scorers"] = scorers;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.paradigms) {
    ordered_json o;
    o["phenomenon"] = row.phenomenon;
    o["paradigm"] = row.paradigm;
    o["pairs"] = row.pairs;
    ordered_json acc;
    for (std::size_t c = 0; c < r.scorers.size(); ++c) {
      const auto& t = row.cells[c].tally;
      acc[r.scorers[c]] = {{"accuracy", num(row.cells[c].accuracy)},
                           {"correct", t.correct},
                           {"incorrect", t.incorrect},
                           {"ties", t.ties},
                           {"missing", t.missing}};
    }
    o["scorers"] = acc;
    rows.push_back(o);
  }
  j["paradigms"] = rows;
  ordered_json phen = ordered_json::array();
  for (const auto& p : r.phenomena) {
    ordered_json o;
    o["phenomenon"] = p.phenomenon;
    o["paradigms"] = p.paradigms;
    ordered_json avg;
    for (std::size_t c = 0; c < r.scorers.size(); ++c) avg[r.scorers[c]] = num(p.averages[c]);
    o["averages"] = avg;
    phen.push_back(o);
  }
  j["phenomena"] = phen;
  if (!r.either_components.empty()) {
    j["either_paradigm"] = {{"components", r.either_components}, {"count", r.either_paradigm},
                            {"paradigms", r.paradigms.size()}};
  }
  return j.dump(2) + "\n";
}

std::string verdicts_tsv(const EvalReport& r) {
  std::ostringstream out;
  out << "pair_id\tparadigm";
  for (const auto& s : r.scorers) out << '\t' << s;
  out << '\n';
  for (const auto& pv : r.verdicts) {
    out << pv.pair_id << '\t' << pv.paradigm;
    for (const auto& v : pv.verdicts) out << '\t' << (v ? std::string(to_string(*v)) : "missing");
    out << '\n';
  }
  return out.str();
}

}  // namespace minpair
