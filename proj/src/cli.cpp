#include "minpair/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "minpair/config.hpp"
#include "minpair/dataio.hpp"
#include "minpair/error.hpp"
#include "minpair/eval.hpp"
#include "minpair/gradient.hpp"
#include "minpair/hashing.hpp"
#include "minpair/heatmap.hpp"
#include "minpair/ngram.hpp"
#include "minpair/postag.hpp"
#include "minpair/rulekit.hpp"
#include "minpair/scores.hpp"
#include "minpair/text.hpp"

namespace fs = std::filesystem;

namespace minpair {

namespace {

constexpr const char* kDataEnv = "MINPAIR_DATA";

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value
  std::string manifest;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Diagnostics diag;
};

RunConfig load_config(const Common& c, const std::map<std::string, std::string>& flag_overrides) {
  RunConfig cfg = c.config_path.empty() ? RunConfig() : RunConfig::load(c.config_path);
  for (const auto& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
    cfg.set(std::string(trim(std::string_view(kv).substr(0, eq))), std::string(trim(std::string_view(kv).substr(eq + 1))));
  }
  for (const auto& [k, v] : flag_overrides) cfg.set(k, v);
  return cfg;
}

fs::path default_data(const std::string& name) {
  const char* root = std::getenv(kDataEnv);
  if (root == nullptr || *root == '\0') {
    throw UsageError("no input given and " + std::string(kDataEnv) + " is not set");
  }
  return fs::path(root) / name;
}

void require_exists(const fs::path& p) {
  if (!fs::exists(p)) throw IoError("input not found: " + p.string());
}

// Directory outputs get one manifest per subcommand so several subcommands
// can share a run directory.
fs::path manifest_path(const Common& c, const fs::path& primary_output, const std::string& subcommand = "") {
  if (!c.manifest.empty()) return c.manifest;
  if (!subcommand.empty()) return primary_output / (subcommand + ".manifest.json");
  return fs::path(primary_output.string() + ".manifest.json");
}

void finish(Context& ctx, Manifest& m, const fs::path& path) {
  m.write(path);
  ctx.diag.print(ctx.err);
}

SmoothingConfig smoothing_from(const RunConfig& cfg) {
  SmoothingConfig s;
  s.scheme = parse_smoothing_scheme(cfg.get("smoothing.scheme"));
  s.k = cfg.get_double("smoothing.k");
  s.alpha = cfg.get_double("smoothing.alpha");
  s.unk_threshold = static_cast<int>(cfg.get_int("smoothing.unk_threshold"));
  s.validate();
  return s;
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& part : split(s, ',')) {
    const auto t = trim(part);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct NormalizeArgs {
  std::string source, input, out, sentences, human;
};

void cmd_normalize(Context& ctx, const Common& common, const NormalizeArgs& a) {
  const RunConfig cfg = load_config(common, {});
  const Source source = parse_source(a.source);
  const fs::path input = a.input.empty() ? default_data(std::string(to_string(source))) : fs::path(a.input);
  require_exists(input);
  std::vector<MinimalPair> pairs;
  std::vector<SentenceType> types;
  switch (source) {
    case Source::BLiMP:
      pairs = load_blimp(input, ctx.diag);
      break;
    case Source::Zorro:
      pairs = load_zorro(input, ctx.diag,
                         cfg.get("zorro.layout") == "good_first" ? ZorroLayout::GoodFirst : ZorroLayout::BadFirst);
      break;
    case Source::LIAdger:
      types = load_li_adger(input, ctx.diag);
      pairs = build_li_adger_pairs(types, ctx.diag);
      break;
  }
  if (!a.human.empty() && source != Source::LIAdger) throw UsageError("--human-scores applies to li_adger only");

  Manifest m;
  m.subcommand = "normalize";
  m.config = cfg;
  m.arguments = {{"--source", a.source}, {"--input", input.string()}, {"--out", a.out}};
  m.add_input(input);
  write_pairs_tsv(a.out, pairs);
  m.add_output(a.out);
  if (!a.sentences.empty()) {
    write_sentences_tsv(a.sentences, collect_sentences(pairs));
    m.add_output(a.sentences);
  }
  if (!a.human.empty()) {
    write_scores_tsv(a.human, human_scores(types));
    m.add_output(a.human);
  }
  std::set<std::string> paradigms;
  for (const auto& p : pairs) paradigms.insert(p.paradigm);
  m.facts = {{"pairs", std::to_string(pairs.size())}, {"paradigms", std::to_string(paradigms.size())}};
  if (source == Source::LIAdger) m.facts.emplace_back("sentence_types", std::to_string(types.size()));
  ctx.out << pairs.size() << " pairs in " << paradigms.size() << " paradigms";
  if (source == Source::LIAdger) ctx.out << " from " << types.size() << " sentence types";
  ctx.out << '\n';
  finish(ctx, m, manifest_path(common, a.out));
}

struct TrainTaggerArgs {
  std::string corpus, out;
  std::optional<int> epochs;
  std::optional<long long> seed;
};

void cmd_train_tagger(Context& ctx, const Common& common, const TrainTaggerArgs& a) {
  std::map<std::string, std::string> fo;
  if (a.epochs) fo["tagger.epochs"] = std::to_string(*a.epochs);
  if (a.seed) fo["seed"] = std::to_string(*a.seed);
  const RunConfig cfg = load_config(common, fo);
  require_exists(a.corpus);
  const auto corpus = load_training_corpus(a.corpus, CorpusFormat::Tagged, ctx.diag);
  TaggerOptions opt;
  opt.epochs = static_cast<int>(cfg.get_int("tagger.epochs"));
  opt.seed = static_cast<std::uint64_t>(cfg.get_int("seed"));
  opt.heldout_fraction = cfg.get_double("tagger.heldout_fraction");
  const auto result = train_tagger(corpus, opt);
  save_tag_model(result.model, a.out);

  Manifest m;
  m.subcommand = "train-tagger";
  m.config = cfg;
  m.arguments = {{"--corpus", a.corpus}, {"--out", a.out}};
  m.add_input(a.corpus);
  m.add_output(a.out);
  const std::string acc = std::isnan(result.heldout_accuracy) ? "NA" : format_fixed(100.0 * result.heldout_accuracy, 2);
  m.facts = {{"train_sentences", std::to_string(result.train_sentences)},
             {"heldout_sentences", std::to_string(result.heldout_sentences)},
             {"heldout_tokens", std::to_string(result.heldout_tokens)},
             {"heldout_accuracy", acc},
             {"tagset_size", std::to_string(result.model.tagset.size())}};
  ctx.out << "trained on " << result.train_sentences << " sentences; held-out accuracy " << acc << "% over "
          << result.heldout_tokens << " tokens\n";
  finish(ctx, m, manifest_path(common, a.out));
}

struct TrainNgramArgs {
  std::string corpus, corpus_format = "plain", out, tagger;
  std::optional<int> order, unk_threshold;
  std::optional<std::string> level, smoothing;
  std::optional<double> k, alpha;
};

void cmd_train_ngram(Context& ctx, const Common& common, const TrainNgramArgs& a) {
  std::map<std::string, std::string> fo;
  if (a.order) fo["ngram.order"] = std::to_string(*a.order);
  if (a.level) fo["ngram.level"] = *a.level;
  if (a.smoothing) fo["smoothing.scheme"] = *a.smoothing;
  if (a.k) fo["smoothing.k"] = format_double(*a.k);
  if (a.alpha) fo["smoothing.alpha"] = format_double(*a.alpha);
  if (a.unk_threshold) fo["smoothing.unk_threshold"] = std::to_string(*a.unk_threshold);
  const RunConfig cfg = load_config(common, fo);
  const Level level = parse_level(cfg.get("ngram.level"));
  require_exists(a.corpus);
  const CorpusFormat fmt = a.corpus_format == "tagged" ? CorpusFormat::Tagged : CorpusFormat::Plain;
  if (a.corpus_format != "tagged" && a.corpus_format != "plain") {
    throw UsageError("--corpus-format must be plain or tagged");
  }
  std::optional<TagModel> tagger;
  if (!a.tagger.empty()) {
    require_exists(a.tagger);
    tagger = load_tag_model(a.tagger);
  }
  const auto corpus = load_training_corpus(a.corpus, fmt, ctx.diag);
  const auto model = train_ngram(corpus, static_cast<int>(cfg.get_int("ngram.order")), level, smoothing_from(cfg),
                                 tagger ? &*tagger : nullptr);
  save_ngram_model(model, a.out);

  Manifest m;
  m.subcommand = "train-ngram";
  m.config = cfg;
  m.arguments = {{"--corpus", a.corpus}, {"--out", a.out}};
  m.add_input(a.corpus);
  if (!a.tagger.empty()) {
    m.arguments.emplace_back("--tagger", a.tagger);
    m.add_input(a.tagger);
  }
  m.add_output(a.out);
  m.facts = {{"training_tokens", std::to_string(corpus.token_count())},
             {"vocabulary", std::to_string(model.vocabulary().size())},
             {"smoothing", model.smoothing().describe()}};
  ctx.out << "trained order-" << model.order() << ' ' << to_string(model.level()) << " model on "
          << corpus.token_count() << " tokens (" << model.smoothing().describe() << ")\n";
  finish(ctx, m, manifest_path(common, a.out));
}

struct ScoreArgs {
  std::string model, sentences, pairs, out, metric = "ll", tagger, scorer_id;
};

void cmd_score(Context& ctx, const Common& common, const ScoreArgs& a) {
  const RunConfig cfg = load_config(common, {});
  if (a.sentences.empty() == a.pairs.empty()) throw UsageError("give exactly one of --sentences or --pairs");
  if (a.metric != "ll" && a.metric != "slor") throw UsageError("--metric must be ll or slor");
  require_exists(a.model);
  auto model = std::make_shared<const NGramModel>(load_ngram_model(a.model));
  std::shared_ptr<const TagModel> tagger;
  if (!a.tagger.empty()) {
    require_exists(a.tagger);
    tagger = std::make_shared<const TagModel>(load_tag_model(a.tagger));
  }
  const std::string input = a.sentences.empty() ? a.pairs : a.sentences;
  require_exists(input);
  const auto sentences = a.sentences.empty() ? collect_sentences(read_pairs_tsv(a.pairs)) : read_sentences_tsv(a.sentences);
  const std::string id =
      a.scorer_id.empty() ? fs::path(a.model).stem().string() + "." + a.metric : a.scorer_id;
  const auto scorer = ScorerHandle::ngram(id, model, a.metric == "slor", tagger, a.model);
  std::vector<ScoreRecord> records;
  records.reserve(sentences.size());
  for (const auto& s : sentences) records.push_back(ScoreRecord{s.id, id, *scorer.score(s), "e"});
  Manifest m;
  m.subcommand = "score";
  m.config = cfg;
  m.arguments = {{"--model", a.model}, {"--metric", a.metric}, {"--scorer-id", id}};
  m.add_input(a.model);
  m.add_input(input);
  if (tagger) m.add_input(a.tagger);
  m.facts = {{"sentences", std::to_string(records.size())}};
  if (a.out.empty()) {
    ctx.out << scores_tsv(records);
    finish(ctx, m, manifest_path(common, fs::path("."), "score"));
    return;
  }
  write_scores_tsv(a.out, records);
  m.arguments.emplace_back("--out", a.out);
  m.add_output(a.out);
  ctx.out << "scored " << records.size() << " sentences as '" << id << "'\n";
  finish(ctx, m, manifest_path(common, a.out));
}

struct EvalPairsArgs {
  std::string pairs, rulepack, reference, oracle, either, out, dataset;
  std::vector<std::string> scores;
  std::optional<std::string> tie_policy;
};

void cmd_eval_pairs(Context& ctx, const Common& common, const EvalPairsArgs& a) {
  std::map<std::string, std::string> fo;
  if (a.tie_policy) fo["tie_policy"] = *a.tie_policy;
  const RunConfig cfg = load_config(common, fo);
  require_exists(a.pairs);
  const auto pairs = read_pairs_tsv(a.pairs);
  if (pairs.empty()) throw UsageError("no pairs in " + a.pairs);

  Manifest m;
  m.subcommand = "eval-pairs";
  m.config = cfg;
  m.arguments = {{"--pairs", a.pairs}, {"--out", a.out}};
  m.add_input(a.pairs);

  auto table = std::make_shared<ScoreTable>();
  for (const auto& f : a.scores) {
    require_exists(f);
    table->add(read_scores_tsv(f));
    m.arguments.emplace_back("--scores", f);
    m.add_input(f);
  }
  std::vector<ScorerHandle> scorers;
  for (const auto& id : table->scorers()) {
    const ScorerKind kind = table->log_base(id) == "none" ? ScorerKind::HumanZ : ScorerKind::ExternalScores;
    scorers.push_back(ScorerHandle::table(id, kind, table, id));
  }
  if (!a.rulepack.empty()) {
    auto pack = std::make_shared<const Rulepack>(load_rulepack(a.rulepack));
    scorers.push_back(ScorerHandle::rules("rule", pack));
    m.arguments.emplace_back("--rulepack", a.rulepack);
    if (!starts_with(a.rulepack, "builtin:")) m.add_input(a.rulepack);
  }
  if (scorers.empty()) throw UsageError("nothing to evaluate: give --scores and/or --rulepack");

  SummaryOptions opt;
  opt.tie_policy = parse_tie_policy(cfg.get("tie_policy"));
  opt.reference = a.reference;
  opt.oracle_components = split_ids(a.oracle);
  opt.either_components = split_ids(a.either);
  opt.dataset_hash = a.dataset.empty() ? hash_file(a.pairs) : hash_dataset(a.dataset);
  if (!a.dataset.empty()) m.add_input(a.dataset);
  if (!a.reference.empty()) m.arguments.emplace_back("--reference", a.reference);
  if (!a.oracle.empty()) m.arguments.emplace_back("--oracle", a.oracle);
  if (!a.either.empty()) m.arguments.emplace_back("--either", a.either);
  const EvalReport rep = summarize(scorers, pairs, opt);
  for (std::size_t c = 0; c < rep.scorers.size(); ++c) {
    if (rep.missing[c]) {
      ctx.diag.warn("scorer '" + rep.scorers[c] + "': " + std::to_string(rep.missing[c]) +
                    " pairs excluded (missing scores or rules)");
    }
  }

  const fs::path dir = a.out;
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> files = {{"eval.tsv", report_tsv(rep)},
                                                                  {"eval.md", report_markdown(rep)},
                                                                  {"eval.json", report_json(rep)},
                                                                  {"verdicts.tsv", verdicts_tsv(rep)}};
  for (const auto& [name, body] : files) {
    write_file(dir / name, body);
    m.add_output(dir / name);
  }
  write_file(dir / "run.config", cfg.serialize());
  m.add_output(dir / "run.config");
  for (std::size_t c = 0; c < rep.scorers.size(); ++c) {
    const std::string macro = std::isnan(rep.macro[c]) ? "NA" : format_fixed(rep.macro[c], 2);
    m.facts.emplace_back("macro." + rep.scorers[c], macro);
    ctx.out << rep.scorers[c] << "\tmacro " << macro;
    if (!rep.reference.empty() && rep.scorers[c] != rep.reference) {
      ctx.out << "\t>= " << rep.reference << ": " << rep.ge_reference[c] << '/' << rep.paradigms.size();
    }
    ctx.out << '\n';
  }
  if (!rep.either_components.empty() && !rep.reference.empty()) {
    ctx.out << "either_paradigm\t" << rep.either_paradigm << '/' << rep.paradigms.size() << '\n';
  }
  finish(ctx, m, manifest_path(common, dir, "eval-pairs"));
}

struct EvalRulesArgs {
  std::string rulepack, pairs, out;
  bool strict = false;
};

void cmd_eval_rules(Context& ctx, const Common& common, const EvalRulesArgs& a) {
  std::map<std::string, std::string> fo;
  if (a.strict) fo["strict"] = "true";
  const RunConfig cfg = load_config(common, fo);
  require_exists(a.pairs);
  const auto pack = load_rulepack(a.rulepack);
  const auto pairs = read_pairs_tsv(a.pairs);
  RuleEvalOptions opt;
  opt.abstain_credit = cfg.get_double("abstain_credit");
  opt.strict = cfg.get_bool("strict");
  const auto report = eval_rulepack(pack, pairs, opt);
  for (const auto& u : report.uncovered) ctx.diag.warn("no rule for paradigm '" + u + "'");

  std::size_t perfect = 0;
  for (const auto& r : report.paradigms) {
    if (r.covered && r.chose_good == r.pairs) ++perfect;
  }
  const std::string macro = std::isnan(report.macro_average) ? "NA" : format_fixed(report.macro_average, 2);
  Manifest m;
  m.subcommand = "eval-rules";
  m.config = cfg;
  m.arguments = {{"--rulepack", a.rulepack}, {"--pairs", a.pairs}};
  if (!starts_with(a.rulepack, "builtin:")) m.add_input(a.rulepack);
  m.add_input(a.pairs);
  m.facts = {{"macro_average", macro},
             {"paradigms", std::to_string(report.paradigms.size())},
             {"paradigms_at_100", std::to_string(perfect)},
             {"uncovered", std::to_string(report.uncovered.size())}};
  const std::string tsv = rule_report_tsv(report);
  if (a.out.empty()) {
    ctx.out << tsv;
    finish(ctx, m, manifest_path(common, fs::path("."), "eval-rules"));
    return;
  }
  const fs::path dir = a.out;
  fs::create_directories(dir);
  write_file(dir / "rule_eval.tsv", tsv);
  write_file(dir / "run.config", cfg.serialize());
  m.arguments.emplace_back("--out", a.out);
  m.add_output(dir / "rule_eval.tsv");
  m.add_output(dir / "run.config");
  ctx.out << "macro_average\t" << macro << "\nparadigms\t" << report.paradigms.size() << "\nparadigms_at_100\t"
          << perfect << '\n';
  finish(ctx, m, manifest_path(common, dir, "eval-rules"));
}

struct GradientArgs {
  std::string li_adger, include, out;
  std::vector<std::string> scores;
  std::optional<std::string> std_convention, correlation, tie_policy;
  bool rezscore_human = false;
};

void cmd_gradient(Context& ctx, const Common& common, const GradientArgs& a) {
  std::map<std::string, std::string> fo;
  if (a.std_convention) fo["gradient.std"] = *a.std_convention;
  if (a.correlation) fo["gradient.correlation"] = *a.correlation;
  if (a.tie_policy) fo["tie_policy"] = *a.tie_policy;
  if (!a.include.empty()) fo["gradient.inclusion"] = a.include;
  const RunConfig cfg = load_config(common, fo);
  const StdConvention sc = parse_std_convention(cfg.get("gradient.std"));
  const CorrelationMethod cm = parse_correlation_method(cfg.get("gradient.correlation"));

  const fs::path input = a.li_adger.empty() ? default_data("li_adger") : fs::path(a.li_adger);
  require_exists(input);
  const auto types = load_li_adger(input, ctx.diag);
  const auto pairs = build_li_adger_pairs(types, ctx.diag);

  Manifest m;
  m.subcommand = "gradient";
  m.config = cfg;
  m.arguments = {{"--li-adger", input.string()}, {"--out", a.out}};
  m.add_input(input);

  auto table = std::make_shared<ScoreTable>(human_scores(types));
  for (const auto& f : a.scores) {
    require_exists(f);
    table->add(read_scores_tsv(f));
    m.arguments.emplace_back("--scores", f);
    m.add_input(f);
  }
  std::vector<std::string> sentence_ids;
  for (const auto& t : types) {
    for (const auto& s : t.sentences) sentence_ids.push_back(s.id);
  }
  JudgmentMatrix raw = build_matrix(*table, sentence_ids);
  JudgmentMatrix z = zscore_rows(raw, sc);
  if (!a.rezscore_human) z.cells[z.row("human")] = raw.cells[raw.row("human")];

  const auto variability = type_variability(z, types, sc, &ctx.diag);
  const auto stats = type_stats(z, types, sc);
  std::vector<std::string> inclusion;
  const std::string inc = cfg.get("gradient.inclusion");
  if (!inc.empty()) {
    require_exists(inc);
    inclusion = read_inclusion_list(inc);
    m.add_input(inc);
  }
  const auto corr_means = correlation_matrix(stats, TypeStatistic::Means, inclusion, cm);
  const auto corr_stds = correlation_matrix(stats, TypeStatistic::Stds, inclusion, cm);

  std::vector<ScorerHandle> scorers;
  for (const auto& id : table->scorers()) {
    scorers.push_back(ScorerHandle::table(id, id == "human" ? ScorerKind::HumanZ : ScorerKind::ExternalScores,
                                          table, id));
  }
  const auto bars = li_adger_accuracy(scorers, pairs, parse_tie_policy(cfg.get("tie_policy")));

  const fs::path dir = a.out;
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"variability.tsv", variability_tsv(variability)},
      {"correlation_means.tsv", correlation_tsv(corr_means)},
      {"correlation_stds.tsv", correlation_tsv(corr_stds)},
      {"heatmap_means.svg", render_heatmap(corr_means.cells, corr_means.labels, "Type means")},
      {"heatmap_stds.svg", render_heatmap(corr_stds.cells, corr_stds.labels, "Type standard deviations")},
      {"li_adger_accuracy.tsv", accuracy_bars_tsv(bars)},
      {"human_scores.tsv", scores_tsv(human_scores(types))},
      {"run.config", cfg.serialize()}};
  for (const auto& [name, body] : files) {
    write_file(dir / name, body);
    m.add_output(dir / name);
  }
  m.facts = {{"sentence_types", std::to_string(types.size())},
             {"pairs", std::to_string(pairs.size())},
             {"std_convention", std::string(to_string(sc))},
             {"correlation", std::string(to_string(cm))}};
  for (const auto& v : variability) {
    const std::string s = std::isnan(v.avg_within_type_std) ? "NA" : format_fixed(v.avg_within_type_std, 6);
    m.facts.emplace_back("variability." + v.scorer, s);
    ctx.out << v.scorer << "\tvariability " << s << '\n';
  }
  for (const auto& b : bars) {
    ctx.out << b.scorer << "\taccuracy " << (std::isnan(b.accuracy) ? "NA" : format_fixed(b.accuracy, 2)) << '\n';
  }
  finish(ctx, m, manifest_path(common, dir, "gradient"));
}

void cmd_report(Context& ctx, const Common& common, const std::string& run) {
  const RunConfig cfg = load_config(common, {});
  const fs::path dir = run;
  if (!fs::is_directory(dir)) throw IoError("run directory not found: " + run);
  const std::vector<std::pair<std::string, std::string>> known = {
      {"eval.md", "Forced-choice accuracy"},
      {"rule_eval.tsv", "Linear rules"},
      {"li_adger_accuracy.tsv", "LI-Adger accuracy"},
      {"variability.tsv", "Within-type variability"},
      {"correlation_means.tsv", "Correlation of type means"},
      {"correlation_stds.tsv", "Correlation of type standard deviations"}};
  std::string body = "# minpair report\n";
  Manifest m;
  m.subcommand = "report";
  m.config = cfg;
  m.arguments = {{"--run", run}};
  std::size_t found = 0;
  for (const auto& [name, heading] : known) {
    const fs::path p = dir / name;
    if (!fs::is_regular_file(p)) continue;
    ++found;
    m.add_input(p);
    body += "\n## " + heading + "\n\n";
    if (ends_with(name, ".md")) {
      body += read_file(p);
    } else {
      body += "```\n" + read_file(p) + "```\n";
    }
  }
  if (found == 0) throw IoError("no results found in " + run);
  write_file(dir / "report.md", body);
  m.add_output(dir / "report.md");
  ctx.out << "wrote " << (dir / "report.md").string() << " from " << found << " result file(s)\n";
  finish(ctx, m, manifest_path(common, dir, "report"));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"minpair: minimal-pair benchmark auditing toolkit", "minpair"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "Run configuration file");
    sub->add_option("--set", common.overrides, "Config override key=value (repeatable)");
    sub->add_option("--manifest", common.manifest, "Manifest path (default: next to the output)");
  };

  NormalizeArgs na;
  auto* normalize = app.add_subcommand("normalize", "Ingest a benchmark into the pair TSV");
  normalize->add_option("--source", na.source, "blimp | zorro | li_adger")->required();
  normalize->add_option("--input", na.input, "Dataset directory (default $MINPAIR_DATA/<source>)");
  normalize->add_option("--out", na.out, "Pair TSV to write")->required();
  normalize->add_option("--sentences", na.sentences, "Also write the unique sentences");
  normalize->add_option("--human-scores", na.human, "LI-Adger only: write human z-scores as a score file");
  add_common(normalize);

  TrainTaggerArgs tta;
  auto* train_tagger_cmd = app.add_subcommand("train-tagger", "Train the POS tagger on a token_TAG corpus");
  train_tagger_cmd->add_option("--corpus", tta.corpus, "Tagged corpus")->required();
  train_tagger_cmd->add_option("--out", tta.out, "Model file to write")->required();
  train_tagger_cmd->add_option("--epochs", tta.epochs);
  train_tagger_cmd->add_option("--seed", tta.seed);
  add_common(train_tagger_cmd);

  TrainNgramArgs tna;
  auto* train_ngram_cmd = app.add_subcommand("train-ngram", "Train a word or tag n-gram model");
  train_ngram_cmd->add_option("--corpus", tna.corpus, "One utterance per line")->required();
  train_ngram_cmd->add_option("--corpus-format", tna.corpus_format, "plain | tagged");
  train_ngram_cmd->add_option("--out", tna.out, "Model file to write")->required();
  train_ngram_cmd->add_option("--order", tna.order);
  train_ngram_cmd->add_option("--level", tna.level, "word | tag");
  train_ngram_cmd->add_option("--tagger", tna.tagger, "Tagger model (required for --level tag)");
  train_ngram_cmd->add_option("--smoothing", tna.smoothing, "stupid_backoff | add_k");
  train_ngram_cmd->add_option("--k", tna.k);
  train_ngram_cmd->add_option("--alpha", tna.alpha);
  train_ngram_cmd->add_option("--unk-threshold", tna.unk_threshold);
  add_common(train_ngram_cmd);

  ScoreArgs sa;
  auto* score = app.add_subcommand("score", "Score sentences with an n-gram model");
  score->add_option("--model", sa.model)->required();
  score->add_option("--sentences", sa.sentences, "Sentence TSV");
  score->add_option("--pairs", sa.pairs, "Pair TSV (both members are scored)");
  score->add_option("--metric", sa.metric, "ll | slor");
  score->add_option("--tagger", sa.tagger, "Tagger for tag-level models");
  score->add_option("--scorer-id", sa.scorer_id);
  score->add_option("--out", sa.out, "Score file to write (default: stdout)");
  add_common(score);

  EvalPairsArgs ea;
  auto* eval_pairs = app.add_subcommand("eval-pairs", "Forced-choice evaluation of score files and rules");
  eval_pairs->add_option("--pairs", ea.pairs)->required();
  eval_pairs->add_option("--scores", ea.scores, "Score file (repeatable)");
  eval_pairs->add_option("--rulepack", ea.rulepack, "Adds a 'rule' column");
  eval_pairs->add_option("--reference", ea.reference, "Scorer id to compare against");
  eval_pairs->add_option("--oracle", ea.oracle, "Comma-separated scorer ids for the pair-level oracle");
  eval_pairs->add_option("--either", ea.either, "Comma-separated scorer ids for the paradigm-level either count");
  eval_pairs->add_option("--tie-policy", ea.tie_policy, "half | zero");
  eval_pairs->add_option("--dataset", ea.dataset, "Dataset to hash into the report (default: the pair file)");
  eval_pairs->add_option("--out", ea.out, "Output directory")->required();
  add_common(eval_pairs);

  EvalRulesArgs ra;
  auto* eval_rules = app.add_subcommand("eval-rules", "Evaluate a rulepack per paradigm");
  eval_rules->add_option("--rulepack", ra.rulepack, "builtin:zorro | builtin:blimp | file")->required();
  eval_rules->add_option("--pairs", ra.pairs)->required();
  eval_rules->add_option("--out", ra.out, "Output directory (default: TSV on stdout)");
  eval_rules->add_flag("--strict", ra.strict, "Abstentions and uncovered paradigms score 0");
  add_common(eval_rules);

  GradientArgs ga;
  auto* gradient = app.add_subcommand("gradient", "LI-Adger variability, correlations and accuracy");
  gradient->add_option("--li-adger", ga.li_adger, "LI-Adger directory (default $MINPAIR_DATA/li_adger)");
  gradient->add_option("--scores", ga.scores, "Score file (repeatable)");
  gradient->add_option("--include", ga.include, "Sentence-type inclusion list");
  gradient->add_option("--std", ga.std_convention, "population | sample");
  gradient->add_option("--correlation", ga.correlation, "pearson | spearman");
  gradient->add_option("--tie-policy", ga.tie_policy, "half | zero");
  gradient->add_flag("--rezscore-human", ga.rezscore_human, "Z-score the human row again");
  gradient->add_option("--out", ga.out, "Output directory")->required();
  add_common(gradient);

  std::string run_dir;
  auto* report = app.add_subcommand("report", "Collect a run directory's results into report.md");
  report->add_option("--run", run_dir)->required();
  add_common(report);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << (e.get_name() == "CallForVersion" ? std::string(kToolVersion) + "\n" : app.help());
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::Usage);
  }

  Context ctx{out, err, {}};
  try {
    if (*normalize) cmd_normalize(ctx, common, na);
    else if (*train_tagger_cmd) cmd_train_tagger(ctx, common, tta);
    else if (*train_ngram_cmd) cmd_train_ngram(ctx, common, tna);
    else if (*score) cmd_score(ctx, common, sa);
    else if (*eval_pairs) cmd_eval_pairs(ctx, common, ea);
    else if (*eval_rules) cmd_eval_rules(ctx, common, ra);
    else if (*gradient) cmd_gradient(ctx, common, ga);
    else if (*report) cmd_report(ctx, common, run_dir);
  } catch (const Error& e) {
    ctx.diag.print(err);
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    ctx.diag.print(err);
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace minpair
