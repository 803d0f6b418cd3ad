#include "minpair/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace minpair {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string cell(double v) { return std::isnan(v) ? "NA" : format_double(v); }

std::vector<double> ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

std::string_view to_string(StdConvention c) { return c == StdConvention::Population ? "population" : "sample"; }

StdConvention parse_std_convention(std::string_view s) {
  if (s == "population") return StdConvention::Population;
  if (s == "sample") return StdConvention::Sample;
  throw ConfigError("unknown std convention '" + std::string(s) + "' (expected population|sample)");
}

std::string_view to_string(CorrelationMethod m) { return m == CorrelationMethod::Pearson ? "pearson" : "spearman"; }

CorrelationMethod parse_correlation_method(std::string_view s) {
  if (s == "pearson") return CorrelationMethod::Pearson;
  if (s == "spearman") return CorrelationMethod::Spearman;
  throw ConfigError("unknown correlation method '" + std::string(s) + "' (expected pearson|spearman)");
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw NumericError("mean of an empty vector");
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stddev(const std::vector<double>& xs, StdConvention c) {
  if (xs.empty()) throw NumericError("standard deviation of an empty vector");
  if (c == StdConvention::Sample && xs.size() < 2) throw NumericError("sample std needs at least two values");
  const double m = mean(xs);
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double d = c == StdConvention::Population ? static_cast<double>(xs.size()) : static_cast<double>(xs.size() - 1);
  return std::sqrt(ss / d);
}

std::map<std::string, double> zscore(const std::map<std::string, double>& raw, StdConvention c) {
  if (raw.empty()) throw NumericError("cannot z-score an empty score set");
  std::vector<double> xs;
  xs.reserve(raw.size());
  for (const auto& [id, v] : raw) xs.push_back(v);
  const double first = xs.front();
  if (std::all_of(xs.begin(), xs.end(), [&](double v) { return v == first; })) {
    throw NumericError("zero variance");
  }
  const double m = mean(xs);
  const double s = stddev(xs, c);
  if (!(s > 0)) throw NumericError("zero variance");
  std::map<std::string, double> out;
  for (const auto& [id, v] : raw) out.emplace(id, (v - m) / s);
  return out;
}

std::size_t JudgmentMatrix::row(std::string_view scorer_id) const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == scorer_id) return i;
  }
  throw UsageError("no judgments for scorer '" + std::string(scorer_id) + "'");
}

JudgmentMatrix build_matrix(const ScoreTable& table, const std::vector<std::string>& sentence_ids,
                            const std::vector<std::string>& scorers) {
  JudgmentMatrix m;
  m.rows = scorers.empty() ? table.scorers() : scorers;
  m.columns = sentence_ids;
  for (const auto& s : m.rows) {
    std::vector<double> r;
    r.reserve(sentence_ids.size());
    for (const auto& id : sentence_ids) {
      const auto v = table.lookup(s, id);
      r.push_back(v ? *v : kNaN);
    }
    m.cells.push_back(std::move(r));
  }
  return m;
}

JudgmentMatrix zscore_rows(const JudgmentMatrix& m, StdConvention c) {
  JudgmentMatrix out = m;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::vector<double> present;
    for (double v : m.cells[r]) {
      if (!std::isnan(v)) present.push_back(v);
    }
    if (present.empty()) throw NumericError("scorer '" + m.rows[r] + "' has no judgments");
    const double first = present.front();
    if (std::all_of(present.begin(), present.end(), [&](double v) { return v == first; })) {
      throw NumericError("zero variance in scores of '" + m.rows[r] + "'");
    }
    const double mu = mean(present);
    const double sd = stddev(present, c);
    for (auto& v : out.cells[r]) {
      if (!std::isnan(v)) v = (v - mu) / sd;
    }
  }
  return out;
}

TypeStats type_stats(const JudgmentMatrix& m, const std::vector<SentenceType>& types, StdConvention c) {
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < m.columns.size(); ++i) col.emplace(m.columns[i], i);
  TypeStats st;
  st.scorers = m.rows;
  for (const auto& t : types) st.type_ids.push_back(t.type_id);
  st.means.assign(m.rows.size(), std::vector<double>(types.size(), kNaN));
  st.stds = st.means;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (std::size_t t = 0; t < types.size(); ++t) {
      std::vector<double> xs;
      bool complete = !types[t].sentences.empty();
      for (const auto& s : types[t].sentences) {
        auto it = col.find(s.id);
        const double v = it == col.end() ? kNaN : m.cells[r][it->second];
        if (std::isnan(v)) {
          complete = false;
          break;
        }
        xs.push_back(v);
      }
      if (!complete) continue;
      st.means[r][t] = mean(xs);
      st.stds[r][t] = stddev(xs, c);
    }
  }
  return st;
}

std::vector<Variability> type_variability(const JudgmentMatrix& zscored, const std::vector<SentenceType>& types,
                                          StdConvention c, Diagnostics* diag) {
  const TypeStats st = type_stats(zscored, types, c);
  std::vector<Variability> out;
  for (std::size_t r = 0; r < st.scorers.size(); ++r) {
    Variability v;
    v.scorer = st.scorers[r];
    double sum = 0;
    for (double s : st.stds[r]) {
      if (std::isnan(s)) {
        ++v.types_excluded;
      } else {
        sum += s;
        ++v.types_used;
      }
    }
    v.avg_within_type_std = v.types_used ? sum / static_cast<double>(v.types_used) : kNaN;
    if (diag && v.types_excluded) {
      diag->warn("scorer '" + v.scorer + "': " + std::to_string(v.types_excluded) +
                 " sentence types excluded for missing judgments");
    }
    out.push_back(v);
  }
  return out;
}

std::string variability_tsv(const std::vector<Variability>& v) {
  std::ostringstream out;
  out << "scorer\tavg_within_type_std\ttypes_used\ttypes_excluded\n";
  for (const auto& x : v) {
    out << x.scorer << '\t' << (std::isnan(x.avg_within_type_std) ? "NA" : format_fixed(x.avg_within_type_std, 6))
        << '\t' << x.types_used << '\t' << x.types_excluded << '\n';
  }
  return out.str();
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw UsageError("correlation of vectors of different length");
  if (x.size() < 2) return kNaN;
  const double mx = mean(x), my = mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0) || !(syy > 0)) return kNaN;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) { return pearson(ranks(x), ranks(y)); }

CorrelationMatrix correlation_matrix(const TypeStats& stats, TypeStatistic statistic,
                                     const std::vector<std::string>& inclusion, CorrelationMethod method) {
  const auto& values = statistic == TypeStatistic::Means ? stats.means : stats.stds;
  std::unordered_map<std::string, std::size_t> idx;
  for (std::size_t t = 0; t < stats.type_ids.size(); ++t) idx.emplace(stats.type_ids[t], t);
  auto complete = [&](std::size_t t) {
    return std::all_of(values.begin(), values.end(), [&](const std::vector<double>& row) { return !std::isnan(row[t]); });
  };

  std::vector<std::size_t> cols;
  if (inclusion.empty()) {
    for (std::size_t t = 0; t < stats.type_ids.size(); ++t) {
      if (complete(t)) cols.push_back(t);
    }
  } else {
    for (const auto& id : inclusion) {
      auto it = idx.find(id);
      if (it == idx.end()) throw UsageError("inclusion list names unknown sentence type '" + id + "'");
      if (!complete(it->second)) throw UsageError("sentence type '" + id + "' lacks complete statistics");
      cols.push_back(it->second);
    }
  }
  if (cols.empty()) throw UsageError("no sentence types to correlate");

  std::vector<std::vector<double>> vecs;
  for (const auto& row : values) {
    std::vector<double> v;
    v.reserve(cols.size());
    for (auto t : cols) v.push_back(row[t]);
    vecs.push_back(std::move(v));
  }
  CorrelationMatrix m;
  m.labels = stats.scorers;
  const std::size_t n = vecs.size();
  m.cells.assign(n, std::vector<double>(n, kNaN));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double r = method == CorrelationMethod::Pearson ? pearson(vecs[i], vecs[j]) : spearman(vecs[i], vecs[j]);
      m.cells[i][j] = m.cells[j][i] = (i == j && !std::isnan(r)) ? 1.0 : r;
    }
  }
  return m;
}

std::string correlation_tsv(const CorrelationMatrix& m) {
  std::ostringstream out;
  out << "scorer";
  for (const auto& l : m.labels) out << '\t' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out << m.labels[i];
    for (double v : m.cells[i]) out << '\t' << cell(v);
    out << '\n';
  }
  return out.str();
}

std::vector<ScoreRecord> human_scores(const std::vector<SentenceType>& types) {
  std::vector<ScoreRecord> out;
  for (const auto& t : types) {
    for (std::size_t i = 0; i < t.sentences.size(); ++i) {
      out.push_back(ScoreRecord{t.sentences[i].id, "human", t.human_z[i], "none"});
    }
  }
  return out;
}

std::vector<AccuracyRow> li_adger_accuracy(const std::vector<ScorerHandle>& scorers,
                                           const std::vector<MinimalPair>& pairs, TiePolicy policy) {
  if (pairs.empty()) throw UsageError("no LI-Adger pairs to evaluate");
  std::vector<AccuracyRow> rows;
  for (const auto& s : scorers) {
    const Tally t = tally(s, pairs);
    rows.push_back(AccuracyRow{s.id(), t.accuracy(policy), t.evaluated(), t.missing});
  }
  return rows;
}

std::string accuracy_bars_tsv(const std::vector<AccuracyRow>& rows) {
  std::ostringstream out;
  out << "scorer\taccuracy\tpairs\tmissing\n";
  for (const auto& r : rows) {
    out << r.scorer << '\t' << (std::isnan(r.accuracy) ? "NA" : format_fixed(r.accuracy, 2)) << '\t' << r.pairs
        << '\t' << r.missing << '\n';
  }
  return out.str();
}

std::vector<std::string> read_inclusion_list(const std::filesystem::path& path) {
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& line : read_lines(path)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (seen.insert(std::string(t)).second) ids.emplace_back(t);
  }
  if (ids.empty()) throw UsageError("inclusion list " + path.string() + " is empty");
  return ids;
}

}  // namespace minpair
