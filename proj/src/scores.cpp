#include "minpair/scores.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace minpair {

namespace {

bool valid_base(std::string_view b) { return b == "e" || b == "2" || b == "10" || b == "none"; }

bool valid_field(std::string_view f) {
  return !f.empty() && f.find('\t') == std::string_view::npos && f.find('\n') == std::string_view::npos;
}

}  // namespace

std::string scores_tsv(const std::vector<ScoreRecord>& records) {
  std::ostringstream out;
  out << kScoreHeader << '\n';
  for (const auto& r : records) {
    if (!valid_field(r.sentence_id) || !valid_field(r.scorer_id)) {
      throw SchemaError("score record has an empty id or an id containing a tab");
    }
    if (!std::isfinite(r.score)) {
      throw NumericError("non-finite score for " + r.sentence_id + " (" + r.scorer_id + ")");
    }
    out << r.sentence_id << '\t' << r.scorer_id << '\t' << format_double(r.score) << '\t' << r.log_base << '\n';
  }
  return out.str();
}

void write_scores_tsv(const std::filesystem::path& path, const std::vector<ScoreRecord>& records) {
  write_file(path, scores_tsv(records));
}

std::vector<ScoreRecord> parse_scores_tsv(std::string_view text, const std::string& origin) {
  std::vector<ScoreRecord> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t lineno = 0;
  bool header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto where = origin + ":" + std::to_string(lineno) + ": ";
    if (!header) {
      if (line != kScoreHeader) throw SchemaError(where + "expected score header '" + kScoreHeader + "'");
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 4) {
      throw SchemaError(where + "expected 4 columns, found " + std::to_string(cols.size()));
    }
    ScoreRecord r;
    r.sentence_id = cols[0];
    r.scorer_id = cols[1];
    if (r.sentence_id.empty() || r.scorer_id.empty()) throw SchemaError(where + "empty id");
    r.score = parse_double(cols[2], where + "score");
    if (!std::isfinite(r.score)) throw SchemaError(where + "score is not finite");
    r.log_base = cols[3];
    if (!valid_base(r.log_base)) throw SchemaError(where + "log_base must be one of e, 2, 10, none");
    if (!seen.emplace(r.scorer_id, r.sentence_id).second) {
      throw SchemaError(where + "duplicate score for " + r.sentence_id + " (" + r.scorer_id + ")");
    }
    out.push_back(std::move(r));
  }
  if (!header) throw SchemaError(origin + ": empty score file (missing header)");
  return out;
}

std::vector<ScoreRecord> read_scores_tsv(const std::filesystem::path& path) {
  return parse_scores_tsv(read_file(path), path.string());
}

ScoreFileSummary check_score_file(const std::filesystem::path& path) {
  ScoreFileSummary s;
  for (const auto& r : read_scores_tsv(path)) {
    ++s.records;
    ++s.per_scorer[r.scorer_id];
  }
  return s;
}

void ScoreTable::add(const std::vector<ScoreRecord>& records) {
  for (const auto& r : records) {
    auto it = scores_.find(r.scorer_id);
    if (it == scores_.end()) {
      it = scores_.emplace(r.scorer_id, std::map<std::string, double>{}).first;
      order_.push_back(r.scorer_id);
      bases_.emplace(r.scorer_id, r.log_base);
    }
    if (!it->second.emplace(r.sentence_id, r.score).second) {
      throw SchemaError("duplicate score for " + r.sentence_id + " (" + r.scorer_id + ")");
    }
  }
}

std::vector<std::string> ScoreTable::scorers() const { return order_; }

bool ScoreTable::has_scorer(std::string_view scorer_id) const { return scores_.find(scorer_id) != scores_.end(); }

std::optional<double> ScoreTable::lookup(std::string_view scorer_id, std::string_view sentence_id) const {
  auto it = scores_.find(scorer_id);
  if (it == scores_.end()) return std::nullopt;
  auto jt = it->second.find(std::string(sentence_id));
  if (jt == it->second.end()) return std::nullopt;
  return jt->second;
}

const std::map<std::string, double>& ScoreTable::scores_for(std::string_view scorer_id) const {
  auto it = scores_.find(scorer_id);
  if (it == scores_.end()) throw UsageError("no scores for scorer '" + std::string(scorer_id) + "'");
  return it->second;
}

std::string ScoreTable::log_base(std::string_view scorer_id) const {
  auto it = bases_.find(scorer_id);
  return it == bases_.end() ? std::string() : it->second;
}

}  // namespace minpair
