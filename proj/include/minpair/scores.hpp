#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace minpair {

/// One sentence score. `log_base` is "e" for log-scale scores and "none"
/// for scores that are not logarithms (human z-scores).
struct ScoreRecord {
  std::string sentence_id;
  std::string scorer_id;
  double score = 0.0;
  std::string log_base = "e";
};

/// Score file: UTF-8 TSV with the header
///   sentence_id  scorer_id  score  log_base
/// Scores must be finite; log_base is one of e, 2, 10, none; each
/// (sentence_id, scorer_id) appears once.
inline constexpr const char* kScoreHeader = "sentence_id\tscorer_id\tscore\tlog_base";

std::string scores_tsv(const std::vector<ScoreRecord>& records);
void write_scores_tsv(const std::filesystem::path& path, const std::vector<ScoreRecord>& records);

/// Parses and validates a score file. Throws SchemaError naming the line on
/// any violation.
std::vector<ScoreRecord> parse_scores_tsv(std::string_view text, const std::string& origin = "<input>");
std::vector<ScoreRecord> read_scores_tsv(const std::filesystem::path& path);

struct ScoreFileSummary {
  std::size_t records = 0;
  std::map<std::string, std::size_t> per_scorer;
};

/// Schema checker for externally produced score files.
ScoreFileSummary check_score_file(const std::filesystem::path& path);

/// Scores indexed by scorer then sentence id.
class ScoreTable {
 public:
  ScoreTable() = default;
  explicit ScoreTable(const std::vector<ScoreRecord>& records) { add(records); }

  /// Throws SchemaError on a duplicate (scorer, sentence) entry.
  void add(const std::vector<ScoreRecord>& records);

  std::vector<std::string> scorers() const;  // first-insertion order
  bool has_scorer(std::string_view scorer_id) const;
  std::optional<double> lookup(std::string_view scorer_id, std::string_view sentence_id) const;
  const std::map<std::string, double>& scores_for(std::string_view scorer_id) const;  // UsageError if absent
  std::string log_base(std::string_view scorer_id) const;

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::map<std::string, double>, std::less<>> scores_;
  std::map<std::string, std::string, std::less<>> bases_;
};

}  // namespace minpair
