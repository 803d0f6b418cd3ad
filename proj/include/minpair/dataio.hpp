#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minpair/diagnostics.hpp"

namespace minpair {

struct Sentence {
  std::string id;
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<std::string> tags;  // empty until tagged; else same length as tokens

  bool has_tags() const noexcept { return !tags.empty() || tokens.empty(); }
  std::string text() const;  // tokens joined by single spaces
};

/// Builds a sentence from raw text using the benchmark tokenizer.
Sentence make_sentence(std::string id, std::string raw);

enum class Source { BLiMP, Zorro, LIAdger };

std::string_view to_string(Source s);
Source parse_source(std::string_view s);

/// One benchmark item: `good` is the acceptable member, `bad` the other.
struct MinimalPair {
  std::string id;
  std::string paradigm;
  std::string phenomenon;
  Sentence good;
  Sentence bad;
  Source source = Source::BLiMP;
};

enum class Condition { Grammatical, Star };

/// One LI-Adger condition: eight lexicalizations of one syntactic frame,
/// each with its averaged human magnitude-estimation z-score.
struct SentenceType {
  static constexpr std::size_t kLexicalizations = 8;

  std::string type_id;     // e.g. "32.3.Culicover.7a.g"
  std::string phenomenon;  // grouping used for pairing, e.g. "32.3.Culicover.7"
  Condition condition = Condition::Grammatical;
  std::vector<Sentence> sentences;
  std::vector<double> human_z;
  std::vector<int> lex_index;  // parsed trailing index of each sentence id
};

// ---------------------------------------------------------------------------
// Benchmarks

/// Reads every `*.jsonl` file in `dir` (sorted by name). Each line is one
/// BLiMP record with `sentence_good`, `sentence_bad`, `UID` and
/// `linguistics_term`; `pair_id` is used for the pair id when present.
std::vector<MinimalPair> load_blimp(const std::filesystem::path& dir, Diagnostics& diag);

enum class ZorroLayout { BadFirst, GoodFirst };

/// Reads every `*.txt` file in `dir` (sorted by name). The file stem is
/// `<phenomenon>-<paradigm>`, split at the last hyphen; the paradigm key
/// kept on each pair is the whole stem, because bare paradigm names repeat
/// across phenomena. Non-blank lines alternate between the two members of
/// a pair in the order given by `layout`.
std::vector<MinimalPair> load_zorro(const std::filesystem::path& dir, Diagnostics& diag,
                                    ZorroLayout layout = ZorroLayout::BadFirst);

/// Reads every `*.tsv`, `*.csv` and `*.txt` table in `dir`. Columns are the
/// sentence id, the sentence, the averaged ME z-score and optionally an
/// explicit phenomenon; a header row naming them is recognized but optional.
std::vector<SentenceType> load_li_adger(const std::filesystem::path& dir, Diagnostics& diag);

/// Parses one LI-Adger sentence id ("32.3.Culicover.7a.g.01") into its type
/// id, condition, lexicalization index and derived phenomenon.
struct LiAdgerId {
  std::string type_id;
  Condition condition;
  int lex_index;
  std::string phenomenon;
};
LiAdgerId parse_li_adger_id(std::string_view sentence_id);

/// Pairs grammatical and starred conditions of each phenomenon by matching
/// lexicalization index, dropping duplicate pairs (by ids or by text).
std::vector<MinimalPair> build_li_adger_pairs(const std::vector<SentenceType>& types,
                                              Diagnostics& diag);

// ---------------------------------------------------------------------------
// Training corpora

enum class CorpusFormat { Plain, Tagged };

/// Streaming view of a one-utterance-per-line corpus. The token count is
/// established by one pass at open time; `for_each` re-reads the file.
class TrainingCorpus {
 public:
  struct Line {
    std::vector<std::string> tokens;
    std::vector<std::string> tags;  // only for CorpusFormat::Tagged
  };

  /// In-memory corpus, mostly for tests and toy models.
  static TrainingCorpus from_lines(std::string name, const std::vector<std::string>& lines,
                                   CorpusFormat format = CorpusFormat::Plain);

  const std::string& name() const noexcept { return name_; }
  CorpusFormat format() const noexcept { return format_; }
  std::size_t token_count() const noexcept { return token_count_; }
  std::size_t sentence_count() const noexcept { return sentence_count_; }

  void for_each(const std::function<void(const Line&)>& fn) const;

 private:
  friend TrainingCorpus load_training_corpus(const std::filesystem::path&, CorpusFormat,
                                             Diagnostics&);

  std::string name_;
  CorpusFormat format_ = CorpusFormat::Plain;
  std::optional<std::filesystem::path> path_;
  std::vector<std::string> lines_;  // used when path_ is empty
  std::size_t token_count_ = 0;
  std::size_t sentence_count_ = 0;
};

TrainingCorpus load_training_corpus(const std::filesystem::path& path, CorpusFormat format,
                                    Diagnostics& diag);

/// Parses one "token_TAG token_TAG ..." line. Splits each item at its last
/// underscore; throws SchemaError on an item without one.
TrainingCorpus::Line parse_tagged_line(std::string_view line);

// ---------------------------------------------------------------------------
// Normalized interchange files

/// Pair TSV: pair_id, source, phenomenon, paradigm, good_sentence,
/// bad_sentence, then good_id and bad_id so score files can be joined.
void write_pairs_tsv(const std::filesystem::path& path, const std::vector<MinimalPair>& pairs);
std::string pairs_tsv(const std::vector<MinimalPair>& pairs);
std::vector<MinimalPair> read_pairs_tsv(const std::filesystem::path& path);

/// Sentence TSV: sentence_id, sentence, and an optional space-separated tags
/// column.
void write_sentences_tsv(const std::filesystem::path& path, const std::vector<Sentence>& sents);
std::vector<Sentence> read_sentences_tsv(const std::filesystem::path& path);

/// Unique sentences of a pair list in first-appearance order.
std::vector<Sentence> collect_sentences(const std::vector<MinimalPair>& pairs);

}  // namespace minpair
