#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "minpair/dataio.hpp"
#include "minpair/postag.hpp"

namespace minpair {

enum class Level { Word, Tag };
enum class SmoothingScheme { AddK, StupidBackoff };

std::string_view to_string(Level level);
Level parse_level(std::string_view s);
std::string_view to_string(SmoothingScheme scheme);
SmoothingScheme parse_smoothing_scheme(std::string_view s);

/// `k` is the additive constant of the unigram base distribution (and of
/// every order under AddK). `alpha` is the backoff discount.
/// Training tokens seen at most `unk_threshold` times become <unk>.
struct SmoothingConfig {
  SmoothingScheme scheme = SmoothingScheme::StupidBackoff;
  double k = 1.0;
  double alpha = 0.4;
  int unk_threshold = 1;

  void validate() const;  // throws ConfigError
  std::string describe() const;
};

/// Count trie over word or tag streams. Sentences are padded with order-1
/// <s> symbols and terminated by </s>; <s> is never predicted.
///
/// Under StupidBackoff the unnormalized backoff score S(w|h) (relative
/// frequency when (h,w) was seen, else alpha * S(w|h')) is divided by its
/// per-context total, so every conditional distribution sums to one.
class NGramModel {
 public:
  static constexpr std::uint32_t kUnk = 0;
  static constexpr std::uint32_t kBos = 1;
  static constexpr std::uint32_t kEos = 2;
  static constexpr const char* kUnkToken = "<unk>";
  static constexpr const char* kBosToken = "<s>";
  static constexpr const char* kEosToken = "</s>";
  static constexpr const char* kFormatVersion = "minpair-ngram 1";
  static constexpr std::uint32_t kNoNode = 0xffffffffu;

  NGramModel();  // empty, untrained

  int order() const noexcept { return order_; }
  Level level() const noexcept { return level_; }
  const SmoothingConfig& smoothing() const noexcept { return smoothing_; }
  bool trained() const noexcept { return total_tokens() > 0; }

  /// Number of tokens that may be predicted (vocabulary minus <s>).
  std::size_t predictable_size() const noexcept { return vocab_.size() - 1; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocab_; }
  std::uint32_t id_of(std::string_view token) const;  // <unk> when unseen

  /// Conditional probability of `token` given the preceding `history`
  /// (only the last order-1 entries are used).
  double prob(const std::vector<std::string>& history, std::string_view token) const;

  /// Natural-log probability of the padded token sequence. With
  /// `include_eos` false this is the prefix probability of the tokens.
  double sequence_logprob(const std::vector<std::string>& tokens, bool include_eos = true) const;

  /// Sum of unigram log probabilities over the tokens plus </s>.
  double sequence_unigram_logprob(const std::vector<std::string>& tokens) const;

  /// Unigram probability (additively smoothed).
  double unigram_prob(std::string_view token) const;

  /// Every stored context (length < order) that has continuations.
  std::vector<std::vector<std::string>> contexts() const;

  /// Raw count of an n-gram (tokens are mapped through the vocabulary).
  std::uint64_t count(const std::vector<std::string>& ngram) const;

  std::uint64_t total_tokens() const noexcept;

  friend NGramModel train_ngram(const TrainingCorpus&, int, Level, const SmoothingConfig&,
                                const TagModel*);
  friend std::string serialize(const NGramModel& model);
  friend NGramModel parse_ngram_model(const std::string& text);

 private:
  struct Node {
    std::uint32_t parent = 0;
    std::uint32_t word = 0;
    std::uint32_t backoff = 0;
    std::uint32_t depth = 0;
    std::uint64_t count = 0;        // occurrences of this n-gram
    std::uint64_t child_total = 0;  // occurrences as a context
    double norm = 1.0;              // backoff normalizer of this context
  };

  static std::uint64_t key(std::uint32_t parent, std::uint32_t word) {
    return (static_cast<std::uint64_t>(parent) << 32) | word;
  }

  std::uint32_t add_token(const std::string& token);
  std::uint32_t child(std::uint32_t parent, std::uint32_t word) const;  // kNoNode when absent
  std::uint32_t child_or_create(std::uint32_t parent, std::uint32_t word);
  std::uint32_t find_path(const std::uint32_t* ids, std::size_t n) const;  // kNoNode when absent
  void add_ngram_count(const std::vector<std::uint32_t>& path, std::uint64_t count);
  void finalize();

  std::vector<std::uint32_t> map_ids(const std::vector<std::string>& tokens) const;
  double prob_ids(const std::vector<std::uint32_t>& history, std::size_t end, std::uint32_t word) const;
  double uni_prob_id(std::uint32_t word) const;
  double backoff_score(std::uint32_t ctx, std::uint32_t word) const;
  std::vector<std::uint32_t> path_of(std::uint32_t node) const;

  int order_ = 1;
  Level level_ = Level::Word;
  SmoothingConfig smoothing_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> vocab_index_;
  std::vector<Node> nodes_;  // nodes_[0] is the root (empty context)
  std::unordered_map<std::uint64_t, std::uint32_t> children_;
};

/// Builds a model from `corpus`. A tag-level model tags every corpus line
/// with `tagger` first. Throws UsageError on an empty corpus, ConfigError on
/// bad parameters or a missing tagger.
NGramModel train_ngram(const TrainingCorpus& corpus, int order, Level level,
                       const SmoothingConfig& smoothing, const TagModel* tagger = nullptr);

/// Log probability (natural log) of a sentence, </s> included. A tag-level
/// model scores `sentence.tags` and throws UsageError when they are absent.
double logprob(const NGramModel& model, const Sentence& sentence);
double unigram_logprob(const NGramModel& model, const Sentence& sentence);

/// (logprob - unigram_logprob) / number of tokens (</s> excluded from the
/// length). Throws UsageError on an empty sentence.
double slor(const NGramModel& model, const Sentence& sentence);

std::string serialize(const NGramModel& model);
NGramModel parse_ngram_model(const std::string& text);
void save_ngram_model(const NGramModel& model, const std::filesystem::path& path);
NGramModel load_ngram_model(const std::filesystem::path& path);

}  // namespace minpair
