#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "minpair/dataio.hpp"

namespace minpair {

/// Greedy left-to-right averaged-perceptron tagger. Immutable once trained;
/// concurrent `tag` calls are safe.
struct TagModel {
  static constexpr const char* kFormatVersion = "minpair-tagger 1";

  std::vector<std::string> tagset;  // sorted; index is the tag id
  // feature -> sparse (tag id, averaged weight) list, sorted by tag id
  std::unordered_map<std::string, std::vector<std::pair<int, double>>> weights;
  std::string version;

  bool empty() const noexcept { return tagset.empty(); }
};

struct TaggedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

struct TaggerOptions {
  int epochs = 5;
  std::uint64_t seed = 20230601;
  double heldout_fraction = 0.05;
};

struct TaggerTraining {
  TagModel model;
  std::size_t train_sentences = 0;
  std::size_t heldout_sentences = 0;
  std::size_t heldout_tokens = 0;
  double heldout_accuracy = 0.0;  // NaN when nothing was held out
};

/// Trains on `corpus` after holding out a seeded `heldout_fraction` of the
/// sentences for evaluation. Throws UsageError on an empty corpus or
/// `epochs < 1`, SchemaError naming the sentence on a token/tag length
/// mismatch.
TaggerTraining train_tagger(const std::vector<TaggedSentence>& corpus,
                            const TaggerOptions& options = {});

/// Convenience overload reading a tagged TrainingCorpus.
TaggerTraining train_tagger(const TrainingCorpus& tagged_corpus, const TaggerOptions& options = {});

std::vector<std::string> tag_tokens(const TagModel& model, const std::vector<std::string>& tokens);

/// Returns a copy of `sentence` with `tags` filled, one per token.
Sentence tag(const TagModel& model, Sentence sentence);

/// Fraction of tokens tagged correctly. Empty input yields NaN.
double tagging_accuracy(const TagModel& model, const std::vector<TaggedSentence>& gold);

/// Accuracy of always emitting the most frequent tag of `gold`.
double majority_tag_accuracy(const std::vector<TaggedSentence>& gold);

std::string serialize(const TagModel& model);
TagModel parse_tag_model(const std::string& text);
void save_tag_model(const TagModel& model, const std::filesystem::path& path);
TagModel load_tag_model(const std::filesystem::path& path);

}  // namespace minpair
