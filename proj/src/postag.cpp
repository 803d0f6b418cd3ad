#include "minpair/postag.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace minpair {

namespace {

constexpr const char* kStart1 = "-START-";
constexpr const char* kStart2 = "-START2-";
constexpr const char* kEnd1 = "-END-";
constexpr const char* kEnd2 = "-END2-";

std::string suffix(const std::string& w, std::size_t n) {
  return w.size() <= n ? w : w.substr(w.size() - n);
}

std::string shape(const std::string& w) {
  bool digit = false, hyphen = false, apos = false, alpha = false;
  for (char c : w) {
    const auto u = static_cast<unsigned char>(c);
    digit |= std::isdigit(u) != 0;
    alpha |= std::isalpha(u) != 0;
    hyphen |= c == '-';
    apos |= c == '\'';
  }
  std::string s;
  s += alpha ? 'a' : '_';
  s += digit ? 'd' : '_';
  s += hyphen ? 'h' : '_';
  s += apos ? 'q' : '_';
  return s;
}

// Context window of lowercased words padded with sentinels.
std::vector<std::string> padded(const std::vector<std::string>& tokens) {
  std::vector<std::string> ctx;
  ctx.reserve(tokens.size() + 4);
  ctx.emplace_back(kStart2);
  ctx.emplace_back(kStart1);
  for (const auto& t : tokens) ctx.push_back(to_lower(t));
  ctx.emplace_back(kEnd1);
  ctx.emplace_back(kEnd2);
  return ctx;
}

std::vector<std::string> features(const std::vector<std::string>& ctx, std::size_t i,
                                  const std::string& prev, const std::string& prev2) {
  // i indexes ctx (already offset by the two start sentinels)
  const auto& w = ctx[i];
  std::vector<std::string> f;
  f.reserve(16);
  f.emplace_back("bias");
  f.push_back("w=" + w);
  f.push_back("s3=" + suffix(w, 3));
  f.push_back("s2=" + suffix(w, 2));
  f.push_back("p1=" + w.substr(0, 1));
  f.push_back("shape=" + shape(w));
  f.push_back("t-1=" + prev);
  f.push_back("t-2=" + prev2);
  f.push_back("t-1t-2=" + prev + "|" + prev2);
  f.push_back("t-1w=" + prev + "|" + w);
  f.push_back("w-1=" + ctx[i - 1]);
  f.push_back("s-1=" + suffix(ctx[i - 1], 3));
  f.push_back("w-2=" + ctx[i - 2]);
  f.push_back("w+1=" + ctx[i + 1]);
  f.push_back("s+1=" + suffix(ctx[i + 1], 3));
  f.push_back("w+2=" + ctx[i + 2]);
  return f;
}

int argmax(const std::vector<double>& scores) {
  int best = 0;
  for (int t = 1; t < static_cast<int>(scores.size()); ++t) {
    if (scores[t] > scores[best]) best = t;
  }
  return best;
}

// Mutable training-time weights with lazy averaging.
class Perceptron {
 public:
  explicit Perceptron(std::size_t ntags) : ntags_(ntags) {}

  void score(const std::vector<std::string>& feats, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& f : feats) {
      auto it = table_.find(f);
      if (it == table_.end()) continue;
      for (const auto& e : it->second) out[e.tag] += e.weight;
    }
  }

  void update(const std::vector<std::string>& feats, int truth, int guess) {
    ++instances_;
    if (truth == guess) return;
    for (const auto& f : feats) {
      bump(f, truth, 1.0);
      bump(f, guess, -1.0);
    }
  }

  TagModel finish(std::vector<std::string> tagset) {
    TagModel m;
    m.tagset = std::move(tagset);
    for (auto& [feat, entries] : table_) {
      std::vector<std::pair<int, double>> avg;
      for (auto& e : entries) {
        const double total = e.total + static_cast<double>(instances_ - e.stamp) * e.weight;
        const double w = total / static_cast<double>(std::max<std::uint64_t>(instances_, 1));
        if (w != 0.0) avg.emplace_back(e.tag, w);
      }
      std::sort(avg.begin(), avg.end());
      if (!avg.empty()) m.weights.emplace(feat, std::move(avg));
    }
    return m;
  }

 private:
  struct Entry {
    int tag;
    double weight = 0;
    double total = 0;
    std::uint64_t stamp = 0;
  };

  void bump(const std::string& f, int tag, double delta) {
    auto& entries = table_[f];
    auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return e.tag == tag; });
    if (it == entries.end()) {
      entries.push_back(Entry{tag, 0, 0, instances_});
      it = entries.end() - 1;
    }
    it->total += static_cast<double>(instances_ - it->stamp) * it->weight;
    it->stamp = instances_;
    it->weight += delta;
  }

  std::size_t ntags_;
  std::uint64_t instances_ = 0;
  std::unordered_map<std::string, std::vector<Entry>> table_;
};

// Portable Fisher-Yates: std::shuffle's draw sequence is library-specific.
void seeded_shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

TaggerTraining train_tagger(const std::vector<TaggedSentence>& corpus, const TaggerOptions& options) {
  if (options.epochs < 1) throw UsageError("epochs must be >= 1");
  if (options.heldout_fraction < 0 || options.heldout_fraction >= 1) {
    throw UsageError("heldout fraction must be in [0, 1)");
  }
  if (corpus.empty()) throw UsageError("no training data");

  std::map<std::string, int> tag_ids;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& s = corpus[i];
    if (s.tokens.size() != s.tags.size()) {
      throw SchemaError("training sentence " + std::to_string(i + 1) + " ('" + join(s.tokens, " ") +
                        "') has " + std::to_string(s.tokens.size()) + " tokens but " +
                        std::to_string(s.tags.size()) + " tags");
    }
    for (const auto& t : s.tags) tag_ids.emplace(t, 0);
  }
  if (tag_ids.empty()) throw UsageError("no training data");
  std::vector<std::string> tagset;
  for (auto& [t, id] : tag_ids) {
    id = static_cast<int>(tagset.size());
    tagset.push_back(t);
  }

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  seeded_shuffle(order, rng);

  const auto heldout_n = static_cast<std::size_t>(std::floor(options.heldout_fraction * static_cast<double>(corpus.size())));
  std::vector<std::size_t> heldout(order.end() - static_cast<std::ptrdiff_t>(heldout_n), order.end());
  std::vector<std::size_t> train(order.begin(), order.end() - static_cast<std::ptrdiff_t>(heldout_n));
  std::sort(train.begin(), train.end());
  std::sort(heldout.begin(), heldout.end());

  Perceptron p(tagset.size());
  std::vector<double> scores(tagset.size());
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    for (auto idx : train) {
      const auto& s = corpus[idx];
      const auto ctx = padded(s.tokens);
      std::string prev = kStart1, prev2 = kStart2;
      for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        const auto feats = features(ctx, i + 2, prev, prev2);
        p.score(feats, scores);
        const int guess = argmax(scores);
        const int truth = tag_ids.at(s.tags[i]);
        p.update(feats, truth, guess);
        prev2 = prev;
        prev = s.tags[i];
      }
    }
    seeded_shuffle(train, rng);
  }

  TaggerTraining out;
  out.model = p.finish(std::move(tagset));
  out.model.version = std::string(TagModel::kFormatVersion) + " seed=" + std::to_string(options.seed) +
                      " epochs=" + std::to_string(options.epochs);
  out.train_sentences = train.size();
  out.heldout_sentences = heldout.size();
  std::vector<TaggedSentence> held;
  for (auto idx : heldout) {
    held.push_back(corpus[idx]);
    out.heldout_tokens += corpus[idx].tokens.size();
  }
  out.heldout_accuracy = tagging_accuracy(out.model, held);
  return out;
}

TaggerTraining train_tagger(const TrainingCorpus& tagged_corpus, const TaggerOptions& options) {
  if (tagged_corpus.format() != CorpusFormat::Tagged) {
    throw UsageError("tagger training needs a tagged corpus (token_TAG items)");
  }
  std::vector<TaggedSentence> sents;
  tagged_corpus.for_each([&](const TrainingCorpus::Line& l) {
    sents.push_back(TaggedSentence{l.tokens, l.tags});
  });
  return train_tagger(sents, options);
}

std::vector<std::string> tag_tokens(const TagModel& model, const std::vector<std::string>& tokens) {
  if (model.empty()) throw UsageError("tag model is not trained");
  std::vector<std::string> out;
  out.reserve(tokens.size());
  if (tokens.empty()) return out;
  const auto ctx = padded(tokens);
  std::vector<double> scores(model.tagset.size());
  std::string prev = kStart1, prev2 = kStart2;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::fill(scores.begin(), scores.end(), 0.0);
    for (const auto& f : features(ctx, i + 2, prev, prev2)) {
      auto it = model.weights.find(f);
      if (it == model.weights.end()) continue;
      for (const auto& [t, w] : it->second) scores[static_cast<std::size_t>(t)] += w;
    }
    const auto& best = model.tagset[static_cast<std::size_t>(argmax(scores))];
    out.push_back(best);
    prev2 = prev;
    prev = best;
  }
  return out;
}

Sentence tag(const TagModel& model, Sentence sentence) {
  sentence.tags = tag_tokens(model, sentence.tokens);
  return sentence;
}

double tagging_accuracy(const TagModel& model, const std::vector<TaggedSentence>& gold) {
  std::size_t correct = 0, total = 0;
  for (const auto& s : gold) {
    const auto pred = tag_tokens(model, s.tokens);
    for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == s.tags[i];
    total += pred.size();
  }
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(correct) / static_cast<double>(total);
}

double majority_tag_accuracy(const std::vector<TaggedSentence>& gold) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const auto& s : gold) {
    for (const auto& t : s.tags) ++counts[t];
    total += s.tags.size();
  }
  if (total == 0) return std::numeric_limits<double>::quiet_NaN();
  std::size_t best = 0;
  for (const auto& [t, c] : counts) best = std::max(best, c);
  return static_cast<double>(best) / static_cast<double>(total);
}

// Text format:
//   minpair-tagger 1
//   version <free text>
//   tags <tag> <tag> ...
//   <feature>\t<tag id>:<weight> <tag id>:<weight> ...   (sorted by feature)
std::string serialize(const TagModel& model) {
  std::ostringstream out;
  out << TagModel::kFormatVersion << '\n';
  out << "version " << model.version << '\n';
  out << "tags " << join(model.tagset, " ") << '\n';
  std::vector<const std::string*> keys;
  keys.reserve(model.weights.size());
  for (const auto& [k, v] : model.weights) keys.push_back(&k);
  std::sort(keys.begin(), keys.end(), [](const auto* a, const auto* b) { return *a < *b; });
  for (const auto* k : keys) {
    out << *k << '\t';
    bool first = true;
    for (const auto& [t, w] : model.weights.at(*k)) {
      if (!first) out << ' ';
      first = false;
      out << t << ':' << format_double(w);
    }
    out << '\n';
  }
  return out.str();
}

TagModel parse_tag_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != TagModel::kFormatVersion) {
    throw SchemaError("not a minpair tagger model (bad header)");
  }
  TagModel m;
  if (!std::getline(in, line) || !starts_with(line, "version ")) throw SchemaError("tagger model: missing version line");
  m.version = line.substr(8);
  if (!std::getline(in, line) || !starts_with(line, "tags ")) throw SchemaError("tagger model: missing tags line");
  m.tagset = split_ws(line.substr(5));
  if (m.tagset.empty()) throw SchemaError("tagger model: empty tagset");
  const auto ntags = static_cast<long long>(m.tagset.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw SchemaError("tagger model: malformed weight line");
    std::vector<std::pair<int, double>> ws;
    for (const auto& item : split_ws(std::string_view(line).substr(tab + 1))) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw SchemaError("tagger model: malformed weight '" + item + "'");
      const auto t = parse_int(item.substr(0, colon), "tag id");
      if (t < 0 || t >= ntags) throw SchemaError("tagger model: tag id out of range");
      ws.emplace_back(static_cast<int>(t), parse_double(item.substr(colon + 1), "weight"));
    }
    m.weights.emplace(line.substr(0, tab), std::move(ws));
  }
  return m;
}

void save_tag_model(const TagModel& model, const std::filesystem::path& path) {
  write_file(path, serialize(model));
}

TagModel load_tag_model(const std::filesystem::path& path) { return parse_tag_model(read_file(path)); }

}  // namespace minpair
