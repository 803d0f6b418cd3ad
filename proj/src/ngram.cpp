#include "minpair/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace minpair {

std::string_view to_string(Level level) { return level == Level::Word ? "word" : "tag"; }

Level parse_level(std::string_view s) {
  if (s == "word") return Level::Word;
  if (s == "tag") return Level::Tag;
  throw ConfigError("unknown model level '" + std::string(s) + "' (expected word|tag)");
}

std::string_view to_string(SmoothingScheme scheme) {
  return scheme == SmoothingScheme::AddK ? "add_k" : "stupid_backoff";
}

SmoothingScheme parse_smoothing_scheme(std::string_view s) {
  if (s == "add_k") return SmoothingScheme::AddK;
  if (s == "stupid_backoff") return SmoothingScheme::StupidBackoff;
  throw ConfigError("unknown smoothing scheme '" + std::string(s) + "' (expected add_k|stupid_backoff)");
}

void SmoothingConfig::validate() const {
  if (!(k > 0) || !std::isfinite(k)) throw ConfigError("smoothing k must be > 0");
  if (!(alpha > 0) || alpha > 1) throw ConfigError("backoff alpha must be in (0, 1]");
  if (unk_threshold < 0) throw ConfigError("unk_threshold must be >= 0");
}

std::string SmoothingConfig::describe() const {
  return std::string(to_string(scheme)) + " k=" + format_double(k) + " alpha=" + format_double(alpha) +
         " unk_threshold=" + std::to_string(unk_threshold);
}

NGramModel::NGramModel() {
  vocab_ = {kUnkToken, kBosToken, kEosToken};
  for (std::uint32_t i = 0; i < vocab_.size(); ++i) vocab_index_.emplace(vocab_[i], i);
  nodes_.emplace_back();
}

std::uint32_t NGramModel::add_token(const std::string& token) {
  auto [it, inserted] = vocab_index_.try_emplace(token, static_cast<std::uint32_t>(vocab_.size()));
  if (inserted) vocab_.push_back(token);
  return it->second;
}

std::uint32_t NGramModel::id_of(std::string_view token) const {
  auto it = vocab_index_.find(std::string(token));
  if (it == vocab_index_.end() || it->second == kBos) return kUnk;
  return it->second;
}

std::uint32_t NGramModel::child(std::uint32_t parent, std::uint32_t word) const {
  auto it = children_.find(key(parent, word));
  return it == children_.end() ? kNoNode : it->second;
}

std::uint32_t NGramModel::child_or_create(std::uint32_t parent, std::uint32_t word) {
  auto [it, inserted] = children_.try_emplace(key(parent, word), static_cast<std::uint32_t>(nodes_.size()));
  if (inserted) {
    Node n;
    n.parent = parent;
    n.word = word;
    n.depth = nodes_[parent].depth + 1;
    nodes_.push_back(n);
  }
  return it->second;
}

std::uint32_t NGramModel::find_path(const std::uint32_t* ids, std::size_t n) const {
  std::uint32_t node = 0;
  for (std::size_t i = 0; i < n; ++i) {
    node = child(node, ids[i]);
    if (node == kNoNode) return kNoNode;
  }
  return node;
}

void NGramModel::add_ngram_count(const std::vector<std::uint32_t>& path, std::uint64_t c) {
  std::uint32_t node = 0;
  std::uint32_t parent = 0;
  for (auto id : path) {
    parent = node;
    node = child_or_create(node, id);
  }
  nodes_[node].count += c;
  nodes_[parent].child_total += c;
}

std::vector<std::uint32_t> NGramModel::path_of(std::uint32_t node) const {
  std::vector<std::uint32_t> path;
  while (node != 0) {
    path.push_back(nodes_[node].word);
    node = nodes_[node].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::uint64_t NGramModel::total_tokens() const noexcept { return nodes_[0].child_total; }

double NGramModel::uni_prob_id(std::uint32_t word) const {
  const auto n = child(0, word);
  const double c = n == kNoNode ? 0.0 : static_cast<double>(nodes_[n].count);
  return (c + smoothing_.k) /
         (static_cast<double>(total_tokens()) + smoothing_.k * static_cast<double>(predictable_size()));
}

double NGramModel::backoff_score(std::uint32_t ctx, std::uint32_t word) const {
  double scale = 1.0;
  while (ctx != 0) {
    const auto n = child(ctx, word);
    if (n != kNoNode && nodes_[n].count > 0) {
      return scale * static_cast<double>(nodes_[n].count) / static_cast<double>(nodes_[ctx].child_total);
    }
    scale *= smoothing_.alpha;
    ctx = nodes_[ctx].backoff;
  }
  return scale * uni_prob_id(word);
}

void NGramModel::finalize() {
  // Backoff links: a node's backoff is the node of its n-gram minus the
  // first token. Processing by depth guarantees the parent's link exists.
  std::vector<std::uint32_t> by_depth(nodes_.size());
  std::iota(by_depth.begin(), by_depth.end(), 0u);
  std::stable_sort(by_depth.begin(), by_depth.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return nodes_[a].depth < nodes_[b].depth; });
  for (auto idx : by_depth) {
    auto& n = nodes_[idx];
    if (idx == 0) continue;
    if (n.depth == 1) {
      n.backoff = 0;
      continue;
    }
    const auto b = child(nodes_[n.parent].backoff, n.word);
    if (b == kNoNode) throw SchemaError("n-gram table is not suffix-closed");
    n.backoff = b;
  }

  for (auto& n : nodes_) n.norm = 1.0;
  if (smoothing_.scheme != SmoothingScheme::StupidBackoff) return;

  // seen_mass[C] = sum over continuations w of C of S(w | backoff(C)).
  std::vector<double> seen_mass(nodes_.size(), 0.0);
  for (std::uint32_t idx = 1; idx < nodes_.size(); ++idx) {
    const auto& n = nodes_[idx];
    if (n.depth < 2 || n.count == 0) continue;
    const auto& b = nodes_[n.backoff];
    const double s = b.depth == 1 ? uni_prob_id(n.word)
                                  : static_cast<double>(b.count) / static_cast<double>(nodes_[b.parent].child_total);
    seen_mass[n.parent] += s;
  }
  for (auto idx : by_depth) {
    auto& n = nodes_[idx];
    if (idx == 0 || n.child_total == 0) continue;
    const double lower = nodes_[n.backoff].norm;
    n.norm = 1.0 + smoothing_.alpha * (lower - seen_mass[idx]);
  }
}

std::vector<std::uint32_t> NGramModel::map_ids(const std::vector<std::string>& tokens) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id_of(t));
  return ids;
}

double NGramModel::prob_ids(const std::vector<std::uint32_t>& seq, std::size_t end, std::uint32_t word) const {
  const std::size_t h = std::min<std::size_t>(end, static_cast<std::size_t>(order_ - 1));
  const std::uint32_t* hist = seq.data() + (end - h);

  if (smoothing_.scheme == SmoothingScheme::AddK) {
    if (h == 0) return uni_prob_id(word);
    const auto ctx = find_path(hist, h);
    double c = 0, tot = 0;
    if (ctx != kNoNode) {
      tot = static_cast<double>(nodes_[ctx].child_total);
      const auto n = child(ctx, word);
      if (n != kNoNode) c = static_cast<double>(nodes_[n].count);
    }
    return (c + smoothing_.k) / (tot + smoothing_.k * static_cast<double>(predictable_size()));
  }

  for (std::size_t len = h; len > 0; --len) {
    const auto ctx = find_path(hist + (h - len), len);
    if (ctx != kNoNode && nodes_[ctx].child_total > 0) {
      return backoff_score(ctx, word) / nodes_[ctx].norm;
    }
  }
  return uni_prob_id(word);
}

double NGramModel::prob(const std::vector<std::string>& history, std::string_view token) const {
  auto seq = map_ids(history);
  const auto w = token == kEosToken ? kEos : id_of(token);
  return prob_ids(seq, seq.size(), w);
}

double NGramModel::unigram_prob(std::string_view token) const {
  return uni_prob_id(token == kEosToken ? kEos : id_of(token));
}

double NGramModel::sequence_logprob(const std::vector<std::string>& tokens, bool include_eos) const {
  if (!trained()) throw UsageError("n-gram model is empty");
  const std::size_t pad = static_cast<std::size_t>(order_ - 1);
  std::vector<std::uint32_t> seq(pad, kBos);
  for (auto id : map_ids(tokens)) seq.push_back(id);
  if (include_eos) seq.push_back(kEos);
  double lp = 0;
  for (std::size_t i = pad; i < seq.size(); ++i) lp += std::log(prob_ids(seq, i, seq[i]));
  return lp;
}

double NGramModel::sequence_unigram_logprob(const std::vector<std::string>& tokens) const {
  if (!trained()) throw UsageError("n-gram model is empty");
  double lp = 0;
  for (auto id : map_ids(tokens)) lp += std::log(uni_prob_id(id));
  return lp + std::log(uni_prob_id(kEos));
}

std::vector<std::vector<std::string>> NGramModel::contexts() const {
  std::vector<std::vector<std::string>> out;
  for (std::uint32_t idx = 0; idx < nodes_.size(); ++idx) {
    if (nodes_[idx].child_total == 0 || nodes_[idx].depth >= static_cast<std::uint32_t>(order_)) continue;
    std::vector<std::string> ctx;
    for (auto id : path_of(idx)) ctx.push_back(vocab_[id]);
    out.push_back(std::move(ctx));
  }
  return out;
}

std::uint64_t NGramModel::count(const std::vector<std::string>& ngram) const {
  std::vector<std::uint32_t> ids;
  for (const auto& t : ngram) {
    auto it = vocab_index_.find(t);
    ids.push_back(it == vocab_index_.end() ? kUnk : it->second);
  }
  const auto n = find_path(ids.data(), ids.size());
  return n == kNoNode ? 0 : nodes_[n].count;
}

// ---------------------------------------------------------------------------

NGramModel train_ngram(const TrainingCorpus& corpus, int order, Level level,
                       const SmoothingConfig& smoothing, const TagModel* tagger) {
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  smoothing.validate();
  if (level == Level::Tag && (tagger == nullptr || tagger->empty())) {
    throw ConfigError("a tag-level model requires a trained tagger");
  }
  if (corpus.token_count() == 0) throw UsageError("cannot train on an empty corpus");

  // Tag streams are materialized once; word streams are read twice.
  std::vector<std::vector<std::string>> tag_lines;
  if (level == Level::Tag) {
    corpus.for_each([&](const TrainingCorpus::Line& l) { tag_lines.push_back(tag_tokens(*tagger, l.tokens)); });
  }
  auto each_stream = [&](const auto& fn) {
    if (level == Level::Tag) {
      for (const auto& t : tag_lines) fn(t);
    } else {
      corpus.for_each([&](const TrainingCorpus::Line& l) { fn(l.tokens); });
    }
  };

  std::unordered_map<std::string, std::uint64_t> freq;
  each_stream([&](const std::vector<std::string>& toks) {
    for (const auto& t : toks) ++freq[t];
  });

  NGramModel m;
  m.order_ = order;
  m.level_ = level;
  m.smoothing_ = smoothing;
  std::vector<std::string> kept;
  for (const auto& [tok, c] : freq) {
    if (c > static_cast<std::uint64_t>(smoothing.unk_threshold) && m.vocab_index_.find(tok) == m.vocab_index_.end()) {
      kept.push_back(tok);
    }
  }
  std::sort(kept.begin(), kept.end());
  for (const auto& t : kept) m.add_token(t);

  const std::size_t pad = static_cast<std::size_t>(order - 1);
  // bos_chain[k] is the node for k consecutive <s> symbols.
  std::vector<std::uint32_t> bos_chain(order, 0);
  for (std::size_t k = 1; k < static_cast<std::size_t>(order); ++k) bos_chain[k] = m.child_or_create(bos_chain[k - 1], NGramModel::kBos);

  std::vector<std::uint32_t> prev(order + 1, 0), cur(order + 1, 0);
  std::vector<std::uint32_t> seq;
  each_stream([&](const std::vector<std::string>& toks) {
    if (toks.empty()) return;
    seq.assign(pad, NGramModel::kBos);
    for (const auto& t : toks) seq.push_back(m.id_of(t));
    seq.push_back(NGramModel::kEos);
    for (std::size_t k = 0; k <= pad; ++k) prev[k] = bos_chain[k];
    for (std::size_t i = pad; i < seq.size(); ++i) {
      cur[0] = 0;
      for (std::size_t k = 1; k <= static_cast<std::size_t>(order); ++k) {
        cur[k] = m.child_or_create(prev[k - 1], seq[i]);
        m.nodes_[cur[k]].count += 1;
        m.nodes_[prev[k - 1]].child_total += 1;
      }
      std::swap(prev, cur);
    }
  });
  m.finalize();
  return m;
}

namespace {

const std::vector<std::string>& stream_for(const NGramModel& model, const Sentence& s) {
  if (model.level() == Level::Tag) {
    if (s.tags.size() != s.tokens.size() || (s.tags.empty() && !s.tokens.empty())) {
      throw UsageError("tag-level model applied to untagged sentence " + s.id);
    }
    return s.tags;
  }
  return s.tokens;
}

}  // namespace

double logprob(const NGramModel& model, const Sentence& sentence) {
  return model.sequence_logprob(stream_for(model, sentence), true);
}

double unigram_logprob(const NGramModel& model, const Sentence& sentence) {
  return model.sequence_unigram_logprob(stream_for(model, sentence));
}

double slor(const NGramModel& model, const Sentence& sentence) {
  const auto& toks = stream_for(model, sentence);
  if (toks.empty()) throw UsageError("SLOR is undefined for an empty sentence (" + sentence.id + ")");
  return (model.sequence_logprob(toks, true) - model.sequence_unigram_logprob(toks)) /
         static_cast<double>(toks.size());
}

// ---------------------------------------------------------------------------
// Format:
//   minpair-ngram 1
//   order <n>
//   level word|tag
//   smoothing <scheme> k=<k> alpha=<alpha> unk_threshold=<t>
//   vocab <V>
//   <token>            (V lines, id order)
//   ngrams <M>
//   <id id ...>\t<count>   (M lines, sorted by id path)

std::string serialize(const NGramModel& m) {
  std::ostringstream out;
  out << NGramModel::kFormatVersion << '\n';
  out << "order " << m.order_ << '\n';
  out << "level " << to_string(m.level_) << '\n';
  out << "smoothing " << m.smoothing_.describe() << '\n';
  out << "vocab " << m.vocab_.size() << '\n';
  for (const auto& t : m.vocab_) out << t << '\n';

  std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> grams;
  for (std::uint32_t idx = 1; idx < m.nodes_.size(); ++idx) {
    if (m.nodes_[idx].count > 0) grams.emplace_back(m.path_of(idx), m.nodes_[idx].count);
  }
  std::sort(grams.begin(), grams.end());
  out << "ngrams " << grams.size() << '\n';
  for (const auto& [path, c] : grams) {
    for (std::size_t i = 0; i < path.size(); ++i) out << (i ? " " : "") << path[i];
    out << '\t' << c << '\n';
  }
  return out.str();
}

NGramModel parse_ngram_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto expect = [&](std::string_view prefix) {
    if (!std::getline(in, line) || !starts_with(line, prefix)) {
      throw SchemaError("n-gram model: expected '" + std::string(prefix) + "' line");
    }
    return line.substr(prefix.size());
  };
  if (!std::getline(in, line) || line != NGramModel::kFormatVersion) {
    throw SchemaError("not a minpair n-gram model (bad header)");
  }
  NGramModel m;
  m.order_ = static_cast<int>(parse_int(expect("order "), "order"));
  if (m.order_ < 1) throw SchemaError("n-gram model: bad order");
  m.level_ = parse_level(expect("level "));
  const auto sm = split_ws(expect("smoothing "));
  if (sm.size() != 4) throw SchemaError("n-gram model: malformed smoothing line");
  m.smoothing_.scheme = parse_smoothing_scheme(sm[0]);
  auto kv = [&](const std::string& item, std::string_view name) {
    if (!starts_with(item, std::string(name) + "=")) throw SchemaError("n-gram model: expected " + std::string(name));
    return item.substr(name.size() + 1);
  };
  m.smoothing_.k = parse_double(kv(sm[1], "k"), "k");
  m.smoothing_.alpha = parse_double(kv(sm[2], "alpha"), "alpha");
  m.smoothing_.unk_threshold = static_cast<int>(parse_int(kv(sm[3], "unk_threshold"), "unk_threshold"));
  m.smoothing_.validate();

  const auto nvocab = parse_int(expect("vocab "), "vocab size");
  if (nvocab < 3) throw SchemaError("n-gram model: vocabulary lacks reserved symbols");
  for (long long i = 0; i < nvocab; ++i) {
    if (!std::getline(in, line)) throw SchemaError("n-gram model: truncated vocabulary");
    if (i < 3) {
      if (line != m.vocab_[static_cast<std::size_t>(i)]) throw SchemaError("n-gram model: reserved symbol mismatch");
      continue;
    }
    if (m.add_token(line) != static_cast<std::uint32_t>(i)) throw SchemaError("n-gram model: duplicate token " + line);
  }
  const auto ngrams = parse_int(expect("ngrams "), "n-gram count");
  std::vector<std::uint32_t> path;
  for (long long i = 0; i < ngrams; ++i) {
    if (!std::getline(in, line)) throw SchemaError("n-gram model: truncated n-gram table");
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw SchemaError("n-gram model: malformed n-gram line");
    path.clear();
    for (const auto& id : split_ws(std::string_view(line).substr(0, tab))) {
      const auto v = parse_int(id, "token id");
      if (v < 0 || v >= nvocab) throw SchemaError("n-gram model: token id out of range");
      path.push_back(static_cast<std::uint32_t>(v));
    }
    if (path.empty() || path.size() > static_cast<std::size_t>(m.order_)) throw SchemaError("n-gram model: bad n-gram length");
    const auto c = parse_int(std::string_view(line).substr(tab + 1), "count");
    if (c <= 0) throw SchemaError("n-gram model: non-positive count");
    m.add_ngram_count(path, static_cast<std::uint64_t>(c));
  }
  m.finalize();
  return m;
}

void save_ngram_model(const NGramModel& model, const std::filesystem::path& path) {
  write_file(path, serialize(model));
}

NGramModel load_ngram_model(const std::filesystem::path& path) { return parse_ngram_model(read_file(path)); }

}  // namespace minpair
