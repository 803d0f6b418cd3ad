#include "minpair/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace fs = std::filesystem;

namespace minpair {

std::string Sentence::text() const { return join(tokens, " "); }

Sentence make_sentence(std::string id, std::string raw) {
  Sentence s;
  s.id = std::move(id);
  s.tokens = tokenize(raw);
  s.raw = std::move(raw);
  return s;
}

std::string_view to_string(Source s) {
  switch (s) {
    case Source::BLiMP: return "blimp";
    case Source::Zorro: return "zorro";
    case Source::LIAdger: return "li_adger";
  }
  return "unknown";
}

Source parse_source(std::string_view s) {
  const auto low = to_lower(s);
  if (low == "blimp") return Source::BLiMP;
  if (low == "zorro") return Source::Zorro;
  if (low == "li_adger" || low == "li-adger" || low == "liadger") return Source::LIAdger;
  throw SchemaError("unknown pair source '" + std::string(s) + "'");
}

namespace {

std::vector<fs::path> list_files(const fs::path& dir, std::initializer_list<std::string_view> exts) {
  if (!fs::exists(dir)) throw IoError("no such directory: " + dir.string());
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension().string();
    if (std::find(exts.begin(), exts.end(), ext) != exts.end()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void check_pair_differs(std::vector<MinimalPair>& out, MinimalPair&& p, Diagnostics& diag) {
  if (p.good.tokens == p.bad.tokens) {
    diag.warn("pair " + p.id + " has identical sentences; skipped");
    return;
  }
  out.push_back(std::move(p));
}

}  // namespace

// ---------------------------------------------------------------------------
// BLiMP

std::vector<MinimalPair> load_blimp(const fs::path& dir, Diagnostics& diag) {
  std::vector<MinimalPair> pairs;
  const auto files = list_files(dir, {".jsonl"});
  if (files.empty()) {
    diag.warn("no BLiMP record files in " + dir.string());
    return pairs;
  }

  for (const auto& file : files) {
    const auto lines = read_lines(file);
    std::size_t in_file = 0;
    std::size_t record = 0;
    for (const auto& line : lines) {
      if (trim(line).empty()) continue;
      ++record;
      const auto where = file.filename().string() + " record " + std::to_string(record);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw IngestError(where + ": invalid JSON (" + e.what() + ")");
      }
      auto field = [&](const char* name) -> std::string {
        auto it = j.find(name);
        if (it == j.end() || !it->is_string()) {
          throw IngestError(where + ": missing field '" + name + "'");
        }
        return it->get<std::string>();
      };

      MinimalPair p;
      p.source = Source::BLiMP;
      p.paradigm = field("UID");
      p.phenomenon = field("linguistics_term");
      std::string local = std::to_string(record - 1);
      if (auto it = j.find("pair_id"); it != j.end()) {
        local = it->is_string() ? it->get<std::string>() : it->dump();
      }
      p.id = p.paradigm + "." + local;
      p.good = make_sentence(p.id + ".good", field("sentence_good"));
      p.bad = make_sentence(p.id + ".bad", field("sentence_bad"));
      if (p.paradigm.empty()) throw IngestError(where + ": empty UID");
      check_pair_differs(pairs, std::move(p), diag);
      ++in_file;
    }
    if (in_file != 1000) {
      diag.warn(file.filename().string() + ": " + std::to_string(in_file) +
                " pairs (expected 1000)");
    }
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Zorro

std::vector<MinimalPair> load_zorro(const fs::path& dir, Diagnostics& diag, ZorroLayout layout) {
  std::vector<MinimalPair> pairs;
  const auto files = list_files(dir, {".txt"});
  if (files.empty()) diag.warn("no Zorro paradigm files in " + dir.string());

  for (const auto& file : files) {
    const auto stem = file.stem().string();
    const auto dash = stem.rfind('-');
    const std::string phenomenon = dash == std::string::npos ? stem : stem.substr(0, dash);

    std::vector<std::string> lines;
    for (auto& l : read_lines(file)) {
      auto t = trim(l);
      if (!t.empty()) lines.emplace_back(t);
    }
    if (lines.size() % 2 != 0) {
      throw IngestError(file.filename().string() + ": unpaired sentence (odd line count " +
                        std::to_string(lines.size()) + ")");
    }
    for (std::size_t i = 0; i < lines.size(); i += 2) {
      const auto& first = lines[i];
      const auto& second = lines[i + 1];
      MinimalPair p;
      p.source = Source::Zorro;
      p.paradigm = stem;
      p.phenomenon = phenomenon;
      p.id = stem + "." + std::to_string(i / 2);
      const auto& good = layout == ZorroLayout::BadFirst ? second : first;
      const auto& bad = layout == ZorroLayout::BadFirst ? first : second;
      p.good = make_sentence(p.id + ".good", good);
      p.bad = make_sentence(p.id + ".bad", bad);
      check_pair_differs(pairs, std::move(p), diag);
    }
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// LI-Adger

LiAdgerId parse_li_adger_id(std::string_view sentence_id) {
  const auto parts = split(trim(sentence_id), '.');
  if (parts.size() < 3) {
    throw IngestError("malformed LI-Adger sentence id '" + std::string(sentence_id) + "'");
  }
  LiAdgerId out{};
  const auto& idx = parts.back();
  const auto& cond = parts[parts.size() - 2];
  if (idx.empty() || !std::all_of(idx.begin(), idx.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw IngestError("LI-Adger sentence id '" + std::string(sentence_id) +
                      "' lacks a numeric lexicalization index");
  }
  out.lex_index = std::stoi(idx);
  if (cond == "g") {
    out.condition = Condition::Grammatical;
  } else if (cond == "*") {
    out.condition = Condition::Star;
  } else {
    throw IngestError("LI-Adger sentence id '" + std::string(sentence_id) +
                      "' has unknown condition '" + cond + "'");
  }
  std::vector<std::string> type_parts(parts.begin(), parts.end() - 1);
  out.type_id = join(type_parts, ".");

  // Phenomenon: drop condition and index, then strip the item letter so that
  // "7a"/"7b" collapse to "7".
  std::vector<std::string> frame(parts.begin(), parts.end() - 2);
  if (!frame.empty()) {
    auto& last = frame.back();
    while (last.size() > 1 && std::isalpha(static_cast<unsigned char>(last.back())) &&
           std::isdigit(static_cast<unsigned char>(last[last.size() - 2]))) {
      last.pop_back();
    }
  }
  out.phenomenon = join(frame, ".");
  return out;
}

namespace {

// Minimal CSV field splitter: handles double-quoted fields and "" escapes.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

struct LiAdgerColumns {
  std::size_t id = 0, sentence = 1, z = 2;
  std::optional<std::size_t> phenomenon;
};

std::string normalize_header(std::string_view h) {
  std::string out;
  for (char c : to_lower(trim(h))) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::optional<LiAdgerColumns> header_columns(const std::vector<std::string>& fields) {
  LiAdgerColumns cols;
  bool id = false, sent = false, z = false;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto h = normalize_header(fields[i]);
    if (h == "sentenceid" || h == "id" || h == "itemid" || h == "item") {
      cols.id = i, id = true;
    } else if (h == "sentence" || h == "text") {
      cols.sentence = i, sent = true;
    } else if (h == "mezscore" || h == "zscore" || h == "z" || h == "mez" || h == "judgment") {
      cols.z = i, z = true;
    } else if (h == "phenomenon") {
      cols.phenomenon = i;
    }
  }
  if (id || sent || z) {
    if (!(id && sent && z)) {
      throw IngestError("LI-Adger header must name sentence id, sentence and z-score columns");
    }
    return cols;
  }
  return std::nullopt;
}

}  // namespace

std::vector<SentenceType> load_li_adger(const fs::path& dir, Diagnostics& diag) {
  const auto files = list_files(dir, {".tsv", ".csv", ".txt"});
  if (files.empty()) diag.warn("no LI-Adger tables in " + dir.string());

  std::vector<SentenceType> types;
  std::unordered_map<std::string, std::size_t> type_index;
  std::unordered_set<std::string> seen_ids;

  for (const auto& file : files) {
    const auto lines = read_lines(file);
    std::optional<LiAdgerColumns> cols;
    bool first = true;
    std::size_t lineno = 0;
    for (const auto& line : lines) {
      ++lineno;
      if (trim(line).empty()) continue;
      const bool tab = line.find('\t') != std::string::npos;
      auto fields = tab ? split(line, '\t') : split_csv(line);
      if (first) {
        first = false;
        if (auto h = header_columns(fields)) {
          cols = *h;
          continue;
        }
        cols = LiAdgerColumns{};
        if (fields.size() >= 4) cols->phenomenon = 3;
      }
      const auto where = file.filename().string() + ":" + std::to_string(lineno);
      const auto need = std::max({cols->id, cols->sentence, cols->z}) + 1;
      if (fields.size() < need) throw IngestError(where + ": expected at least " + std::to_string(need) + " columns");

      const std::string sid(trim(fields[cols->id]));
      const auto parsed = parse_li_adger_id(sid);
      if (!seen_ids.insert(sid).second) throw IngestError(where + ": duplicate sentence id " + sid);

      double z = 0;
      try {
        z = parse_double(fields[cols->z], where);
      } catch (const SchemaError& e) {
        throw IngestError(e.what());
      }

      auto [it, inserted] = type_index.try_emplace(parsed.type_id, types.size());
      if (inserted) {
        SentenceType t;
        t.type_id = parsed.type_id;
        t.condition = parsed.condition;
        t.phenomenon = parsed.phenomenon;
        types.push_back(std::move(t));
      }
      auto& t = types[it->second];
      if (cols->phenomenon && *cols->phenomenon < fields.size()) {
        std::string ph(trim(fields[*cols->phenomenon]));
        if (!ph.empty()) t.phenomenon = ph;
      }
      t.sentences.push_back(make_sentence(sid, std::string(trim(fields[cols->sentence]))));
      t.human_z.push_back(z);
      t.lex_index.push_back(parsed.lex_index);
    }
  }

  for (auto& t : types) {
    if (t.sentences.size() != SentenceType::kLexicalizations) {
      throw IngestError("sentence type " + t.type_id + " has " + std::to_string(t.sentences.size()) +
                        " lexicalizations (expected 8)");
    }
    // Order lexicalizations by index so downstream code can rely on it.
    std::vector<std::size_t> order(t.sentences.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return t.lex_index[a] < t.lex_index[b]; });
    SentenceType sorted = t;
    for (std::size_t i = 0; i < order.size(); ++i) {
      sorted.sentences[i] = t.sentences[order[i]];
      sorted.human_z[i] = t.human_z[order[i]];
      sorted.lex_index[i] = t.lex_index[order[i]];
    }
    t = std::move(sorted);
  }
  return types;
}

std::vector<MinimalPair> build_li_adger_pairs(const std::vector<SentenceType>& types,
                                              Diagnostics& diag) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const SentenceType*>> by_phenomenon;
  for (const auto& t : types) {
    auto [it, inserted] = by_phenomenon.try_emplace(t.phenomenon);
    if (inserted) order.push_back(t.phenomenon);
    it->second.push_back(&t);
  }

  std::vector<MinimalPair> pairs;
  std::set<std::pair<std::string, std::string>> seen_ids;
  std::set<std::pair<std::string, std::string>> seen_text;

  for (const auto& ph : order) {
    const auto& members = by_phenomenon[ph];
    std::vector<const SentenceType*> good, bad;
    for (const auto* t : members) {
      (t->condition == Condition::Grammatical ? good : bad).push_back(t);
    }
    if (good.empty() || bad.empty()) {
      diag.warn("phenomenon " + ph + " lacks a " + (bad.empty() ? "starred" : "grammatical") +
                " condition; no pairs built");
      continue;
    }
    for (const auto* g : good) {
      for (const auto* b : bad) {
        for (std::size_t i = 0; i < g->sentences.size(); ++i) {
          const auto j = std::find(b->lex_index.begin(), b->lex_index.end(), g->lex_index[i]);
          if (j == b->lex_index.end()) continue;
          const auto& gs = g->sentences[i];
          const auto& bs = b->sentences[static_cast<std::size_t>(j - b->lex_index.begin())];
          if (gs.tokens == bs.tokens) continue;
          if (!seen_ids.emplace(gs.id, bs.id).second) continue;
          if (!seen_text.emplace(gs.text(), bs.text()).second) continue;

          MinimalPair p;
          p.source = Source::LIAdger;
          p.paradigm = ph;
          p.phenomenon = starts_with(ph, "ch") ? "adger" : "li";
          p.id = gs.id + "|" + bs.id;
          p.good = gs;
          p.bad = bs;
          pairs.push_back(std::move(p));
        }
      }
    }
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Training corpora

TrainingCorpus::Line parse_tagged_line(std::string_view line) {
  TrainingCorpus::Line out;
  for (const auto& item : split_ws(line)) {
    const auto us = item.rfind('_');
    if (us == std::string::npos || us == 0 || us + 1 == item.size()) {
      throw SchemaError("tagged item without token_TAG form: '" + item + "'");
    }
    out.tokens.push_back(to_lower(item.substr(0, us)));
    out.tags.push_back(item.substr(us + 1));
  }
  return out;
}

namespace {

std::optional<TrainingCorpus::Line> parse_corpus_line(std::string_view line, CorpusFormat format) {
  if (trim(line).empty()) return std::nullopt;
  if (format == CorpusFormat::Tagged) return parse_tagged_line(line);
  TrainingCorpus::Line l;
  l.tokens = tokenize(line);
  return l;
}

}  // namespace

TrainingCorpus TrainingCorpus::from_lines(std::string name, const std::vector<std::string>& lines,
                                          CorpusFormat format) {
  TrainingCorpus c;
  c.name_ = std::move(name);
  c.format_ = format;
  c.lines_ = lines;
  for (const auto& l : lines) {
    if (auto parsed = parse_corpus_line(l, format)) {
      ++c.sentence_count_;
      c.token_count_ += parsed->tokens.size();
    }
  }
  return c;
}

void TrainingCorpus::for_each(const std::function<void(const Line&)>& fn) const {
  if (!path_) {
    for (const auto& l : lines_) {
      if (auto parsed = parse_corpus_line(l, format_)) fn(*parsed);
    }
    return;
  }
  std::ifstream in(*path_, std::ios::binary);
  if (!in) throw IoError("cannot open " + path_->string());
  std::string line;
  while (std::getline(in, line)) {
    if (auto parsed = parse_corpus_line(line, format_)) fn(*parsed);
  }
}

TrainingCorpus load_training_corpus(const fs::path& path, CorpusFormat format, Diagnostics& diag) {
  if (!fs::is_regular_file(path)) throw IoError("cannot read corpus " + path.string());
  TrainingCorpus c;
  c.name_ = path.filename().string();
  c.format_ = format;
  c.path_ = path;
  c.for_each([&](const TrainingCorpus::Line& l) {
    ++c.sentence_count_;
    c.token_count_ += l.tokens.size();
  });
  if (c.token_count_ == 0) diag.warn("corpus " + path.string() + " is empty");
  return c;
}

// ---------------------------------------------------------------------------
// Interchange files

namespace {

void check_field(const std::string& s, const std::string& what) {
  if (s.find_first_of("\t\n\r") != std::string::npos) {
    throw SchemaError(what + " contains a tab or newline: '" + s + "'");
  }
}

constexpr std::string_view kPairsHeader =
    "pair_id\tsource\tphenomenon\tparadigm\tgood_sentence\tbad_sentence\tgood_id\tbad_id";

}  // namespace

std::string pairs_tsv(const std::vector<MinimalPair>& pairs) {
  std::string out(kPairsHeader);
  out += '\n';
  for (const auto& p : pairs) {
    const std::string* fields[] = {&p.id, &p.phenomenon, &p.paradigm, &p.good.raw,
                                   &p.bad.raw, &p.good.id, &p.bad.id};
    for (const auto* f : fields) check_field(*f, "pair " + p.id);
    out += p.id + '\t' + std::string(to_string(p.source)) + '\t' + p.phenomenon + '\t' +
           p.paradigm + '\t' + p.good.raw + '\t' + p.bad.raw + '\t' + p.good.id + '\t' +
           p.bad.id + '\n';
  }
  return out;
}

void write_pairs_tsv(const fs::path& path, const std::vector<MinimalPair>& pairs) {
  write_file(path, pairs_tsv(pairs));
}

std::vector<MinimalPair> read_pairs_tsv(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw SchemaError(path.string() + ": empty pairs file");
  const auto header = split(lines[0], '\t');
  if (header.size() < 6 || header[0] != "pair_id" || header[4] != "good_sentence") {
    throw SchemaError(path.string() + ": not a normalized pairs file");
  }
  std::vector<MinimalPair> pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i], '\t');
    if (f.size() != header.size()) {
      throw SchemaError(path.string() + ":" + std::to_string(i + 1) + ": expected " +
                        std::to_string(header.size()) + " columns, got " + std::to_string(f.size()));
    }
    MinimalPair p;
    p.id = f[0];
    p.source = parse_source(f[1]);
    p.phenomenon = f[2];
    p.paradigm = f[3];
    const std::string good_id = f.size() >= 8 ? f[6] : p.id + ".good";
    const std::string bad_id = f.size() >= 8 ? f[7] : p.id + ".bad";
    p.good = make_sentence(good_id, f[4]);
    p.bad = make_sentence(bad_id, f[5]);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void write_sentences_tsv(const fs::path& path, const std::vector<Sentence>& sents) {
  const bool tagged = std::any_of(sents.begin(), sents.end(),
                                  [](const Sentence& s) { return !s.tags.empty(); });
  std::string out = tagged ? "sentence_id\tsentence\ttags\n" : "sentence_id\tsentence\n";
  for (const auto& s : sents) {
    check_field(s.id, "sentence id");
    check_field(s.raw, "sentence " + s.id);
    out += s.id + '\t' + s.raw;
    if (tagged) out += '\t' + join(s.tags, " ");
    out += '\n';
  }
  write_file(path, out);
}

std::vector<Sentence> read_sentences_tsv(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw SchemaError(path.string() + ": empty sentences file");
  const auto header = split(lines[0], '\t');
  if (header.size() < 2 || header[0] != "sentence_id" || header[1] != "sentence") {
    throw SchemaError(path.string() + ": not a sentences file");
  }
  const bool tagged = header.size() >= 3 && header[2] == "tags";
  std::vector<Sentence> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split(lines[i], '\t');
    if (f.size() != header.size()) {
      throw SchemaError(path.string() + ":" + std::to_string(i + 1) + ": column count mismatch");
    }
    auto s = make_sentence(f[0], f[1]);
    if (tagged) {
      s.tags = split_ws(f[2]);
      if (s.tags.size() != s.tokens.size()) {
        throw SchemaError(path.string() + ":" + std::to_string(i + 1) +
                          ": tag count differs from token count");
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> collect_sentences(const std::vector<MinimalPair>& pairs) {
  std::vector<Sentence> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : pairs) {
    for (const auto* s : {&p.good, &p.bad}) {
      if (seen.insert(s->id).second) out.push_back(*s);
    }
  }
  return out;
}

}  // namespace minpair
