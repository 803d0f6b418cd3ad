#include "minpair/config.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "minpair/error.hpp"
#include "minpair/hashing.hpp"
#include "minpair/text.hpp"

namespace minpair {

namespace {

enum class Type { String, Int, Double, Bool, Choice };

struct KeySpec {
  const char* key;
  const char* default_value;
  Type type;
  std::vector<std::string> choices;
};

const std::vector<KeySpec>& specs() {
  static const std::vector<KeySpec> s = {
      {"abstain_credit", "0.5", Type::Double, {}},
      {"gradient.correlation", "pearson", Type::Choice, {"pearson", "spearman"}},
      {"gradient.inclusion", "", Type::String, {}},
      {"gradient.std", "population", Type::Choice, {"population", "sample"}},
      {"ngram.level", "word", Type::Choice, {"word", "tag"}},
      {"ngram.order", "5", Type::Int, {}},
      {"seed", "20230601", Type::Int, {}},
      {"smoothing.alpha", "0.4", Type::Double, {}},
      {"smoothing.k", "1", Type::Double, {}},
      {"smoothing.scheme", "stupid_backoff", Type::Choice, {"stupid_backoff", "add_k"}},
      {"smoothing.unk_threshold", "1", Type::Int, {}},
      {"strict", "false", Type::Bool, {}},
      {"tagger.epochs", "5", Type::Int, {}},
      {"tagger.heldout_fraction", "0.05", Type::Double, {}},
      {"tie_policy", "half", Type::Choice, {"half", "zero"}},
      {"zorro.layout", "bad_first", Type::Choice, {"bad_first", "good_first"}},
  };
  return s;
}

const KeySpec& spec_of(const std::string& key) {
  for (const auto& s : specs()) {
    if (key == s.key) return s;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

void check(const KeySpec& s, const std::string& v) {
  try {
    switch (s.type) {
      case Type::String:
        if (v.find('\n') != std::string::npos) throw ConfigError("multi-line value");
        return;
      case Type::Int:
        parse_int(v, s.key);
        return;
      case Type::Double:
        parse_double(v, s.key);
        return;
      case Type::Bool:
        if (v != "true" && v != "false") throw ConfigError("expected true or false");
        return;
      case Type::Choice:
        if (std::find(s.choices.begin(), s.choices.end(), v) == s.choices.end()) {
          throw ConfigError("expected one of " + join(s.choices, "|"));
        }
        return;
    }
  } catch (const Error& e) {
    throw ConfigError("config key '" + std::string(s.key) + "' = '" + v + "': " + e.what());
  }
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& s : specs()) values_.emplace(s.key, s.default_value);
}

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& s : specs()) k.emplace_back(s.key);
    return k;
  }();
  return keys;
}

RunConfig RunConfig::parse(std::string_view text, const std::string& origin) {
  RunConfig c;
  bool versioned = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const auto where = origin + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key == "version") {
      if (value != std::to_string(kVersion)) throw ConfigError(where + "unsupported config version '" + value + "'");
      versioned = true;
      continue;
    }
    try {
      c.set(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (!versioned) throw ConfigError(origin + ": missing 'version = " + std::to_string(kVersion) + "' line");
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) { return parse(read_file(path), path.string()); }

void RunConfig::set(const std::string& key, const std::string& value) {
  check(spec_of(key), value);
  values_[key] = value;
}

const std::string& RunConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

double RunConfig::get_double(const std::string& key) const { return parse_double(get(key), key); }
long long RunConfig::get_int(const std::string& key) const { return parse_int(get(key), key); }
bool RunConfig::get_bool(const std::string& key) const { return get(key) == "true"; }

std::string RunConfig::serialize() const {
  std::ostringstream out;
  out << "# minpair run configuration\n";
  out << "version = " << kVersion << '\n';
  for (const auto& [k, v] : values_) out << k << " = " << v << '\n';
  return out.str();
}

std::string RunConfig::hash() const { return sha256_hex(serialize()); }

void Manifest::add_input(const std::filesystem::path& p) { inputs.emplace_back(p.string(), hash_dataset(p)); }

void Manifest::add_output(const std::filesystem::path& p) { outputs.emplace_back(p.string(), hash_file(p)); }

std::string Manifest::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["tool"] = "minpair";
  j["version"] = kToolVersion;
  j["subcommand"] = subcommand;
  j["config_sha256"] = config.hash();
  ordered_json cfg;
  for (const auto& [k, v] : config.values()) cfg[k] = v;
  j["config"] = cfg;
  auto list = [](const std::vector<std::pair<std::string, std::string>>& xs, const char* a, const char* b) {
    ordered_json arr = ordered_json::array();
    for (const auto& [x, y] : xs) arr.push_back(ordered_json{{a, x}, {b, y}});
    return arr;
  };
  j["arguments"] = list(arguments, "flag", "value");
  j["inputs"] = list(inputs, "path", "sha256");
  j["outputs"] = list(outputs, "path", "sha256");
  j["facts"] = list(facts, "name", "value");
  return j.dump(2) + "\n";
}

void Manifest::write(const std::filesystem::path& path) const { write_file(path, to_json()); }

}  // namespace minpair
