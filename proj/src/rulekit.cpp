#include "minpair/rulekit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "minpair/error.hpp"
#include "minpair/text.hpp"

namespace minpair {

// Defined in the generated builtin_rulepacks.cpp.
namespace builtin {
extern const char* const kZorroRules;
extern const char* const kBlimpRules;
}  // namespace builtin

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, String, Int, LParen, RParen, LBracket, RBracket, Comma, Colon, Equals, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long value = 0;
  std::size_t line = 1;
  std::size_t col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      t.value = std::stoll(t.text);
      advance(j - i);
    } else if (c == '"') {
      advance();
      std::string s;
      bool closed = false;
      while (i < src.size()) {
        const char d = src[i];
        if (d == '\n') break;
        if (d == '"') {
          advance();
          closed = true;
          break;
        }
        if (d == '\\' && i + 1 < src.size()) {
          s.push_back(src[i + 1]);
          advance(2);
          continue;
        }
        s.push_back(d);
        advance();
      }
      if (!closed) throw ParseError("unterminated string", t.line, t.col);
      t.kind = Tok::String;
      t.text = std::move(s);
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case ',': t.kind = Tok::Comma; break;
        case ':': t.kind = Tok::Colon; break;
        case '=': t.kind = Tok::Equals; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      t.text = std::string(1, c);
      advance();
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// ---------------------------------------------------------------------------
// Untyped syntax tree

struct Node {
  enum class Kind { Call, Ident, String, Int, List };
  Kind kind = Kind::Ident;
  std::string text;
  long long value = 0;
  std::vector<Node> args;
  std::size_t line = 0;
  std::size_t col = 0;
};

struct RuleStmt {
  std::vector<Token> keys;
  bool pairwise = false;
  Node body;
  std::size_t line = 0;
};

struct SetStmt {
  Token name;
  Node value;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  void parse(std::vector<SetStmt>& sets, std::vector<RuleStmt>& rules,
             std::vector<std::pair<Token, Token>>& options) {
    while (peek().kind != Tok::End) {
      const Token kw = expect(Tok::Ident, "statement keyword");
      if (kw.text == "set") {
        SetStmt s;
        s.name = expect(Tok::Ident, "set name");
        expect(Tok::Equals, "'='");
        s.value = term();
        sets.push_back(std::move(s));
      } else if (kw.text == "rule") {
        RuleStmt r;
        r.line = kw.line;
        r.keys.push_back(expect(Tok::Ident, "paradigm key"));
        while (peek().kind == Tok::Comma) {
          next();
          r.keys.push_back(expect(Tok::Ident, "paradigm key"));
        }
        expect(Tok::Colon, "':'");
        if (peek().kind == Tok::Ident && peek().text == "pairwise") {
          next();
          r.pairwise = true;
        }
        r.body = term();
        rules.push_back(std::move(r));
      } else if (kw.text == "option") {
        const Token name = expect(Tok::Ident, "option name");
        expect(Tok::Equals, "'='");
        const Token value = expect(Tok::Ident, "option value");
        options.emplace_back(name, value);
      } else {
        throw ParseError("expected 'set', 'rule' or 'option', found '" + kw.text + "'", kw.line, kw.col);
      }
    }
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }

  Token expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) throw ParseError("expected " + what + ", found " + describe(t), t.line, t.col);
    return next();
  }

  Node term() {
    const Token t = next();
    Node n;
    n.line = t.line;
    n.col = t.col;
    switch (t.kind) {
      case Tok::String:
        n.kind = Node::Kind::String;
        n.text = t.text;
        return n;
      case Tok::Int:
        n.kind = Node::Kind::Int;
        n.value = t.value;
        return n;
      case Tok::LBracket:
        n.kind = Node::Kind::List;
        if (peek().kind != Tok::RBracket) {
          n.args.push_back(term());
          while (peek().kind == Tok::Comma) {
            next();
            n.args.push_back(term());
          }
        }
        expect(Tok::RBracket, "']'");
        return n;
      case Tok::Ident:
        n.text = t.text;
        if (peek().kind == Tok::LParen) {
          next();
          n.kind = Node::Kind::Call;
          if (peek().kind != Tok::RParen) {
            n.args.push_back(term());
            while (peek().kind == Tok::Comma) {
              next();
              n.args.push_back(term());
            }
          }
          expect(Tok::RParen, "')'");
        } else {
          n.kind = Node::Kind::Ident;
        }
        return n;
      default:
        throw ParseError("expected an expression, found " + describe(t), t.line, t.col);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Typed compilation

[[noreturn]] void fail(const Node& n, const std::string& msg) { throw ParseError(msg, n.line, n.col); }

class Compiler {
 public:
  explicit Compiler(const std::map<std::string, WordSet>& sets) : sets_(sets) {}

  std::vector<std::string> strings(const Node& n) const {
    switch (n.kind) {
      case Node::Kind::String:
        return {n.text};
      case Node::Kind::List: {
        std::vector<std::string> out;
        for (const auto& a : n.args) {
          auto v = strings(a);
          out.insert(out.end(), v.begin(), v.end());
        }
        return out;
      }
      case Node::Kind::Ident: {
        auto it = sets_.find(n.text);
        if (it == sets_.end()) fail(n, "undefined set '" + n.text + "'");
        return it->second.members;
      }
      default:
        fail(n, "expected a string, list or set name");
    }
  }

  WordTest word_test(const Node& n) const {
    WordTest t;
    if (n.kind != Node::Kind::Call) {
      t.kind = WordTest::Kind::Equals;
      t.values = strings(n);
      return t;
    }
    if (n.text == "suffix" || n.text == "prefix") {
      arity(n, 1, 1);
      t.kind = n.text == "suffix" ? WordTest::Kind::Suffix : WordTest::Kind::Prefix;
      t.values = strings(n.args[0]);
      return t;
    }
    if (n.text == "not") {
      arity(n, 1, 1);
      t.kind = WordTest::Kind::Not;
    } else if (n.text == "and" || n.text == "or") {
      arity(n, 1, 64);
      t.kind = n.text == "and" ? WordTest::Kind::And : WordTest::Kind::Or;
    } else {
      fail(n, "unknown word test '" + n.text + "'");
    }
    for (const auto& a : n.args) t.operands.push_back(word_test(a));
    return t;
  }

  Predicate predicate(const Node& n) const {
    Predicate p;
    if (n.kind == Node::Kind::Ident && (n.text == "true" || n.text == "false")) {
      p.kind = n.text == "true" ? Predicate::Kind::True : Predicate::Kind::False;
      return p;
    }
    if (n.kind != Node::Kind::Call) fail(n, "expected a predicate");
    const auto& name = n.text;
    const auto& a = n.args;
    if (name == "word") {
      arity(n, 2, 2);
      p.kind = Predicate::Kind::Word;
      p.index = position(a[0]);
      p.tests.push_back(word_test(a[1]));
    } else if (name == "after") {
      arity(n, 3, 3);
      p.kind = Predicate::Kind::After;
      p.tests.push_back(word_test(a[0]));
      p.index = integer(a[1]);
      p.tests.push_back(word_test(a[2]));
    } else if (name == "contains" || name == "contains_any") {
      arity(n, 1, 1);
      p.kind = Predicate::Kind::Contains;
      p.tests.push_back(word_test(a[0]));
    } else if (name == "substring") {
      arity(n, 1, 1);
      if (a[0].kind != Node::Kind::String) fail(a[0], "substring expects a string");
      p.kind = Predicate::Kind::Substring;
      p.text = a[0].text;
    } else if (name == "count_is") {
      arity(n, 2, 2);
      p.kind = Predicate::Kind::CountIs;
      p.tests.push_back(word_test(a[0]));
      p.index = integer(a[1]);
      if (p.index < 0) fail(a[1], "count must be non-negative");
    } else if (name == "even" || name == "odd") {
      arity(n, 1, 1);
      p.kind = name == "even" ? Predicate::Kind::Even : Predicate::Kind::Odd;
      p.tests.push_back(word_test(a[0]));
    } else if (name == "adjacent" || name == "before" || name == "ends_with_after") {
      arity(n, 2, 2);
      p.kind = name == "adjacent" ? Predicate::Kind::Adjacent
               : name == "before" ? Predicate::Kind::Before
                                  : Predicate::Kind::EndsWithAfter;
      p.tests.push_back(word_test(a[0]));
      p.tests.push_back(word_test(a[1]));
    } else if (name == "repeats") {
      arity(n, 1, 1);
      p.kind = Predicate::Kind::Repeats;
      p.index = position(a[0]);
    } else if (name == "if") {
      arity(n, 2, 3);
      p.kind = Predicate::Kind::If;
      for (const auto& x : a) p.operands.push_back(predicate(x));
      if (p.operands.size() == 2) p.operands.push_back(Predicate{});
    } else if (name == "iff") {
      arity(n, 2, 2);
      p.kind = Predicate::Kind::Iff;
      for (const auto& x : a) p.operands.push_back(predicate(x));
    } else if (name == "and" || name == "or") {
      arity(n, 1, 64);
      p.kind = name == "and" ? Predicate::Kind::And : Predicate::Kind::Or;
      for (const auto& x : a) p.operands.push_back(predicate(x));
    } else if (name == "not") {
      arity(n, 1, 1);
      p.kind = Predicate::Kind::Not;
      p.operands.push_back(predicate(a[0]));
    } else {
      fail(n, "unknown predicate '" + name + "'");
    }
    return p;
  }

  void comparator(const Node& n, Rule& r) const {
    r.kind = Rule::Kind::Pairwise;
    if (n.kind == Node::Kind::Ident && n.text == "shorter") {
      r.comparator = Comparator::Shorter;
    } else if (n.kind == Node::Kind::Ident && n.text == "longer") {
      r.comparator = Comparator::Longer;
    } else if (n.kind == Node::Kind::Call && n.text == "farther_right") {
      arity(n, 1, 1);
      r.comparator = Comparator::FartherRight;
      r.target = word_test(n.args[0]);
    } else {
      fail(n, "expected a comparator: shorter, longer or farther_right(...)");
    }
  }

 private:
  static void arity(const Node& n, std::size_t lo, std::size_t hi) {
    if (n.args.size() < lo || n.args.size() > hi) {
      const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
      fail(n, "'" + n.text + "' expects " + want + " argument(s), got " + std::to_string(n.args.size()));
    }
  }
  static int integer(const Node& n) {
    if (n.kind != Node::Kind::Int) fail(n, "expected an integer");
    return static_cast<int>(n.value);
  }
  static int position(const Node& n) {
    const int v = integer(n);
    if (v == 0) fail(n, "positions are 1-based; 0 is not a position");
    return v;
  }

  const std::map<std::string, WordSet>& sets_;
};

// ---------------------------------------------------------------------------
// Evaluation helpers

std::vector<std::string> positions_of(const std::vector<std::string>& tokens, PositionMode mode) {
  if (mode == PositionMode::Tokens) return tokens;
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (!is_punct_token(t)) out.push_back(t);
  }
  return out;
}

bool has_alpha(std::string_view t) {
  return std::any_of(t.begin(), t.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

std::optional<std::size_t> resolve(int index, std::size_t n) {
  if (index > 0 && static_cast<std::size_t>(index) <= n) return static_cast<std::size_t>(index - 1);
  if (index < 0 && static_cast<std::size_t>(-index) <= n) return n - static_cast<std::size_t>(-index);
  return std::nullopt;
}

bool eval_pred(const Predicate& p, const std::vector<std::string>& seq, const std::vector<std::string>& all) {
  using K = Predicate::Kind;
  const std::size_t n = seq.size();
  switch (p.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Word: {
      const auto i = resolve(p.index, n);
      return i && p.tests[0].matches(seq[*i]);
    }
    case K::After:
      for (std::size_t i = 0; i < n; ++i) {
        if (!p.tests[0].matches(seq[i])) continue;
        const long long j = static_cast<long long>(i) + p.index;
        if (j >= 0 && j < static_cast<long long>(n) && p.tests[1].matches(seq[static_cast<std::size_t>(j)])) {
          return true;
        }
      }
      return false;
    case K::Contains:
      return std::any_of(seq.begin(), seq.end(), [&](const std::string& w) { return p.tests[0].matches(w); });
    case K::Substring:
      return join(all, " ").find(p.text) != std::string::npos;
    case K::CountIs:
    case K::Even:
    case K::Odd: {
      std::size_t c = 0;
      for (const auto& w : all) {
        if (has_alpha(w) && p.tests[0].matches(w)) ++c;
      }
      if (p.kind == K::CountIs) return c == static_cast<std::size_t>(p.index);
      return (c % 2 == 0) == (p.kind == K::Even);
    }
    case K::Adjacent:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (p.tests[0].matches(seq[i]) && p.tests[1].matches(seq[i + 1])) return true;
      }
      return false;
    case K::Before: {
      bool seen = false;
      for (const auto& w : seq) {
        if (seen && p.tests[1].matches(w)) return true;
        if (p.tests[0].matches(w)) seen = true;
      }
      return false;
    }
    case K::Repeats: {
      const auto i = resolve(p.index, n);
      if (!i) return false;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != *i && seq[j] == seq[*i]) return true;
      }
      return false;
    }
    case K::EndsWithAfter: {
      if (n < 2) return false;
      for (std::size_t i = n - 1; i-- > 0;) {
        if (p.tests[0].matches(seq[i])) return p.tests[1].matches(seq[n - 1]);
      }
      return false;
    }
    case K::If:
      return eval_pred(p.operands[0], seq, all) ? eval_pred(p.operands[1], seq, all)
                                                 : eval_pred(p.operands[2], seq, all);
    case K::Iff:
      return eval_pred(p.operands[0], seq, all) == eval_pred(p.operands[1], seq, all);
    case K::And:
      return std::all_of(p.operands.begin(), p.operands.end(),
                         [&](const Predicate& q) { return eval_pred(q, seq, all); });
    case K::Or:
      return std::any_of(p.operands.begin(), p.operands.end(),
                         [&](const Predicate& q) { return eval_pred(q, seq, all); });
    case K::Not:
      return !eval_pred(p.operands[0], seq, all);
  }
  return false;
}

RuleVerdict pick(bool good, bool bad) {
  if (good == bad) return RuleVerdict::Abstain;
  return good ? RuleVerdict::ChooseGood : RuleVerdict::ChooseBad;
}

std::optional<std::size_t> last_match(const WordTest& t, const std::vector<std::string>& seq) {
  for (std::size_t i = seq.size(); i-- > 0;) {
    if (t.matches(seq[i])) return i;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

bool WordTest::matches(std::string_view token) const {
  switch (kind) {
    case Kind::Equals:
      return std::find(values.begin(), values.end(), token) != values.end();
    case Kind::Suffix:
      return std::any_of(values.begin(), values.end(), [&](const std::string& v) { return ends_with(token, v); });
    case Kind::Prefix:
      return std::any_of(values.begin(), values.end(), [&](const std::string& v) { return starts_with(token, v); });
    case Kind::Not:
      return !operands[0].matches(token);
    case Kind::And:
      return std::all_of(operands.begin(), operands.end(), [&](const WordTest& t) { return t.matches(token); });
    case Kind::Or:
      return std::any_of(operands.begin(), operands.end(), [&](const WordTest& t) { return t.matches(token); });
  }
  return false;
}

const Rule* Rulepack::find(std::string_view paradigm) const {
  for (const auto& r : rules) {
    if (r.paradigm == paradigm) return &r;
  }
  return nullptr;
}

Rulepack parse_rulepack(std::string_view source, std::string name) {
  std::vector<SetStmt> set_stmts;
  std::vector<RuleStmt> rule_stmts;
  std::vector<std::pair<Token, Token>> options;
  Parser(lex(source)).parse(set_stmts, rule_stmts, options);

  Rulepack pack;
  pack.name = std::move(name);
  for (const auto& [key, value] : options) {
    if (key.text != "positions") throw ParseError("unknown option '" + key.text + "'", key.line, key.col);
    if (value.text == "tokens") {
      pack.positions = PositionMode::Tokens;
    } else if (value.text == "words") {
      pack.positions = PositionMode::Words;
    } else {
      throw ParseError("positions must be 'tokens' or 'words'", value.line, value.col);
    }
  }

  std::map<std::string, WordSet> sets;
  // Sets may reference sets defined earlier in the file.
  for (const auto& s : set_stmts) {
    if (sets.count(s.name.text)) throw ParseError("duplicate set '" + s.name.text + "'", s.name.line, s.name.col);
    WordSet ws;
    ws.name = s.name.text;
    ws.members = Compiler(sets).strings(s.value);
    sets.emplace(ws.name, ws);
    pack.sets.push_back(std::move(ws));
  }

  const Compiler compiler(sets);
  std::set<std::string> seen;
  for (const auto& stmt : rule_stmts) {
    Rule proto;
    proto.line = stmt.line;
    proto.positions = pack.positions;
    if (stmt.pairwise) {
      compiler.comparator(stmt.body, proto);
    } else {
      proto.kind = Rule::Kind::PerSentence;
      proto.body = compiler.predicate(stmt.body);
    }
    for (const auto& key : stmt.keys) {
      if (!seen.insert(key.text).second) {
        throw ParseError("duplicate rule for paradigm '" + key.text + "'", key.line, key.col);
      }
      Rule r = proto;
      r.paradigm = key.text;
      pack.rules.push_back(std::move(r));
    }
  }
  return pack;
}

std::vector<std::string> builtin_rulepack_names() { return {"blimp", "zorro"}; }

std::string_view builtin_rulepack_source(std::string_view name) {
  if (name == "zorro") return builtin::kZorroRules;
  if (name == "blimp") return builtin::kBlimpRules;
  throw UsageError("unknown builtin rulepack '" + std::string(name) + "' (expected blimp|zorro)");
}

Rulepack load_rulepack(const std::string& spec) {
  if (starts_with(spec, "builtin:")) {
    const auto name = spec.substr(8);
    return parse_rulepack(builtin_rulepack_source(name), spec);
  }
  return parse_rulepack(read_file(spec), spec);
}

std::string_view to_string(RuleVerdict v) {
  switch (v) {
    case RuleVerdict::ChooseGood: return "choose_good";
    case RuleVerdict::ChooseBad: return "choose_bad";
    case RuleVerdict::Abstain: return "abstain";
  }
  return "abstain";
}

bool holds(const Predicate& p, const std::vector<std::string>& tokens, PositionMode positions) {
  return eval_pred(p, positions_of(tokens, positions), tokens);
}

RuleVerdict apply_rule(const Rule& rule, const MinimalPair& pair) {
  const auto& g = pair.good.tokens;
  const auto& b = pair.bad.tokens;
  if (rule.kind == Rule::Kind::PerSentence) {
    return pick(holds(rule.body, g, rule.positions), holds(rule.body, b, rule.positions));
  }
  switch (rule.comparator) {
    case Comparator::Shorter:
    case Comparator::Longer: {
      const auto lg = join(g, " ").size();
      const auto lb = join(b, " ").size();
      if (lg == lb) return RuleVerdict::Abstain;
      return pick((lg < lb) == (rule.comparator == Comparator::Shorter),
                  (lb < lg) == (rule.comparator == Comparator::Shorter));
    }
    case Comparator::FartherRight: {
      const auto ig = last_match(rule.target, positions_of(g, rule.positions));
      const auto ib = last_match(rule.target, positions_of(b, rule.positions));
      if (!ig && !ib) return RuleVerdict::Abstain;
      if (!ib) return RuleVerdict::ChooseGood;
      if (!ig) return RuleVerdict::ChooseBad;
      return pick(*ig > *ib, *ib > *ig);
    }
  }
  return RuleVerdict::Abstain;
}

RuleReport eval_rulepack(const Rulepack& pack, const std::vector<MinimalPair>& pairs,
                         const RuleEvalOptions& options) {
  RuleReport report;
  report.rulepack = pack.name;
  report.options = options;
  std::map<std::string, std::size_t> index;
  for (const auto& p : pairs) {
    auto [it, inserted] = index.try_emplace(p.paradigm, report.paradigms.size());
    if (inserted) {
      ParadigmRuleResult r;
      r.paradigm = p.paradigm;
      r.phenomenon = p.phenomenon;
      r.covered = pack.find(p.paradigm) != nullptr;
      report.paradigms.push_back(std::move(r));
    }
    auto& r = report.paradigms[it->second];
    ++r.pairs;
    if (!r.covered) continue;
    switch (apply_rule(*pack.find(p.paradigm), p)) {
      case RuleVerdict::ChooseGood: ++r.chose_good; break;
      case RuleVerdict::ChooseBad: ++r.chose_bad; break;
      case RuleVerdict::Abstain: ++r.abstained; break;
    }
  }
  const double credit = options.strict ? 0.0 : options.abstain_credit;
  double sum = 0;
  std::size_t defined = 0;
  for (auto& r : report.paradigms) {
    if (!r.covered) {
      report.uncovered.push_back(r.paradigm);
      r.accuracy = options.strict ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    } else {
      r.accuracy = 100.0 * (static_cast<double>(r.chose_good) + credit * static_cast<double>(r.abstained)) /
                   static_cast<double>(r.pairs);
    }
    if (!std::isnan(r.accuracy)) {
      sum += r.accuracy;
      ++defined;
    }
  }
  report.macro_average = defined ? sum / static_cast<double>(defined) : std::numeric_limits<double>::quiet_NaN();
  return report;
}

std::string rule_report_tsv(const RuleReport& report) {
  std::ostringstream out;
  out << "phenomenon\tparadigm\tpairs\tchose_good\tchose_bad\tabstained\taccuracy\n";
  for (const auto& r : report.paradigms) {
    out << r.phenomenon << '\t' << r.paradigm << '\t' << r.pairs << '\t' << r.chose_good << '\t' << r.chose_bad
        << '\t' << r.abstained << '\t' << (r.covered || report.options.strict ? format_fixed(r.accuracy, 2) : "NA")
        << '\n';
  }
  out << "macro_average\t\t\t\t\t\t" << format_fixed(report.macro_average, 2) << '\n';
  return out.str();
}

}  // namespace minpair
