#include "hylls/parser.hpp"

#include <algorithm>
#include <cctype>

namespace hylls {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : std::runtime_error("position " + std::to_string(offset) + ": " + what), kind_(kind), offset_(offset) {}

std::vector<Token> tokenize(const std::string& text, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') break;  // comment to end of input line
    std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < text.size() && is_ident_char(text[i])) ++i;
      out.push_back({Token::Kind::Ident, text.substr(start, i - start), base + start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i + 1 < text.size() && text[i] == '/' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      out.push_back({Token::Kind::Number, text.substr(start, i - start), base + start});
    } else {
      static const char* multi[] = {"-o", "=>", "-|", "|-"};
      bool matched = false;
      for (const char* m : multi) {
        std::size_t len = std::char_traits<char>::length(m);
        if (text.compare(i, len, m) == 0) {
          out.push_back({Token::Kind::Symbol, m, base + start});
          i += len;
          matched = true;
          break;
        }
      }
      if (!matched) {
        out.push_back({Token::Kind::Symbol, std::string(1, c), base + start});
        ++i;
      }
    }
  }
  out.push_back({Token::Kind::End, "", base + text.size()});
  return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t p = std::min(pos_ + ahead, toks_.size() - 1);
  return toks_[p];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ < toks_.size() - 1) ++pos_;
  return t;
}

bool TokenStream::accept(const std::string& s) {
  const Token& t = peek();
  if (t.kind != Token::Kind::End && t.kind != Token::Kind::Number && t.text == s) {
    next();
    return true;
  }
  return false;
}

void TokenStream::expect(const std::string& s) {
  if (!accept(s)) fail("expected '" + s + "'" + (at_end() ? " at end of input" : ", found '" + peek().text + "'"));
}

std::string TokenStream::expect_ident() {
  if (peek().kind != Token::Kind::Ident)
    fail("expected identifier" + (at_end() ? std::string(" at end of input") : ", found '" + peek().text + "'"));
  return next().text;
}

void TokenStream::fail(const std::string& msg) const { throw ParseError(ParseError::Kind::Syntax, peek().offset, msg); }

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"at", "down", "forall", "exists", "world", "top", "box", "dia", "delay", "iota"};
  return k;
}

int find_bound(const std::vector<std::string>& bound, const std::string& name) {
  for (std::size_t i = bound.size(); i-- > 0;)
    if (bound[i] == name) return static_cast<int>(bound.size() - 1 - i);
  return -1;
}

void check_arity(SymbolTable& table, const std::string& name, unsigned arity, std::size_t offset) {
  auto it = table.functions.find(name);
  if (it == table.functions.end()) {
    table.functions.emplace(name, arity);
    return;
  }
  if (it->second != arity)
    throw ParseError(ParseError::Kind::ArityMismatch, offset,
                     "'" + name + "' used with " + std::to_string(arity) + " argument(s), declared with " +
                         std::to_string(it->second));
}

Term make_list(std::vector<Term> items) {
  Term t = Term::constant("nil");
  for (std::size_t i = items.size(); i-- > 0;) t = Term::app("cons", {items[i], t});
  return t;
}

class FormulaParser {
 public:
  FormulaParser(TokenStream& ts, const ConstraintDomain& d, SymbolTable& table) : ts_(ts), d_(d), table_(table) {}

  Formula formula() { return limp(); }

 private:
  Formula limp() {
    Formula a = plus();
    if (ts_.accept("-o")) return Formula::limp(a, limp());
    return a;
  }
  Formula plus() {
    Formula a = with();
    while (ts_.accept("+")) a = Formula::plus(a, with());
    return a;
  }
  Formula with() {
    Formula a = tensor();
    while (ts_.accept("&")) a = Formula::with(a, tensor());
    return a;
  }
  Formula tensor() {
    Formula a = postfix();
    while (ts_.accept("*")) a = Formula::tensor(a, postfix());
    return a;
  }
  Formula postfix() {
    Formula a = prefix();
    while (ts_.peek().kind == Token::Kind::Ident && ts_.peek().text == "at") {
      ts_.next();
      a = Formula::at(a, parse_world(ts_, d_, table_, wbound_));
    }
    return a;
  }
  Formula prefix() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Symbol && t.text == "!") {
      ts_.next();
      return Formula::bang(prefix());
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "box") {
        ts_.next();
        return Formula::box(prefix());
      }
      if (t.text == "dia") {
        ts_.next();
        return Formula::dia(prefix());
      }
      if (t.text == "delay") {
        ts_.next();
        ts_.expect("[");
        WorldExpr w = parse_world(ts_, d_, table_, wbound_);
        ts_.expect("]");
        return Formula::delay(w, prefix());
      }
      if (t.text == "down") {
        ts_.next();
        return world_binder(Connective::Down);
      }
      if (t.text == "forall" || t.text == "exists") {
        bool forall = t.text == "forall";
        ts_.next();
        if (ts_.peek().kind == Token::Kind::Ident && ts_.peek().text == "world") {
          ts_.next();
          return world_binder(forall ? Connective::ForallWorld : Connective::ExistsWorld);
        }
        std::string name = binder_name();
        ts_.expect(".");
        tbound_.push_back(name);
        Formula body = formula();
        tbound_.pop_back();
        return forall ? Formula::forall_term(name, body) : Formula::exists_term(name, body);
      }
    }
    return primary();
  }

  std::string binder_name() {
    std::size_t off = ts_.peek().offset;
    std::string n = ts_.expect_ident();
    if (keywords().count(n)) throw ParseError(ParseError::Kind::Syntax, off, "keyword '" + n + "' used as a name");
    return n;
  }

  Formula world_binder(Connective k) {
    std::string name = binder_name();
    ts_.expect(".");
    wbound_.push_back(name);
    Formula body = formula();
    wbound_.pop_back();
    if (k == Connective::Down) return Formula::down(name, body);
    if (k == Connective::ForallWorld) return Formula::forall_world(name, body);
    return Formula::exists_world(name, body);
  }

  Formula primary() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Symbol && t.text == "(") {
      ts_.next();
      Formula f = formula();
      ts_.expect(")");
      return f;
    }
    if (t.kind == Token::Kind::Number) {
      if (t.text == "1") {
        ts_.next();
        return Formula::one();
      }
      if (t.text == "0") {
        ts_.next();
        return Formula::zero();
      }
      ts_.fail("unexpected number '" + t.text + "' in formula");
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "top") {
        ts_.next();
        return Formula::top();
      }
      if (keywords().count(t.text)) ts_.fail("unexpected keyword '" + t.text + "'");
      Token name = ts_.next();
      std::vector<Term> args;
      if (ts_.accept("(")) {
        do args.push_back(parse_term(ts_, table_, tbound_));
        while (ts_.accept(","));
        ts_.expect(")");
      }
      return Formula::atom(name.text, std::move(args));
    }
    ts_.fail(t.kind == Token::Kind::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  TokenStream& ts_;
  const ConstraintDomain& d_;
  SymbolTable& table_;
  std::vector<std::string> tbound_;
  std::vector<std::string> wbound_;
};

}  // namespace

Term parse_term(TokenStream& ts, SymbolTable& table, const std::vector<std::string>& bound) {
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::Symbol && t.text == "[") {
    ts.next();
    std::vector<Term> items;
    if (!ts.accept("]")) {
      do items.push_back(parse_term(ts, table, bound));
      while (ts.accept(","));
      ts.expect("]");
    }
    return make_list(std::move(items));
  }
  if (t.kind == Token::Kind::Number) return Term::constant(ts.next().text);
  if (t.kind != Token::Kind::Ident) ts.fail("expected a term");
  Token name = ts.next();
  if (ts.accept("(")) {
    std::vector<Term> args;
    do args.push_back(parse_term(ts, table, bound));
    while (ts.accept(","));
    ts.expect(")");
    check_arity(table, name.text, static_cast<unsigned>(args.size()), name.offset);
    return Term::app(name.text, std::move(args));
  }
  if (int i = find_bound(bound, name.text); i >= 0) return Term::bound(static_cast<unsigned>(i));
  if (name.text.front() == '_' || table.term_vars.count(name.text)) return Term::free(name.text);
  check_arity(table, name.text, 0, name.offset);
  return Term::constant(name.text);
}

WorldExpr parse_world(TokenStream& ts, const ConstraintDomain& d, const SymbolTable& table,
                      const std::vector<std::string>& bound) {
  WorldExpr w = WorldExpr::iota();
  do {
    const Token& t = ts.peek();
    if (t.kind == Token::Kind::Number) {
      auto c = d.parse_const(t.text);
      if (!c) ts.fail("'" + t.text + "' is not a constant of the " + d.name() + " domain");
      ts.next();
      w = compose(d, w, WorldExpr::constant(d, *c));
    } else if (t.kind == Token::Kind::Ident) {
      Token n = ts.next();
      if (n.text == "iota") continue;
      if (int i = find_bound(bound, n.text); i >= 0)
        w = compose(d, w, WorldExpr::bound(static_cast<unsigned>(i)));
      else if (n.text.front() == '_' || table.world_vars.count(n.text))
        w = compose(d, w, WorldExpr::var(n.text));
      else
        throw ParseError(ParseError::Kind::UnboundWorldVariable, n.offset,
                         "world variable '" + n.text + "' is neither bound nor declared");
    } else {
      ts.fail("expected a world expression");
    }
  } while (ts.accept("."));
  return w;
}

Formula parse_formula(TokenStream& ts, const ConstraintDomain& d, SymbolTable& table) {
  return FormulaParser(ts, d, table).formula();
}

Formula parse_formula(const std::string& text, const ConstraintDomain& d, SymbolTable& table) {
  TokenStream ts(tokenize(text));
  Formula f = parse_formula(ts, d, table);
  if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'");
  return f;
}

Formula parse_formula(const std::string& text, const ConstraintDomain& d) {
  SymbolTable table;
  return parse_formula(text, d, table);
}

WorldExpr parse_world(const std::string& text, const ConstraintDomain& d, const SymbolTable& table) {
  TokenStream ts(tokenize(text));
  WorldExpr w = parse_world(ts, d, table, {});
  if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'");
  return w;
}

Judgment parse_judgment(const std::string& text, const ConstraintDomain& d, SymbolTable& table) {
  TokenStream ts(tokenize(text));
  Formula f = parse_formula(ts, d, table);
  ts.expect("@");
  WorldExpr w = parse_world(ts, d, table, {});
  if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'");
  return {f, w};
}

}  // namespace hylls
