#include <algorithm>
#include <sstream>

#include "hylls/sell.hpp"

namespace hylls {

// ---- signatures --------------------------------------------------------

bool SubexpSignature::leq(const std::string& a, const std::string& b) const {
  auto i = index_.find(a), j = index_.find(b);
  if (i == index_.end() || j == index_.end()) return false;
  return leq_[i->second][j->second];
}

bool SubexpSignature::unbounded(const std::string& a) const {
  auto i = index_.find(a);
  return i != index_.end() && unbounded_[i->second];
}

const std::string& SubexpSignature::type_of(const std::string& a) const {
  auto i = index_.find(a);
  return i == index_.end() ? a : type_[i->second];
}

SubexpSignature SubexpSignature::with_local(const std::string& label, const std::string& type) const {
  SubexpSignature s = *this;
  std::size_t n = labels_.size();
  std::size_t t = index_.at(type);
  s.labels_.push_back(label);
  s.index_[label] = n;
  for (auto& row : s.leq_) row.push_back(false);
  std::vector<bool> row(n + 1, false);
  for (std::size_t j = 0; j < n; ++j) row[j] = leq_[t][j];
  row[n] = true;
  s.leq_.push_back(std::move(row));
  s.unbounded_.push_back(unbounded_[t]);
  s.type_.push_back(type);
  return s;
}

SubexpSignature validate_signature(const RawSignature& raw) {
  SubexpSignature s;
  for (const auto& l : raw.labels) {
    if (s.index_.count(l)) throw SignatureError("label '" + l + "' declared twice");
    s.index_[l] = s.labels_.size();
    s.labels_.push_back(l);
  }
  std::size_t n = s.labels_.size();
  auto idx = [&](const std::string& l) {
    auto it = s.index_.find(l);
    if (it == s.index_.end()) throw SignatureError("unknown label '" + l + "'");
    return it->second;
  };
  s.leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) s.leq_[i][i] = true;
  for (const auto& [a, b] : raw.edges) s.leq_[idx(a)][idx(b)] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (s.leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (s.leq_[k][j]) s.leq_[i][j] = true;
  s.unbounded_.assign(n, false);
  for (const auto& u : raw.unbounded) s.unbounded_[idx(u)] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s.unbounded_[i] && s.leq_[i][j] && !s.unbounded_[j])
        throw SignatureError("U is not upward closed: " + s.labels_[i] + " is unbounded and " + s.labels_[i] +
                             " <= " + s.labels_[j] + ", but " + s.labels_[j] + " is not");
  s.type_ = s.labels_;
  for (const auto& [l, t] : raw.types) {
    idx(t);
    s.type_[idx(l)] = t;
  }
  return s;
}

RawSignature parse_signature(const std::string& text) {
  RawSignature raw;
  std::istringstream in(text);
  std::string line;
  std::size_t base = 0;
  while (std::getline(in, line)) {
    TokenStream ts(tokenize(line, base));
    base += line.size() + 1;
    if (ts.at_end()) continue;
    auto name = [&] {
      const Token& t = ts.peek();
      if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Number) ts.fail("expected a label");
      return ts.next().text;
    };
    std::string kw = ts.expect_ident();
    if (kw == "labels") {
      while (!ts.at_end()) raw.labels.push_back(name());
    } else if (kw == "unbounded") {
      while (!ts.at_end()) raw.unbounded.push_back(name());
    } else if (kw == "edge") {
      std::string a = name();
      std::string b = name();
      raw.edges.emplace_back(a, b);
    } else if (kw == "type") {
      std::string l = name();
      std::string t = name();
      raw.types.emplace_back(l, t);
    } else {
      ts.fail("unknown signature directive '" + kw + "'");
    }
    if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'");
  }
  return raw;
}

// ---- formulas ----------------------------------------------------------

SellFormula SellFormula::make(SellKind k, std::string name, std::vector<Term> args, std::string label,
                              std::string type, std::vector<SellFormula> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  std::size_t h = std::hash<std::string>{}(name) ^ (static_cast<std::size_t>(k) * 0x51ed27);
  h = hash_combine(h, std::hash<std::string>{}(label));
  h = hash_combine(h, std::hash<std::string>{}(type));
  for (const auto& a : args) h = hash_combine(h, a.hash());
  for (const auto& c : kids) h = hash_combine(h, c.hash());
  n->name = std::move(name);
  n->args = std::move(args);
  n->label = std::move(label);
  n->type = std::move(type);
  n->kids = std::move(kids);
  n->hash = h;
  return SellFormula(std::move(n));
}

SellFormula SellFormula::atom(std::string p, std::vector<Term> a) {
  return make(SellKind::Atom, std::move(p), std::move(a), "", "", {});
}
SellFormula SellFormula::neg_atom(std::string p, std::vector<Term> a) {
  return make(SellKind::NegAtom, std::move(p), std::move(a), "", "", {});
}
SellFormula SellFormula::tensor(SellFormula a, SellFormula b) {
  return make(SellKind::Tensor, "", {}, "", "", {std::move(a), std::move(b)});
}
SellFormula SellFormula::one() {
  static const SellFormula f = make(SellKind::One, "", {}, "", "", {});
  return f;
}
SellFormula SellFormula::plus(SellFormula a, SellFormula b) {
  return make(SellKind::Plus, "", {}, "", "", {std::move(a), std::move(b)});
}
SellFormula SellFormula::zero() { return make(SellKind::Zero, "", {}, "", "", {}); }
SellFormula SellFormula::par(SellFormula a, SellFormula b) {
  return make(SellKind::Par, "", {}, "", "", {std::move(a), std::move(b)});
}
SellFormula SellFormula::bot() { return make(SellKind::Bot, "", {}, "", "", {}); }
SellFormula SellFormula::with(SellFormula a, SellFormula b) {
  return make(SellKind::With, "", {}, "", "", {std::move(a), std::move(b)});
}
SellFormula SellFormula::top() { return make(SellKind::Top, "", {}, "", "", {}); }
SellFormula SellFormula::exists(std::string hint, SellFormula body) {
  return make(SellKind::Exists, std::move(hint), {}, "", "", {std::move(body)});
}
SellFormula SellFormula::forall(std::string hint, SellFormula body) {
  return make(SellKind::Forall, std::move(hint), {}, "", "", {std::move(body)});
}
SellFormula SellFormula::bang(std::string label, SellFormula a) {
  return make(SellKind::Bang, "", {}, std::move(label), "", {std::move(a)});
}
SellFormula SellFormula::quest(std::string label, SellFormula a) {
  return make(SellKind::Quest, "", {}, std::move(label), "", {std::move(a)});
}
SellFormula SellFormula::some(std::string var, std::string type, SellFormula body) {
  return make(SellKind::Some, std::move(var), {}, "", std::move(type), {std::move(body)});
}
SellFormula SellFormula::all(std::string var, std::string type, SellFormula body) {
  return make(SellKind::All, std::move(var), {}, "", std::move(type), {std::move(body)});
}
SellFormula SellFormula::box(std::string type, SellFormula a) {
  return make(SellKind::Box, "", {}, "", std::move(type), {std::move(a)});
}
SellFormula SellFormula::dia(std::string type, SellFormula a) {
  return make(SellKind::Dia, "", {}, "", std::move(type), {std::move(a)});
}

bool SellFormula::is_positive() const {
  switch (kind()) {
    case SellKind::Atom:
    case SellKind::Tensor:
    case SellKind::One:
    case SellKind::Plus:
    case SellKind::Zero:
    case SellKind::Exists:
    case SellKind::Bang:
    case SellKind::Some:
    case SellKind::Dia:
      return true;
    default:
      return false;
  }
}

SellFormula SellFormula::map_terms(unsigned depth, const Term& t) const {
  if (is_literal()) {
    std::vector<Term> args;
    for (const auto& a : node_->args) args.push_back(a.open(depth, t));
    return make(kind(), name(), std::move(args), "", "", {});
  }
  if (node_->kids.empty()) return *this;
  unsigned d = (kind() == SellKind::Exists || kind() == SellKind::Forall) ? depth + 1 : depth;
  std::vector<SellFormula> kids;
  for (const auto& k : node_->kids) kids.push_back(k.map_terms(d, t));
  return make(kind(), name(), {}, label(), type(), std::move(kids));
}

SellFormula SellFormula::instantiate_term(const Term& t) const { return body().map_terms(0, t); }

SellFormula SellFormula::subst_label(const std::string& var, const std::string& l) const {
  if (is_literal() || node_->kids.empty()) return *this;
  std::string lab = label() == var ? l : label();
  std::string ty = type() == var ? l : type();
  bool shadow = (kind() == SellKind::Some || kind() == SellKind::All) && name() == var;
  std::vector<SellFormula> kids;
  for (const auto& k : node_->kids) kids.push_back(shadow ? k : k.subst_label(var, l));
  return make(kind(), name(), {}, std::move(lab), std::move(ty), std::move(kids));
}

bool SellFormula::mentions_label(const std::string& l) const {
  if (label() == l || type() == l || ((kind() == SellKind::Some || kind() == SellKind::All) && name() == l))
    return true;
  return std::any_of(node_->kids.begin(), node_->kids.end(), [&](const SellFormula& k) { return k.mentions_label(l); });
}

bool SellFormula::mentions_free_term(const std::string& n) const {
  for (const auto& a : node_->args) {
    std::vector<std::string> fv;
    a.collect_free(fv);
    if (std::find(fv.begin(), fv.end(), n) != fv.end()) return true;
  }
  return std::any_of(node_->kids.begin(), node_->kids.end(),
                     [&](const SellFormula& k) { return k.mentions_free_term(n); });
}

void SellFormula::collect_ground_terms(std::vector<Term>& out) const {
  for (const auto& a : node_->args) a.collect_ground(out);
  for (const auto& k : node_->kids) k.collect_ground_terms(out);
}

void SellFormula::collect_labels(std::set<std::string>& out) const {
  if (!label().empty()) out.insert(label());
  if (!type().empty()) out.insert(type());
  for (const auto& k : node_->kids) k.collect_labels(out);
}

bool operator==(const SellFormula& a, const SellFormula& b) {
  if (a.node_ == b.node_) return true;
  return a.hash() == b.hash() && (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const SellFormula& a, const SellFormula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.label() <=> b.label(); c != 0) return c;
  if (auto c = a.type() <=> b.type(); c != 0) return c;
  if (auto c = std::lexicographical_compare_three_way(a.args().begin(), a.args().end(), b.args().begin(),
                                                      b.args().end());
      c != 0)
    return c;
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  return std::lexicographical_compare_three_way(ka.begin(), ka.end(), kb.begin(), kb.end());
}

namespace {

std::string fresh_label_var(const SellFormula& body, const std::string& base) {
  std::string v = base;
  for (unsigned i = 1; body.mentions_label(v); ++i) v = base + std::to_string(i);
  return v;
}

}  // namespace

SellFormula expand_sell_modal(const SellFormula& f) {
  switch (f.kind()) {
    case SellKind::Atom:
    case SellKind::NegAtom:
    case SellKind::One:
    case SellKind::Zero:
    case SellKind::Bot:
    case SellKind::Top:
      return f;
    case SellKind::Tensor:
      return SellFormula::tensor(expand_sell_modal(f.left()), expand_sell_modal(f.right()));
    case SellKind::Plus:
      return SellFormula::plus(expand_sell_modal(f.left()), expand_sell_modal(f.right()));
    case SellKind::Par:
      return SellFormula::par(expand_sell_modal(f.left()), expand_sell_modal(f.right()));
    case SellKind::With:
      return SellFormula::with(expand_sell_modal(f.left()), expand_sell_modal(f.right()));
    case SellKind::Exists:
      return SellFormula::exists(f.name(), expand_sell_modal(f.body()));
    case SellKind::Forall:
      return SellFormula::forall(f.name(), expand_sell_modal(f.body()));
    case SellKind::Bang:
      return SellFormula::bang(f.label(), expand_sell_modal(f.body()));
    case SellKind::Quest:
      return SellFormula::quest(f.label(), expand_sell_modal(f.body()));
    case SellKind::Some:
      return SellFormula::some(f.name(), f.type(), expand_sell_modal(f.body()));
    case SellKind::All:
      return SellFormula::all(f.name(), f.type(), expand_sell_modal(f.body()));
    case SellKind::Box:
    case SellKind::Dia: {
      SellFormula body = expand_sell_modal(f.body());
      bool plain = f.type().empty();
      std::string type = plain ? kInfinity : f.type();
      std::string v = fresh_label_var(body, plain ? "t" : "l");
      SellFormula inner = SellFormula::bang(v, body);
      return f.kind() == SellKind::Box ? SellFormula::all(v, type, inner) : SellFormula::some(v, type, inner);
    }
  }
  return f;
}

SellFormula dual(const SellFormula& f) {
  using F = SellFormula;
  switch (f.kind()) {
    case SellKind::Atom:
      return F::neg_atom(f.name(), f.args());
    case SellKind::NegAtom:
      return F::atom(f.name(), f.args());
    case SellKind::Tensor:
      return F::par(dual(f.left()), dual(f.right()));
    case SellKind::Par:
      return F::tensor(dual(f.left()), dual(f.right()));
    case SellKind::One:
      return F::bot();
    case SellKind::Bot:
      return F::one();
    case SellKind::Plus:
      return F::with(dual(f.left()), dual(f.right()));
    case SellKind::With:
      return F::plus(dual(f.left()), dual(f.right()));
    case SellKind::Zero:
      return F::top();
    case SellKind::Top:
      return F::zero();
    case SellKind::Exists:
      return F::forall(f.name(), dual(f.body()));
    case SellKind::Forall:
      return F::exists(f.name(), dual(f.body()));
    case SellKind::Bang:
      return F::quest(f.label(), dual(f.body()));
    case SellKind::Quest:
      return F::bang(f.label(), dual(f.body()));
    case SellKind::Some:
      return F::all(f.name(), f.type(), dual(f.body()));
    case SellKind::All:
      return F::some(f.name(), f.type(), dual(f.body()));
    case SellKind::Box:
    case SellKind::Dia:
      return dual(expand_sell_modal(f));
  }
  return f;
}

// ---- parsing -----------------------------------------------------------

namespace {

class SellParser {
 public:
  SellParser(TokenStream& ts, SymbolTable& table) : ts_(ts), table_(table) {}

  SellFormula formula() { return limp(); }

 private:
  SellFormula limp() {
    SellFormula a = binary(1);
    if (ts_.accept("-o")) return SellFormula::par(dual(a), limp());
    return a;
  }

  static int prec_of(const std::string& op) {
    if (op == "|") return 1;
    if (op == "&") return 2;
    if (op == "+") return 3;
    if (op == "*") return 4;
    return 0;
  }

  // Right-associative binary operators at or above `level`.
  SellFormula binary(int level) {
    if (level > 4) return unary();
    SellFormula a = binary(level + 1);
    static const char* ops[] = {"", "|", "&", "+", "*"};
    if (ts_.peek().kind == Token::Kind::Symbol && ts_.peek().text == ops[level]) {
      ts_.next();
      SellFormula b = binary(level);
      switch (level) {
        case 1:
          return SellFormula::par(a, b);
        case 2:
          return SellFormula::with(a, b);
        case 3:
          return SellFormula::plus(a, b);
        default:
          return SellFormula::tensor(a, b);
      }
    }
    return a;
  }

  std::string label() {
    const Token& t = ts_.peek();
    if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Number) ts_.fail("expected a subexponential label");
    return ts_.next().text;
  }

  SellFormula unary() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Kind::Number) {
      if (t.text == "1") {
        ts_.next();
        return SellFormula::one();
      }
      if (t.text == "0") {
        ts_.next();
        return SellFormula::zero();
      }
      ts_.fail("unexpected number '" + t.text + "'");
    }
    if (ts_.accept("(")) {
      SellFormula f = formula();
      ts_.expect(")");
      return f;
    }
    if (ts_.accept("~")) return dual(unary());
    if (ts_.accept("!")) {
      std::string l = label();
      return SellFormula::bang(l, unary());
    }
    if (ts_.accept("?")) {
      std::string l = label();
      return SellFormula::quest(l, unary());
    }
    if (t.kind != Token::Kind::Ident) ts_.fail("expected a formula");
    const std::string word = t.text;
    if (word == "top") return ts_.next(), SellFormula::top();
    if (word == "bot") return ts_.next(), SellFormula::bot();
    if (word == "exists" || word == "forall") {
      ts_.next();
      std::string x = ts_.expect_ident();
      ts_.expect(".");
      bound_.push_back(x);
      SellFormula body = formula();
      bound_.pop_back();
      return word == "exists" ? SellFormula::exists(x, body) : SellFormula::forall(x, body);
    }
    if (word == "some" || word == "all") {
      ts_.next();
      std::string v = ts_.expect_ident();
      ts_.expect(":");
      std::string ty = label();
      ts_.expect(".");
      SellFormula body = formula();
      return word == "some" ? SellFormula::some(v, ty, body) : SellFormula::all(v, ty, body);
    }
    if (word == "box" || word == "dia") {
      ts_.next();
      std::string ty;
      if (ts_.accept("[")) {
        ty = label();
        ts_.expect("]");
      }
      SellFormula a = unary();
      return word == "box" ? SellFormula::box(ty, a) : SellFormula::dia(ty, a);
    }
    Token name = ts_.next();
    std::vector<Term> args;
    if (ts_.accept("(")) {
      do args.push_back(parse_term(ts_, table_, bound_));
      while (ts_.accept(","));
      ts_.expect(")");
    }
    return SellFormula::atom(name.text, std::move(args));
  }

  TokenStream& ts_;
  SymbolTable& table_;
  std::vector<std::string> bound_;
};

int prec(const SellFormula& f) {
  switch (f.kind()) {
    case SellKind::Par:
      return 1;
    case SellKind::With:
      return 2;
    case SellKind::Plus:
      return 3;
    case SellKind::Tensor:
      return 4;
    case SellKind::Exists:
    case SellKind::Forall:
    case SellKind::Some:
    case SellKind::All:
      return 0;
    default:
      return 5;
  }
}

void print(const SellFormula& f, std::vector<std::string>& bound, std::ostream& os);

void print_at(const SellFormula& f, bool wrap, std::vector<std::string>& bound, std::ostream& os) {
  if (wrap) os << '(';
  print(f, bound, os);
  if (wrap) os << ')';
}

void print(const SellFormula& f, std::vector<std::string>& bound, std::ostream& os) {
  switch (f.kind()) {
    case SellKind::Atom:
    case SellKind::NegAtom: {
      if (f.kind() == SellKind::NegAtom) os << '~';
      os << f.name();
      if (!f.args().empty()) {
        os << '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) os << ',';
          os << print_term(f.args()[i], bound);
        }
        os << ')';
      }
      return;
    }
    case SellKind::One:
      os << '1';
      return;
    case SellKind::Zero:
      os << '0';
      return;
    case SellKind::Top:
      os << "top";
      return;
    case SellKind::Bot:
      os << "bot";
      return;
    case SellKind::Tensor:
    case SellKind::Par:
    case SellKind::With:
    case SellKind::Plus: {
      static const char* sym[] = {" * ", " | ", " & ", " + "};
      int p = prec(f);
      const char* op = f.kind() == SellKind::Tensor ? sym[0]
                       : f.kind() == SellKind::Par  ? sym[1]
                       : f.kind() == SellKind::With ? sym[2]
                                                    : sym[3];
      print_at(f.left(), prec(f.left()) <= p, bound, os);
      os << op;
      print_at(f.right(), prec(f.right()) < p || prec(f.right()) == 0, bound, os);
      return;
    }
    case SellKind::Exists:
    case SellKind::Forall:
      os << (f.kind() == SellKind::Exists ? "exists " : "forall ") << f.name() << ". ";
      bound.push_back(f.name());
      print(f.body(), bound, os);
      bound.pop_back();
      return;
    case SellKind::Some:
    case SellKind::All:
      os << (f.kind() == SellKind::Some ? "some " : "all ") << f.name() << ':' << f.type() << ". ";
      print(f.body(), bound, os);
      return;
    case SellKind::Bang:
    case SellKind::Quest:
      os << (f.kind() == SellKind::Bang ? '!' : '?') << f.label() << ' ';
      print_at(f.body(), prec(f.body()) < 5, bound, os);
      return;
    case SellKind::Box:
    case SellKind::Dia:
      os << (f.kind() == SellKind::Box ? "box" : "dia");
      if (!f.type().empty()) os << '[' << f.type() << ']';
      os << ' ';
      print_at(f.body(), prec(f.body()) < 5, bound, os);
      return;
  }
}

}  // namespace

SellFormula parse_sell_formula(TokenStream& ts, SymbolTable& table) { return SellParser(ts, table).formula(); }

SellFormula parse_sell_formula(const std::string& text) {
  SymbolTable table;
  TokenStream ts(tokenize(text));
  SellFormula f = parse_sell_formula(ts, table);
  if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'");
  return f;
}

std::string print_sell_formula(const SellFormula& f) {
  std::ostringstream os;
  std::vector<std::string> bound;
  print(f, bound, os);
  return os.str();
}

// ---- sequents ----------------------------------------------------------

SubexpSignature effective_signature(const SubexpSignature& sig, const SellSequent& s) {
  if (s.locals.empty()) return sig;
  SubexpSignature out = sig;
  for (const auto& [l, t] : s.locals) out = out.with_local(l, t);
  return out;
}

SellSequent make_sell_sequent(const SubexpSignature& sig, std::map<std::string, std::vector<SellFormula>> theta,
                              std::vector<SellFormula> work, std::vector<std::pair<std::string, std::string>> locals) {
  SellSequent s;
  s.locals = std::move(locals);
  SubexpSignature eff = effective_signature(sig, s);
  for (auto& [label, items] : theta) {
    if (items.empty()) continue;
    if (!eff.has(label)) throw SellError(SellError::Kind::UnknownLabel, label, "unknown label '" + label + "'");
    std::sort(items.begin(), items.end());
    if (eff.unbounded(label)) items.erase(std::unique(items.begin(), items.end()), items.end());
    s.theta.emplace(label, std::move(items));
  }
  std::sort(work.begin(), work.end());
  s.work = std::move(work);
  return s;
}

bool operator==(const SellSequent& a, const SellSequent& b) {
  return a.work == b.work && a.theta == b.theta && a.locals == b.locals;
}

std::string print_sell_sequent(const SellSequent& s) {
  std::ostringstream os;
  for (const auto& [label, items] : s.theta) {
    os << '[' << label << ": ";
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ", " : "") << print_sell_formula(items[i]);
    os << "] ";
  }
  os << "|- ";
  if (s.work.empty()) os << '.';
  for (std::size_t i = 0; i < s.work.size(); ++i) os << (i ? ", " : "") << print_sell_formula(s.work[i]);
  return os.str();
}

SellSequent parse_sell_sequent(const SubexpSignature& sig, const std::string& text) {
  SymbolTable table;
  std::map<std::string, std::vector<SellFormula>> theta;
  std::vector<SellFormula> work;
  bool seen_turnstile = false;
  std::istringstream in(text);
  std::string line;
  std::size_t base = 0;
  while (std::getline(in, line)) {
    TokenStream ts(tokenize(line, base));
    base += line.size() + 1;
    if (ts.at_end()) continue;
    if (ts.peek().kind == Token::Kind::Ident && ts.peek().text == "theta" && ts.peek(1).text != "|-") {
      ts.next();
      const Token& l = ts.peek();
      if (l.kind != Token::Kind::Ident && l.kind != Token::Kind::Number) ts.fail("expected a label");
      std::string label = ts.next().text;
      if (!sig.has(label)) ts.fail("unknown label '" + label + "'");
      ts.expect(":");
      theta[label].push_back(parse_sell_formula(ts, table));
      if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'");
      continue;
    }
    if (seen_turnstile) ts.fail("a sequent file has one |- line");
    seen_turnstile = true;
    if (!ts.accept("|-")) {
      do work.push_back(dual(parse_sell_formula(ts, table)));
      while (ts.accept(","));
      ts.expect("|-");
    }
    if (!ts.at_end()) {
      do work.push_back(parse_sell_formula(ts, table));
      while (ts.accept(","));
    }
    if (!ts.at_end()) ts.fail("trailing input '" + ts.peek().text + "'");
  }
  if (!seen_turnstile) throw ParseError(ParseError::Kind::Syntax, base, "missing |- line");
  return make_sell_sequent(sig, std::move(theta), std::move(work));
}

}  // namespace hylls
