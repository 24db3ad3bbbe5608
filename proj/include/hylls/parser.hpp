#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hylls/formula.hpp"

namespace hylls {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnboundWorldVariable, ArityMismatch, Undeclared };
  ParseError(Kind kind, std::size_t offset, const std::string& what);
  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// Declared names. Identifiers starting with '_' are always free variables
// (the prover names its eigenvariables that way).
struct SymbolTable {
  std::map<std::string, unsigned> functions;  // arity 0 = constant
  std::set<std::string> term_vars;
  std::set<std::string> world_vars;
  // Arity violations are errors; unknown function symbols are accepted
  // and their arity is fixed by the first use in a parse.
};

struct Token {
  enum class Kind { Ident, Number, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t offset;
};

// Shared tokenizer for the formula, sequent, model and signature
// languages. Multi-character symbols: -o => -| |- and single punctuation.
std::vector<Token> tokenize(const std::string& text, std::size_t base_offset = 0);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}
  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool accept(const std::string& symbol_or_keyword);
  void expect(const std::string& symbol_or_keyword);
  std::string expect_ident();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Term parsing with a stack of term-binder names (innermost last).
Term parse_term(TokenStream& ts, SymbolTable& table, const std::vector<std::string>& bound);
WorldExpr parse_world(TokenStream& ts, const ConstraintDomain& d, const SymbolTable& table,
                      const std::vector<std::string>& bound);

Formula parse_formula(TokenStream& ts, const ConstraintDomain& d, SymbolTable& table);
Formula parse_formula(const std::string& text, const ConstraintDomain& d, SymbolTable& table);
Formula parse_formula(const std::string& text, const ConstraintDomain& d = temporal_domain());
WorldExpr parse_world(const std::string& text, const ConstraintDomain& d, const SymbolTable& table = {});
// "A @ w"
Judgment parse_judgment(const std::string& text, const ConstraintDomain& d, SymbolTable& table);

}  // namespace hylls
