#pragma once

// Shared cursor and condition grammar for the two front ends. Internal to
// the parser implementation files.

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "sleec/ast.hpp"
#include "sleec/diagnostics.hpp"
#include "sleec/lexer.hpp"

namespace sleec::detail {

class Cursor {
public:
  Cursor(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
      : tokens_(std::move(tokens)), diags_(diags) {}

  const Token& peek(size_t ahead = 0) const {
    size_t k = pos_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size())
      ++pos_;
    return t;
  }
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }
  bool eat(Tok kind) {
    if (!at(kind))
      return false;
    next();
    return true;
  }
  bool eat_word(std::string_view word) {
    if (!at_word(word))
      return false;
    next();
    return true;
  }
  bool done() const { return at(Tok::End); }

  void error(const std::string& message) {
    error_at(peek().loc, message);
  }
  void error_at(SourceLoc loc, const std::string& message) {
    if (!failed_)
      diags_.push_back({DiagKind::ParseError, loc, message});
    failed_ = true;
  }
  bool failed() const { return failed_; }

  // Consumes an identifier token; `what` names the expected thing for the
  // error message ("event name", "rule id", ...).
  std::optional<Token> expect_ident(const std::string& what);
  bool expect(Tok kind, const std::string& what);
  bool expect_word(std::string_view word);

private:
  std::vector<Token> tokens_;
  std::vector<Diagnostic>& diags_;
  size_t pos_ = 0;
  bool failed_ = false;
};

// True when the token could begin a condition primary.
bool starts_condition(const Cursor& c);

// condition := or_expr
// or_expr   := and_expr ("or" and_expr)*
// and_expr  := unary (("and" | "&") unary)*
// unary     := "not" unary | primary
// primary   := "(" condition ")" | "{" condition "}" | true | false | atom
// atom      := IDENT [relop literal]
//
// Braces are accepted as plain grouping. The expression ends at the first
// token that cannot extend it (then, unless, while, a block keyword, the
// next attribute key, ...), which keeps both grammars keyword-delimited.
ConditionPtr parse_condition(Cursor& c);

std::optional<Duration> parse_duration(Cursor& c);

// Identifier that is not a reserved word of the rule language.
std::optional<std::string> parse_name(Cursor& c, const std::string& what,
                                      SourceLoc* loc_out = nullptr);

} // namespace sleec::detail
