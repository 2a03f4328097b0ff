#include "parse_util.hpp"

#include <unordered_set>

#include "sleec/parser.hpp"

namespace sleec {

bool is_reserved_word(std::string_view word) {
  static const std::unordered_set<std::string_view> reserved = {
      "when", "then", "unless", "within", "not", "and", "or", "exists",
      "while", "event", "measure", "true", "false", "boolean", "numeric",
      "scale", "def_start", "def_end", "rule_start", "rule_end",
      "purpose_start", "purpose_end", "second", "seconds", "minute",
      "minutes", "hour", "hours", "day", "days",
  };
  return reserved.count(word) != 0;
}

namespace detail {

std::optional<Token> Cursor::expect_ident(const std::string& what) {
  if (!at(Tok::Ident)) {
    error("expected " + what);
    return std::nullopt;
  }
  return next();
}

bool Cursor::expect(Tok kind, const std::string& what) {
  if (!at(kind)) {
    error("expected " + what);
    return false;
  }
  next();
  return true;
}

bool Cursor::expect_word(std::string_view word) {
  if (!at_word(word)) {
    error("expected '" + std::string(word) + "'");
    return false;
  }
  next();
  return true;
}

std::optional<std::string> parse_name(Cursor& c, const std::string& what,
                                      SourceLoc* loc_out) {
  if (!c.at(Tok::Ident)) {
    c.error("expected " + what);
    return std::nullopt;
  }
  if (is_reserved_word(c.peek().text)) {
    c.error("reserved word '" + c.peek().text + "' cannot be used as " + what);
    return std::nullopt;
  }
  const Token& t = c.next();
  if (loc_out)
    *loc_out = t.loc;
  return t.text;
}

bool starts_condition(const Cursor& c) {
  const Token& t = c.peek();
  switch (t.kind) {
  case Tok::LParen:
  case Tok::LBrace:
    return true;
  case Tok::Ident:
    if (t.text == "not" || t.text == "true" || t.text == "false")
      return true;
    return !is_reserved_word(t.text);
  default:
    return false;
  }
}

namespace {

std::optional<CompareOp> peek_compare_op(const Cursor& c) {
  switch (c.peek().kind) {
  case Tok::Eq: return CompareOp::Eq;
  case Tok::Ne: return CompareOp::Ne;
  case Tok::Lt: return CompareOp::Lt;
  case Tok::Le: return CompareOp::Le;
  case Tok::Gt: return CompareOp::Gt;
  case Tok::Ge: return CompareOp::Ge;
  default: return std::nullopt;
  }
}

ConditionPtr parse_primary(Cursor& c);

ConditionPtr parse_unary(Cursor& c) {
  SourceLoc loc = c.peek().loc;
  if (c.eat_word("not")) {
    auto inner = parse_unary(c);
    if (!inner)
      return nullptr;
    return cond_not(std::move(inner), loc);
  }
  return parse_primary(c);
}

ConditionPtr parse_and(Cursor& c) {
  auto left = parse_unary(c);
  if (!left)
    return nullptr;
  while (c.at_word("and") || c.at(Tok::Amp)) {
    SourceLoc loc = c.peek().loc;
    c.next();
    auto right = parse_unary(c);
    if (!right)
      return nullptr;
    left = cond_and(std::move(left), std::move(right), loc);
  }
  return left;
}

ConditionPtr parse_or(Cursor& c) {
  auto left = parse_and(c);
  if (!left)
    return nullptr;
  while (c.at_word("or")) {
    SourceLoc loc = c.peek().loc;
    c.next();
    auto right = parse_and(c);
    if (!right)
      return nullptr;
    left = cond_or(std::move(left), std::move(right), loc);
  }
  return left;
}

ConditionPtr parse_primary(Cursor& c) {
  SourceLoc loc = c.peek().loc;
  if (c.eat(Tok::LParen)) {
    auto inner = parse_or(c);
    if (!inner)
      return nullptr;
    if (!c.expect(Tok::RParen, "')'"))
      return nullptr;
    return inner;
  }
  if (c.eat(Tok::LBrace)) {
    auto inner = parse_or(c);
    if (!inner)
      return nullptr;
    if (!c.expect(Tok::RBrace, "'}'"))
      return nullptr;
    return inner;
  }
  if (c.eat_word("true"))
    return cond_bool(true);
  if (c.eat_word("false"))
    return cond_bool(false);

  if (!c.at(Tok::Ident) || is_reserved_word(c.peek().text)) {
    c.error("expected condition");
    return nullptr;
  }
  std::string measure = c.next().text;

  auto op = peek_compare_op(c);
  if (!op)
    return cond_atom(std::move(measure), loc);
  c.next();

  const Token& lit = c.peek();
  if (lit.kind == Tok::Int) {
    c.next();
    return cond_compare(std::move(measure), *op, Literal::of_int(lit.value),
                        loc);
  }
  if (lit.kind == Tok::Ident) {
    if (lit.text == "true" || lit.text == "false") {
      bool b = lit.text == "true";
      c.next();
      return cond_compare(std::move(measure), *op, Literal::of_bool(b), loc);
    }
    if (!is_reserved_word(lit.text)) {
      c.next();
      return cond_compare(std::move(measure), *op, Literal::of_name(lit.text),
                          loc);
    }
  }
  c.error("expected literal after comparison operator");
  return nullptr;
}

} // namespace

ConditionPtr parse_condition(Cursor& c) { return parse_or(c); }

std::optional<Duration> parse_duration(Cursor& c) {
  if (!c.at(Tok::Int)) {
    c.error("expected duration magnitude");
    return std::nullopt;
  }
  SourceLoc loc = c.peek().loc;
  long long magnitude = c.next().value;
  if (magnitude < 1) {
    c.error_at(loc, "deadline must be at least 1 time unit");
    return std::nullopt;
  }

  Duration d;
  d.magnitude = magnitude;
  const Token& unit = c.peek();
  if (unit.kind != Tok::Ident) {
    c.error("expected duration unit (seconds, minutes, hours, days)");
    return std::nullopt;
  }
  if (unit.text == "second" || unit.text == "seconds")
    d.unit = Duration::Unit::Seconds;
  else if (unit.text == "minute" || unit.text == "minutes")
    d.unit = Duration::Unit::Minutes;
  else if (unit.text == "hour" || unit.text == "hours")
    d.unit = Duration::Unit::Hours;
  else if (unit.text == "day" || unit.text == "days")
    d.unit = Duration::Unit::Days;
  else {
    c.error("expected duration unit (seconds, minutes, hours, days)");
    return std::nullopt;
  }
  c.next();
  return d;
}

} // namespace detail
} // namespace sleec
