#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sleec/diagnostics.hpp"

namespace sleec {

// Shared token stream for both input languages. Keywords are not
// distinguished here; parsers match identifier text contextually.
enum class Tok {
  Ident,
  Int,
  String,
  Assign, // :=
  Colon,
  Comma,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Eq, // =
  Ne, // <>
  Lt,
  Le,
  Gt,
  Ge,
  Amp, // &, synonym for "and" inside conditions
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;      // identifier spelling or decoded string body
  long long value = 0;   // Int
  SourceLoc loc;
};

// Tokenizes the whole input. "//" starts a comment running to end of line.
// Returns false and appends a diagnostic on the first bad character or
// unterminated string; tokens lexed so far remain usable.
bool lex(std::string_view src, std::vector<Token>& out,
         std::vector<Diagnostic>& diags);

} // namespace sleec
