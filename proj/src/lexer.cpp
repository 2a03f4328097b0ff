#include "sleec/lexer.hpp"

#include <cctype>

namespace sleec {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

bool lex(std::string_view src, std::vector<Token>& out,
         std::vector<Diagnostic>& diags) {
  size_t i = 0;
  int line = 1;
  int col = 1;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto push = [&](Tok kind, SourceLoc loc, std::string text = {},
                  long long value = 0) {
    out.push_back(Token{kind, std::move(text), value, loc});
  };

  while (i < src.size()) {
    char c = src[i];
    SourceLoc loc{line, col};

    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    if (ident_start(c)) {
      size_t start = i;
      while (i < src.size() && ident_char(src[i]))
        advance(1);
      push(Tok::Ident, loc, std::string(src.substr(start, i - start)));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long value = 0;
      size_t start = i;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        value = value * 10 + (src[i] - '0');
        advance(1);
      }
      push(Tok::Int, loc, std::string(src.substr(start, i - start)), value);
      continue;
    }
    if (c == '"') {
      advance(1);
      std::string body;
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\n')
          break;
        if (d == '\\' && i + 1 < src.size() &&
            (src[i + 1] == '"' || src[i + 1] == '\\')) {
          body.push_back(src[i + 1]);
          advance(2);
          continue;
        }
        body.push_back(d);
        advance(1);
      }
      if (!closed) {
        diags.push_back({DiagKind::ParseError, loc, "unterminated string"});
        push(Tok::End, {line, col});
        return false;
      }
      push(Tok::String, loc, std::move(body));
      continue;
    }

    switch (c) {
    case ':':
      if (i + 1 < src.size() && src[i + 1] == '=') {
        advance(2);
        push(Tok::Assign, loc);
      } else {
        advance(1);
        push(Tok::Colon, loc);
      }
      continue;
    case ',': advance(1); push(Tok::Comma, loc); continue;
    case '(': advance(1); push(Tok::LParen, loc); continue;
    case ')': advance(1); push(Tok::RParen, loc); continue;
    case '{': advance(1); push(Tok::LBrace, loc); continue;
    case '}': advance(1); push(Tok::RBrace, loc); continue;
    case '=': advance(1); push(Tok::Eq, loc); continue;
    case '&': advance(1); push(Tok::Amp, loc); continue;
    case '<':
      if (i + 1 < src.size() && src[i + 1] == '>') {
        advance(2);
        push(Tok::Ne, loc);
      } else if (i + 1 < src.size() && src[i + 1] == '=') {
        advance(2);
        push(Tok::Le, loc);
      } else {
        advance(1);
        push(Tok::Lt, loc);
      }
      continue;
    case '>':
      if (i + 1 < src.size() && src[i + 1] == '=') {
        advance(2);
        push(Tok::Ge, loc);
      } else {
        advance(1);
        push(Tok::Gt, loc);
      }
      continue;
    default:
      diags.push_back({DiagKind::ParseError, loc,
                       std::string("unexpected character '") + c + "'"});
      push(Tok::End, loc);
      return false;
    }
  }

  push(Tok::End, {line, col});
  return true;
}

} // namespace sleec
