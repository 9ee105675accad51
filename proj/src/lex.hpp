#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "sct/model.hpp"

namespace sct::lex {

struct Token {
  std::string text;
  int line;
  int column;
};

// Splits input into non-empty lines of tokens. '#' comments run to end of
// line. Words are [A-Za-z0-9_]+; symbols are > >= -> < : { } , with maximal
// munch on the two-character ones.
inline std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::vector<Token> cur;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto flush_line = [&] {
    if (!cur.empty()) lines.push_back(std::move(cur));
    cur.clear();
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      flush_line();
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i, ++col;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    int start_col = col;
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        word += text[i++];
        ++col;
      }
      cur.push_back({word, line, start_col});
      continue;
    }
    if (c == '>' && i + 1 < text.size() && text[i + 1] == '=') {
      cur.push_back({">=", line, start_col});
      i += 2;
      col += 2;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      cur.push_back({"->", line, start_col});
      i += 2;
      col += 2;
      continue;
    }
    if (std::string("><:{},").find(c) != std::string::npos) {
      cur.push_back({std::string(1, c), line, start_col});
      ++i;
      ++col;
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  flush_line();
  return lines;
}

[[noreturn]] inline void fail(const Token& t, const std::string& msg) {
  throw ParseError(t.line, t.column, msg + " (got '" + t.text + "')");
}

inline void expect_name(const Token& t) {
  if (!is_identifier(t.text) || is_reserved_word(t.text))
    fail(t, "expected a name");
}

}  // namespace sct::lex
