#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "salsy/geometry.hpp"

namespace salsy {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

struct ResolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io {

struct Token {
  std::string text;
  int line = 0;
};

// Whitespace-separated tokens; '(' ')' ';' always split off. '#' starts a
// comment to end of line.
inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      out.push_back({cur, line});
      cur.clear();
    }
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '#') {
      flush();
      while (i < text.size() && text[i] != '\n') ++i;
      --i;
      continue;
    }
    if (c == '\n') {
      flush();
      ++line;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    if (c == '(' || c == ')' || c == ';') {
      flush();
      out.push_back({std::string(1, c), line});
      continue;
    }
    cur += c;
  }
  flush();
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek() const {
    if (done()) throw ParseError(last_line(), "unexpected end of file");
    return toks_[pos_];
  }
  Token next() {
    Token t = peek();
    ++pos_;
    return t;
  }
  int last_line() const {
    return toks_.empty() ? 1 : toks_[std::min(pos_, toks_.size() - 1)].line;
  }
  void expect(const std::string& word) {
    Token t = next();
    if (t.text != word)
      throw ParseError(t.line, "expected '" + word + "', got '" + t.text + "'");
  }
  bool accept(const std::string& word) {
    if (!done() && peek().text == word) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string ident() { return next().text; }
  double number() {
    Token t = next();
    try {
      size_t idx = 0;
      double v = std::stod(t.text, &idx);
      if (idx != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ParseError(t.line, "expected a number, got '" + t.text + "'");
    }
  }
  long long integer() {
    Token t = next();
    try {
      size_t idx = 0;
      long long v = std::stoll(t.text, &idx);
      if (idx != t.text.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ParseError(t.line, "expected an integer, got '" + t.text + "'");
    }
  }
  // Peek: is the next token an integer literal?
  bool next_is_integer() const {
    if (done()) return false;
    const std::string& s = peek().text;
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  }
  Point point() {
    expect("(");
    Dbu x = integer();
    Dbu y = integer();
    expect(")");
    return {x, y};
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

inline Dbu um_to_dbu(double um, int dbu_per_micron) {
  return static_cast<Dbu>(std::llround(um * dbu_per_micron));
}

}  // namespace io
}  // namespace salsy
