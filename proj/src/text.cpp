// SPDX-License-Identifier: Apache-2.0
#include "linwidth/text.hpp"

#include <charconv>

#include "linwidth/errors.hpp"

namespace linwidth::text {

TokenStream::TokenStream(std::string_view input) {
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  while (i < input.size()) {
    const char c = input[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < input.size() && input[i] != '\n') ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    Token tok{{}, line, col};
    while (i < input.size() && input[i] != ' ' && input[i] != '\t' && input[i] != '\r' &&
           input[i] != '\n' && input[i] != '#') {
      tok.value.push_back(input[i]);
      ++i;
      ++col;
    }
    tokens_.push_back(std::move(tok));
  }
  last_line_ = line;
}

const Token& TokenStream::peek() const {
  if (done()) fail_eof("unexpected end of input");
  return tokens_[pos_];
}

Token TokenStream::next() {
  const Token& t = peek();
  ++pos_;
  return t;
}

void TokenStream::expect(std::string_view keyword) {
  Token t = next();
  if (t.value != keyword) fail(t, "expected '" + std::string(keyword) + "', found '" + t.value + "'");
}

std::uint64_t TokenStream::next_uint(std::string_view what) {
  Token t = next();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.value.data(), t.value.data() + t.value.size(), v);
  if (ec != std::errc{} || ptr != t.value.data() + t.value.size()) {
    fail(t, "expected non-negative integer for " + std::string(what) + ", found '" + t.value + "'");
  }
  return v;
}

std::vector<Token> TokenStream::rest_of_line() {
  std::vector<Token> out;
  if (done()) return out;
  const std::size_t line = tokens_[pos_].line;
  while (!done() && tokens_[pos_].line == line) out.push_back(tokens_[pos_++]);
  return out;
}

std::size_t TokenStream::line_of_next() const { return done() ? last_line_ : tokens_[pos_].line; }

void TokenStream::fail(const Token& at, const std::string& message) const {
  throw InputError("line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": " +
                   message);
}

void TokenStream::fail_eof(const std::string& message) const {
  throw InputError("line " + std::to_string(last_line_) + ", column 1: " + message);
}

}  // namespace linwidth::text
