// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace linwidth::text {

struct Token {
  std::string value;
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Whitespace tokenizer over line-oriented input that remembers positions.
/// '#' starts a comment running to end of line.
class TokenStream {
 public:
  explicit TokenStream(std::string_view input);

  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const;
  Token next();
  /// Next token, which must equal `keyword`.
  void expect(std::string_view keyword);
  std::uint64_t next_uint(std::string_view what);
  /// All remaining tokens on the line of the next token.
  std::vector<Token> rest_of_line();
  std::size_t line_of_next() const;

  [[noreturn]] void fail(const Token& at, const std::string& message) const;
  [[noreturn]] void fail_eof(const std::string& message) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 1;
};

}  // namespace linwidth::text
