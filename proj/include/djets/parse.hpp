#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "djets/mpoly.hpp"

namespace djets {

struct Token {
  enum class Kind { Identifier, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Splits text into identifiers, unsigned integers and single-character
/// symbols. `#` starts a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token stream with the polynomial expression grammar
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*     (divisors must be constants)
///   unary := ('-' | '+') unary | power
///   power := atom ('^' integer)?
///   atom  := integer | variable | '(' expr ')'
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool accept(std::string_view symbol);
  const Token& expect(std::string_view symbol);
  const Token& expect_identifier();
  [[noreturn]] void fail(const std::string& what) const;

  RPoly polynomial(const std::vector<std::string>& vars);

 private:
  RPoly term(const std::vector<std::string>& vars);
  RPoly unary(const std::vector<std::string>& vars);
  RPoly power(const std::vector<std::string>& vars);
  RPoly atom(const std::vector<std::string>& vars);

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Parses a whole string as one polynomial over `vars`.
RPoly parse_polynomial(std::string_view text, const std::vector<std::string>& vars);

}  // namespace djets
