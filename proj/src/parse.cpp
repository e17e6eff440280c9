#include "djets/parse.hpp"

#include <cctype>

#include "djets/error.hpp"

namespace djets {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    std::size_t start = i, len = 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (start + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[start + len])) || text[start + len] == '_'))
        ++len;
      tok.kind = Token::Kind::Identifier;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (start + len < text.size() && std::isdigit(static_cast<unsigned char>(text[start + len])))
        ++len;
      tok.kind = Token::Kind::Number;
    } else if (std::string_view(":;,[]{}()=+-*/^").find(c) != std::string_view::npos) {
      tok.kind = Token::Kind::Symbol;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
    tok.text = std::string(text.substr(start, len));
    advance(len);
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

const Token& TokenCursor::next() {
  const Token& t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenCursor::accept(std::string_view symbol) {
  const Token& t = peek();
  if (t.kind != Token::Kind::End && t.text == symbol) {
    next();
    return true;
  }
  return false;
}

const Token& TokenCursor::expect(std::string_view symbol) {
  if (peek().kind == Token::Kind::End || peek().text != symbol)
    fail("expected '" + std::string(symbol) + "'");
  return next();
}

const Token& TokenCursor::expect_identifier() {
  if (peek().kind != Token::Kind::Identifier) fail("expected a name");
  return next();
}

void TokenCursor::fail(const std::string& what) const {
  const Token& t = peek();
  std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(what + ", found " + found, t.line, t.column);
}

RPoly TokenCursor::polynomial(const std::vector<std::string>& vars) {
  RPoly acc = term(vars);
  while (true) {
    if (accept("+"))
      acc += term(vars);
    else if (accept("-"))
      acc -= term(vars);
    else
      return acc;
  }
}

RPoly TokenCursor::term(const std::vector<std::string>& vars) {
  RPoly acc = unary(vars);
  while (true) {
    if (accept("*")) {
      acc = acc * unary(vars);
    } else if (peek().text == "/" && peek().kind == Token::Kind::Symbol) {
      const Token& slash = next();
      RPoly d = unary(vars);
      if (!d.is_constant() || d.is_zero())
        throw ParseError("can only divide by a nonzero constant", slash.line, slash.column);
      acc *= d.constant_term().inverse();
    } else {
      return acc;
    }
  }
}

RPoly TokenCursor::unary(const std::vector<std::string>& vars) {
  if (accept("-")) return -unary(vars);
  if (accept("+")) return unary(vars);
  return power(vars);
}

RPoly TokenCursor::power(const std::vector<std::string>& vars) {
  RPoly base = atom(vars);
  if (accept("^")) {
    if (peek().kind != Token::Kind::Number) fail("expected an integer exponent");
    unsigned long k = std::stoul(next().text);
    return base.pow(static_cast<unsigned>(k));
  }
  return base;
}

RPoly TokenCursor::atom(const std::vector<std::string>& vars) {
  const Token& t = peek();
  if (t.kind == Token::Kind::Number) {
    next();
    return RPoly::constant(vars, Rational::parse(t.text));
  }
  if (t.kind == Token::Kind::Identifier) {
    auto it = std::find(vars.begin(), vars.end(), t.text);
    if (it == vars.end())
      throw UnknownName(std::to_string(t.line) + ":" + std::to_string(t.column) +
                        ": unknown variable '" + t.text + "'");
    next();
    return RPoly::variable(vars, static_cast<std::size_t>(it - vars.begin()));
  }
  if (accept("(")) {
    RPoly inner = polynomial(vars);
    expect(")");
    return inner;
  }
  fail("expected a polynomial");
}

RPoly parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
  TokenCursor cur(tokenize(text));
  RPoly p = cur.polynomial(vars);
  if (!cur.at_end()) cur.fail("unexpected trailing input");
  return p;
}

}  // namespace djets
