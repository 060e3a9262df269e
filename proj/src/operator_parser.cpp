// Copyright 2026 The ncmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ncmetro/operator_parser.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "ncmetro/errors.hpp"

namespace ncmetro {

namespace {

enum class TokenKind { Number, Annihilation, Creation, Position, Momentum, Imaginary,
                       Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  TokenKind kind;
  std::size_t position;
  double number = 0.0;
  std::string_view text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
          j = k;
        }
      }
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + j, value);
      if (ec != std::errc{} || ptr != s.data() + j) {
        throw ParseError("malformed number '" + std::string(s.substr(i, j - i)) + "'", start);
      }
      out.push_back({TokenKind::Number, start, value, s.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      // Symbols are matched greedily so that `2iX` and `ada` tokenize.
      std::size_t len = 1;
      TokenKind kind;
      if (c == 'a' && i + 1 < s.size() && s[i + 1] == 'd') {
        kind = TokenKind::Creation;
        len = 2;
      } else if (c == 'a') {
        kind = TokenKind::Annihilation;
      } else if (c == 'X') {
        kind = TokenKind::Position;
      } else if (c == 'P') {
        kind = TokenKind::Momentum;
      } else if (c == 'i') {
        kind = TokenKind::Imaginary;
      } else {
        std::size_t j = i;
        while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
        throw ParseError("unknown symbol '" + std::string(s.substr(i, j - i)) + "'", start);
      }
      out.push_back({kind, start, 0.0, s.substr(i, len)});
      i += len;
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, start, 0.0, s.substr(i, 1)});
    ++i;
  }
  out.push_back({TokenKind::End, s.size(), 0.0, {}});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, int max_degree)
      : tokens_(std::move(tokens)), max_degree_(max_degree) {}

  LadderPolynomial parse() {
    if (peek().kind == TokenKind::End) throw ParseError("empty expression", peek().position);
    LadderPolynomial result = expr();
    if (peek().kind != TokenKind::End) {
      throw ParseError("unexpected token '" + std::string(peek().text) + "'", peek().position);
    }
    return result;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  static bool starts_primary(TokenKind k) {
    switch (k) {
      case TokenKind::Number:
      case TokenKind::Annihilation:
      case TokenKind::Creation:
      case TokenKind::Position:
      case TokenKind::Momentum:
      case TokenKind::Imaginary:
      case TokenKind::LParen:
        return true;
      default:
        return false;
    }
  }

  LadderPolynomial expr() {
    LadderPolynomial acc = term();
    while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
      const bool minus = next().kind == TokenKind::Minus;
      LadderPolynomial rhs = term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  LadderPolynomial term() {
    LadderPolynomial acc = unary();
    for (;;) {
      if (peek().kind == TokenKind::Star) {
        next();
        acc = normal_order_product(acc, unary(), max_degree_);
      } else if (starts_primary(peek().kind)) {
        acc = normal_order_product(acc, unary(), max_degree_);
      } else {
        return acc;
      }
    }
  }

  LadderPolynomial unary() {
    if (peek().kind == TokenKind::Minus) {
      next();
      return -unary();
    }
    if (peek().kind == TokenKind::Plus) {
      next();
      return unary();
    }
    return power_expr();
  }

  LadderPolynomial power_expr() {
    LadderPolynomial base = primary();
    if (peek().kind != TokenKind::Caret) return base;
    next();
    const Token& exp = next();
    if (exp.kind != TokenKind::Number || exp.number != static_cast<double>(static_cast<int>(exp.number)) ||
        exp.number < 0 || exp.text.find_first_of(".eE") != std::string_view::npos) {
      throw ParseError("exponent must be a non-negative integer", exp.position);
    }
    return ncmetro::power(base, static_cast<int>(exp.number), max_degree_);
  }

  LadderPolynomial primary() {
    const Token& t = next();
    switch (t.kind) {
      case TokenKind::Number: return LadderPolynomial::scalar(t.number);
      case TokenKind::Annihilation: return LadderPolynomial::annihilation();
      case TokenKind::Creation: return LadderPolynomial::creation();
      case TokenKind::Position: return LadderPolynomial::position();
      case TokenKind::Momentum: return LadderPolynomial::momentum();
      case TokenKind::Imaginary: return LadderPolynomial::scalar({0.0, 1.0});
      case TokenKind::LParen: {
        LadderPolynomial inner = expr();
        if (peek().kind != TokenKind::RParen) throw ParseError("expected ')'", peek().position);
        next();
        return inner;
      }
      case TokenKind::End: throw ParseError("unexpected end of expression", t.position);
      default: throw ParseError("unexpected token '" + std::string(t.text) + "'", t.position);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int max_degree_;
};

}  // namespace

LadderPolynomial parse_operator(std::string_view text, int max_degree) {
  return Parser(tokenize(text), max_degree).parse();
}

}  // namespace ncmetro
