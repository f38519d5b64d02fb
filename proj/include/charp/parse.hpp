#pragma once

// Polynomial text grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' digits)?
//   atom   := digits | variable | '(' expr ')'
// Variables are x1..xd, plus x, y, z when d <= 3. Whitespace is ignored and
// integer literals are reduced mod p.

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "charp/error.hpp"
#include "charp/poly.hpp"

namespace charp {

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view src, const FieldConfig& ring) : src_(src), ring_(ring) {}

  Polynomial parseAll() {
    skipWs();
    if (pos_ == src_.size()) throw ParseError("empty polynomial", pos_);
    Polynomial f = expr();
    skipWs();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return f;
  }

 private:
  void skipWs() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skipWs();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial f = term();
    for (;;) {
      if (accept('+'))
        f = f + term();
      else if (accept('-'))
        f = f - term();
      else
        return f;
    }
  }

  Polynomial term() {
    Polynomial f = unary();
    while (accept('*')) f = f * unary();
    return f;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!accept('^')) return base;
    skipWs();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      throw ParseError("exponent must be a non-negative integer literal", pos_);
    std::size_t at = pos_;
    std::uint64_t n = digits();
    if (n > std::numeric_limits<std::uint32_t>::max()) throw ParseError("exponent too large", at);
    return mulPow(base, n);
  }

  Polynomial atom() {
    skipWs();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial f = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = digits();
      return Polynomial::constant(ring_, static_cast<std::int64_t>(v % ring_.p));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return variable();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::uint64_t digits() {
    std::size_t at = pos_;
    std::uint64_t v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      unsigned dgt = static_cast<unsigned>(src_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - dgt) / 10)
        throw ParseError("integer literal overflow", at);
      v = v * 10 + dgt;
      ++pos_;
    }
    return v;
  }

  Polynomial variable() {
    std::size_t at = pos_;
    std::string name;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) name += src_[pos_++];
    if (ring_.d <= 3 && name.size() == 1) {
      auto idx = std::string_view("xyz").find(name[0]);
      if (idx != std::string_view::npos && idx < ring_.d) return Polynomial::variable(ring_, idx);
    }
    if (name.size() >= 2 && name[0] == 'x' && name[1] != '0') {
      bool numeric = true;
      for (std::size_t i = 1; i < name.size(); ++i) numeric &= std::isdigit(static_cast<unsigned char>(name[i])) != 0;
      if (numeric && name.size() <= 10) {
        unsigned long idx = std::stoul(name.substr(1));
        if (idx >= 1 && idx <= ring_.d) return Polynomial::variable(ring_, idx - 1);
      }
    }
    throw ParseError("unknown variable '" + name + "'", at);
  }

  std::string_view src_;
  FieldConfig ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parsePolynomial(std::string_view src, const FieldConfig& ring) {
  return detail::PolyParser(src, ring).parseAll();
}

/// Splits on top-level commas (outside parentheses) and parses each piece.
inline std::vector<Polynomial> parsePolynomialList(std::string_view src, const FieldConfig& ring) {
  std::vector<Polynomial> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= src.size(); ++i) {
    if (i < src.size() && src[i] == '(') ++depth;
    if (i < src.size() && src[i] == ')') --depth;
    if (i == src.size() || (src[i] == ',' && depth == 0)) {
      try {
        out.push_back(parsePolynomial(src.substr(start, i - start), ring));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                         start + e.position());
      }
      start = i + 1;
    }
  }
  return out;
}

}  // namespace charp
