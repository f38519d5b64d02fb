#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "charp/arith.hpp"
#include "charp/error.hpp"
#include "charp/parse.hpp"
#include "charp/poly.hpp"

namespace charp {

/// Σ t_i · div(f_i) with rational t_i >= 0 and nonconstant f_i. The empty
/// list is the zero divisor.
class DivisorSpec {
 public:
  struct Component {
    Polynomial f;
    Ratio t;
  };

  DivisorSpec() = default;
  explicit DivisorSpec(const FieldConfig& ring) : ring_(ring) {}
  DivisorSpec(const FieldConfig& ring, std::vector<Component> parts) : ring_(ring) {
    for (auto& c : parts) add(std::move(c.f), std::move(c.t));
  }

  /// t · div(f).
  static DivisorSpec single(const Polynomial& f, const Ratio& t) {
    DivisorSpec D(f.ring());
    D.add(f, t);
    return D;
  }

  /// Grammar: semicolon-separated terms "t*div(f)" or "div(f)", t a rational
  /// literal a/b; "0" or the empty string is the zero divisor.
  static DivisorSpec parse(std::string_view src, const FieldConfig& ring) {
    DivisorSpec D(ring);
    std::size_t start = 0;
    while (start <= src.size()) {
      std::size_t semi = src.find(';', start);
      if (semi == std::string_view::npos) semi = src.size();
      std::string_view piece = src.substr(start, semi - start);
      std::size_t lead = piece.find_first_not_of(" \t");
      if (lead != std::string_view::npos) {
        piece = piece.substr(lead);
        piece = piece.substr(0, piece.find_last_not_of(" \t") + 1);
        if (piece != "0") D.parseTerm(piece, start + lead);
      }
      start = semi + 1;
    }
    return D;
  }

  void add(Polynomial f, Ratio t) {
    if (!(f.ring() == ring_)) throw DomainError("divisor component from a different ring");
    if (f.isConstant()) throw DomainError("divisor components must be nonzero non-units");
    if (t.sign() < 0) throw DomainError("divisor coefficients must be non-negative");
    parts_.push_back({std::move(f), std::move(t)});
  }

  const FieldConfig& ring() const noexcept { return ring_; }
  const std::vector<Component>& parts() const noexcept { return parts_; }

  bool isZero() const {
    for (const auto& c : parts_)
      if (!c.t.isZero()) return false;
    return true;
  }

  friend DivisorSpec operator+(const DivisorSpec& a, const DivisorSpec& b) {
    if (!(a.ring_ == b.ring_)) throw DomainError("divisors over different rings");
    DivisorSpec r = a;
    r.parts_.insert(r.parts_.end(), b.parts_.begin(), b.parts_.end());
    return r;
  }

  DivisorSpec scaled(const Ratio& s) const {
    if (s.sign() < 0) throw DomainError("divisor scale must be non-negative");
    DivisorSpec r = *this;
    for (auto& c : r.parts_) c.t = c.t * s;
    return r;
  }

  std::string str() const {
    if (parts_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += "; ";
      s += parts_[i].t.str() + "*div(" + parts_[i].f.str() + ")";
    }
    return s;
  }

 private:
  void parseTerm(std::string_view piece, std::size_t offset) {
    std::size_t open = piece.find("div(");
    if (open == std::string_view::npos || piece.back() != ')')
      throw ParseError("expected t*div(f) in divisor term", offset);
    Ratio t(1);
    if (open > 0) {
      std::string_view coef = piece.substr(0, open);
      std::size_t last = coef.find_last_not_of(" \t");
      if (last == std::string_view::npos || coef[last] != '*')
        throw ParseError("expected '*' before div(", offset + open);
      t = Ratio::parse(coef.substr(0, last));
    }
    std::string_view body = piece.substr(open + 4, piece.size() - open - 5);
    Polynomial f;
    try {
      f = parsePolynomial(body, ring_);
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                       offset + open + 4 + e.position());
    }
    add(std::move(f), std::move(t));
  }

  FieldConfig ring_;
  std::vector<Component> parts_;
};

}  // namespace charp
