#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charp {

/// Base class for every error raised on invalid mathematical input.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero in F_p") {}
};

/// Raised when a Groebner computation would need S-polynomials above the
/// configured degree cap.
class DegreeCapExceeded : public DomainError {
 public:
  DegreeCapExceeded(unsigned long degree, unsigned long cap)
      : DomainError("Groebner basis degree " + std::to_string(degree) +
                    " exceeds degree cap " + std::to_string(cap)),
        degree_(degree), cap_(cap) {}
  unsigned long degree() const noexcept { return degree_; }
  unsigned long cap() const noexcept { return cap_; }

 private:
  unsigned long degree_;
  unsigned long cap_;
};

/// A chain did not stabilize within its level budget, so a yes/no answer
/// cannot be given.
class Inconclusive : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace charp
