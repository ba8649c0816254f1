/// Sparse k-variate integer polynomials (evaluation only; no elimination)
/// and the shared exact polynomial text format:
///
///   POLY <var1,...,vark> <nterms>
///   <exp_1> ... <exp_k> <decimal coefficient>
///
/// one line per term, terms sorted lexicographically by exponent vector.
/// Lines starting with '#' and blank lines are ignored on input.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "modfermat/bipoly.hpp"
#include "modfermat/upoly.hpp"

namespace modfermat {

class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(std::vector<std::string> vars,
            std::vector<std::pair<std::vector<unsigned>, Integer>> terms);

  std::size_t arity() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<std::pair<std::vector<unsigned>, Integer>>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  Rational eval(const std::vector<Rational>& point) const;

  /// Fix every variable except `free_index`; returns the univariate
  /// polynomial in that variable with denominators cleared.
  UPoly specialize_all_but(std::size_t free_index,
                           const std::vector<Rational>& values) const;

  static MultiPoly from_bipoly(const BiPoly& p, const std::string& x,
                               const std::string& y);
  static MultiPoly from_upoly(const UPoly& p, const std::string& x);
  BiPoly to_bipoly() const;  // arity must be 2
  UPoly to_upoly() const;    // arity must be 1

 private:
  void normalize();
  std::vector<std::string> vars_;
  std::vector<std::pair<std::vector<unsigned>, Integer>> terms_;  // sorted lex
};

std::string poly_to_text(const MultiPoly& p);
MultiPoly poly_from_text(const std::string& text);
MultiPoly poly_from_stream(std::istream& in);

}  // namespace modfermat
