/// Dense univariate polynomials with arbitrary-precision integer
/// coefficients: arithmetic, content, pseudo-division, subresultant PRS
/// (gcd, resultant), exact evaluation, squarefree part.
#pragma once

#include <vector>

#include "modfermat/numbers.hpp"

namespace modfermat {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Integer> coeffs);  // coeffs[i] multiplies X^i
  static UPoly constant(Integer c);
  static UPoly monomial(Integer c, std::size_t deg);

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for 0
  const Integer& lc() const;
  const Integer& coeff(std::size_t i) const;
  const std::vector<Integer>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Integer& k) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;

  UPoly derivative() const;
  Integer content() const;  // gcd of coefficients, 0 for the zero polynomial
  UPoly primitive_part() const;

  /// X -> a*X + b composition.
  UPoly compose_linear(const Integer& a, const Integer& b) const;

  /// Exact quotient; throws if o does not divide *this over Z.
  UPoly exact_divide(const UPoly& o) const;
  bool divides(const UPoly& o) const;  // does *this divide o over Q (by degrees/remainder)

  std::string to_text() const;  // human form, ascending powers
 private:
  void normalize();
  std::vector<Integer> c_;
};

/// Pseudo-remainder: lc(B)^(degA-degB+1) * A = Q*B + R with deg R < deg B.
UPoly pseudo_rem(const UPoly& a, const UPoly& b);

/// gcd over Z (primitive, positive leading coefficient) via subresultant PRS.
UPoly upoly_gcd(const UPoly& a, const UPoly& b);

/// Resultant over Z via the subresultant PRS, exact including sign.
Integer upoly_resultant(const UPoly& a, const UPoly& b);

/// p / gcd(p, p'), primitive with positive leading coefficient.
UPoly squarefree_part(const UPoly& p);

/// Yun decomposition: result[i] is the (primitive, positive-lc) product of
/// the irreducible factors of multiplicity i+1; the product of
/// result[i]^(i+1) equals p up to a rational constant.
std::vector<UPoly> squarefree_decomposition(const UPoly& p);

/// Divides p by (den*X - num) as often as it divides exactly over Q;
/// returns the multiplicity (0 if num/den is not a root).
unsigned root_multiplicity(const UPoly& p, const Rational& root);

}  // namespace modfermat
