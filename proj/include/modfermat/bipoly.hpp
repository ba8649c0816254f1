/// Sparse bivariate integer polynomials and resultant-based variable
/// elimination (subresultant PRS over the remaining variables).
#pragma once

#include <map>
#include <utility>

#include "modfermat/upoly.hpp"

namespace modfermat {

/// Exponent pair ordered lexicographically; the map order is the term order
/// used everywhere (serialization, leading-term normalization).
using ExpPair = std::pair<unsigned, unsigned>;

class BiPoly {
 public:
  BiPoly() = default;

  static BiPoly variable_x();
  static BiPoly variable_y();
  static BiPoly constant(Integer c);

  void set(unsigned i, unsigned j, Integer c);  // overwrites; drops zeros
  const Integer& coeff(unsigned i, unsigned j) const;
  const std::map<ExpPair, Integer>& terms() const { return t_; }

  bool is_zero() const { return t_.empty(); }
  long deg_x() const;
  long deg_y() const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly operator*(const Integer& k) const;
  bool operator==(const BiPoly& o) const { return t_ == o.t_; }

  Rational eval(const Rational& x, const Rational& y) const;

  BiPoly transpose() const;  // swap the variables
  bool is_symmetric() const { return *this == transpose(); }

  /// y -> a*v + b, result in (x, v).
  BiPoly substitute_y_linear(const Integer& a, const Integer& b) const;
  /// x -> a*v + b, result in (v, y).
  BiPoly substitute_x_linear(const Integer& a, const Integer& b) const;

  /// Specialize x = r and clear denominators by den(r)^deg_x.
  UPoly specialize_x(const Rational& r) const;
  /// Specialize y = r and clear denominators by den(r)^deg_y.
  UPoly specialize_y(const Rational& r) const;

  UPoly diagonal() const;  // p(X, X)

  Integer content() const;
  /// Flips the sign so the lexicographically leading term is positive.
  BiPoly sign_normalized() const;

  /// Coefficient of x^i as a polynomial in y.
  UPoly coeff_of_x(unsigned i) const;
  /// Build from coefficients-in-y indexed by x-degree.
  static BiPoly from_x_coeffs(const std::vector<UPoly>& cs);

 private:
  std::map<ExpPair, Integer> t_;
};

/// Res_T(p, q) where p is read in variables (A, T) and q in (T, B): the
/// second variable of p and the first of q are eliminated. The result is a
/// polynomial in (A, B), sign-normalized. Throws std::invalid_argument if an
/// input is zero or has degree 0 in T.
BiPoly resultant_eliminate(const BiPoly& p, const BiPoly& q);

}  // namespace modfermat
