/// Dense polynomial arithmetic over F_p for word-sized primes: the engine
/// behind squarefreeness probes, distinct-degree factorization and modular
/// root finding.
#pragma once

#include <cstdint>
#include <vector>

#include "modfermat/upoly.hpp"

namespace modfermat {

/// Polynomial over F_p, coefficients in [0, p), ascending degree, no
/// trailing zeros.
class ModPoly {
 public:
  ModPoly(uint64_t p, std::vector<uint64_t> coeffs);
  static ModPoly reduce(const UPoly& f, uint64_t p);
  static ModPoly x(uint64_t p);

  uint64_t prime() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<uint64_t>& coeffs() const { return c_; }

  ModPoly mul(const ModPoly& o) const;
  ModPoly sub(const ModPoly& o) const;
  ModPoly rem(const ModPoly& mod) const;
  ModPoly monic() const;
  ModPoly derivative() const;

  static ModPoly gcd(ModPoly a, ModPoly b);

  /// (this^e) mod `mod`, binary exponentiation with big exponent.
  ModPoly powmod(const Integer& e, const ModPoly& mod) const;

  /// Exact quotient this / o (remainder must vanish).
  ModPoly divexact(const ModPoly& o) const;

  /// Roots in F_p by evaluation for tiny p, else by gcd splitting.
  std::vector<uint64_t> roots() const;

  uint64_t eval(uint64_t x) const;

 private:
  void normalize();
  uint64_t p_;
  std::vector<uint64_t> c_;
};

/// True if f mod p keeps its degree and is squarefree over F_p
/// (that certifies squarefreeness over Q).
bool squarefree_mod(const UPoly& f, uint64_t p);

/// Degrees of the irreducible factors of a squarefree monic f over F_p,
/// via distinct-degree factorization. Returns the multiset, ascending.
std::vector<long> ddf_degrees(const ModPoly& f);

}  // namespace modfermat
