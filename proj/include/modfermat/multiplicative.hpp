/// Multiplicative-side machinery: abc triples and quality, the S-unit
/// Fermat search with cleared integer certificates, reducibility of pure
/// equations X^n - c over Q, and order-derived degree lower bounds.
#pragma once

#include <string>

#include "modfermat/numbers.hpp"

namespace modfermat {

struct SUnitGroup {
  std::vector<unsigned long> primes;  // distinct, ascending
  // -1 is always a generator
};

struct AbcTriple {
  Integer a, b, c;     // a + b = c, gcd(a, b) = 1, all positive
  Integer radical;     // rad(abc)
  double quality = 0;  // log c / log rad(abc)
};

AbcTriple abc_quality(const Integer& a, const Integer& b);

struct FmlSolution {
  Rational s, t, x, y;
  unsigned n = 0, m = 0;
  // cleared certificate: S*A^n + T*C^m = U*B^n with gcd of the terms 1
  Integer S, A, T, C, U, B;
  AbcTriple abc;  // quality of the cleared identity
};

/// Exhaustive search for s x^n + t y^m = 1 with s, t in the S-unit group
/// (prime exponents bounded by sunit_exp_max), x, y rational of height
/// <= base_height, x, y not in {0, +-1}, n, m in [nmin, exp_max].
/// Deterministic order; empty output is a valid outcome.
std::vector<FmlSolution> fml_search(const SUnitGroup& G, unsigned nmin,
                                    unsigned exp_max, long base_height,
                                    unsigned sunit_exp_max);

struct Reducibility {
  bool reducible = false;
  std::string reason;
};

/// X^n - c reducible over Q iff c is a p-th power in Q for a prime p | n,
/// or 4 | n and -c/4 is a fourth power in Q.
Reducibility pure_equation_reducible(const Rational& c, unsigned long n);

struct RismanBound {
  unsigned long n = 0;
  unsigned long h_min = 0;
  unsigned long t = 0, ell = 0;  // witness: n = t*ell, t squarefree
};

/// h_min = min over n = t*ell (t squarefree) of max(ell, phi(t)); any theta
/// of order n over Q has degree >= h_min. Lower bound only.
RismanBound risman_order_bound(unsigned long n);

}  // namespace modfermat
