/// Arbitrary-precision integers and rationals plus the small number-theoretic
/// helpers (factorization, radicals, totient) shared across the library.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace modfermat {

using Integer = mpz_class;
using Rational = mpq_class;

/// height(a/b) = max(|a|, b) for a/b in lowest terms, b >= 1.
Integer height(const Rational& r);

/// Total order on rationals by (height, numerator, denominator).
bool rational_less(const Rational& a, const Rational& b);

/// Parses "a", "-a" or "a/b" exactly. Throws std::invalid_argument on junk
/// or zero denominator. The result is canonicalized.
Rational parse_rational(const std::string& text);

Integer parse_integer(const std::string& text);

std::string to_string(const Integer& n);
std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer pow_integer(const Integer& base, unsigned long exp);

/// Exact n = r^p test for p >= 1 and n != 0. Negative n allowed for odd p.
std::optional<Integer> exact_root(const Integer& n, unsigned long p);

/// Prime factorization of n >= 1 as (prime, multiplicity), primes ascending.
/// Trial division up to 10^6 followed by Brent-Pollard rho.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

/// Product of the distinct primes dividing n; radical(1) = 1. Requires n >= 1.
Integer radical_of(const Integer& n);

unsigned long euler_phi(unsigned long n);

bool is_squarefree(unsigned long n);

/// First `count` primes, ascending, starting from `from` (inclusive).
std::vector<unsigned long> primes_from(unsigned long from, std::size_t count);

bool is_prime(const Integer& n);

}  // namespace modfermat
