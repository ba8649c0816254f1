/// Imaginary quadratic discriminants, reduced binary quadratic forms, class
/// numbers, Hilbert class polynomials, rational singular moduli, and the
/// bounded-discriminant no-special-points check on u + v = 1.
#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>

#include "modfermat/upoly.hpp"

namespace modfermat {

bool is_valid_discriminant(long D);  // D < 0 and D = 0 or 1 (mod 4)

struct BQForm {
  long a = 0, b = 0, c = 0;
  long discriminant() const { return b * b - 4 * a * c; }
};

/// Complete list of reduced primitive forms of discriminant D, enumerated
/// with a ascending and positive b before negative b.
std::vector<BQForm> reduced_forms(long D);

unsigned long class_number(long D);

struct ClassPolynomial {
  long discriminant = 0;
  UPoly poly;  // monic, degree = class number
  unsigned long class_number = 0;
};

/// H_D by evaluating j at each form's root with precision from the
/// sum-of-pole-heights estimate plus guard bits; coefficients are rounded to
/// integers and the rounding residual must stay below 1/4 (one doubling
/// retry, then a hard error). extra_guard_bits raises the working precision
/// (used to confirm rounding stability).
ClassPolynomial hilbert_class_polynomial(long D, long extra_guard_bits = 0);

/// D with |D| <= dbound and H_D(x) = 0, if any. For rational x only integer
/// x can be special: a rational singular modulus is an algebraic integer of
/// degree h(D) = 1, hence a rational integer.
std::optional<long> is_special(const Rational& x, long dbound);

/// All (D, j) with |D| <= dbound and h(D) = 1, D descending from -3.
std::vector<std::pair<long, Integer>> rational_singular_moduli(long dbound);

struct KuhneReport {
  long dbound = 0;
  unsigned long discriminants = 0;
  unsigned long pairs_checked = 0;
  std::vector<std::pair<long, long>> violations;  // resultant vanished (none expected)
  bool all_pass() const { return violations.empty(); }
};

/// For every ordered pair (D1, D2) with |Di| <= dbound, certifies
/// Res(H_D1(X), H_D2(1 - X)) != 0: no special point (sigma, sigma') lies on
/// u + v = 1 within the bound. Nonzero is certified modulo a prime (the
/// reductions stay monic); a zero residue falls back to the exact resultant.
KuhneReport kuhne_check(long dbound, unsigned threads = 1);

/// Disk cache for class polynomials, layout <dir>/hd/<|D|>.poly.
class HdCache {
 public:
  HdCache(std::filesystem::path cache_dir, long max_disc);
  const ClassPolynomial& get(long D);
  std::vector<std::string> drain_warnings();

 private:
  std::optional<ClassPolynomial> load_from_disk(long D);
  void store_to_disk(const ClassPolynomial& hd);

  std::filesystem::path dir_;
  long max_disc_;
  std::mutex mu_;
  std::map<long, std::unique_ptr<ClassPolynomial>> mem_;
  std::vector<std::string> warnings_;
};

}  // namespace modfermat
