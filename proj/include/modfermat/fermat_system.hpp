/// The modular Fermat system: Phi_N(x,u) = 0, Phi_M(y,v) = 0, u + v = 1.
/// Curve construction by elimination, exhaustive rational solution search in
/// height boxes, Galois-degree probes of the specialized polynomials, and
/// the k-variate generalized search.
#pragma once

#include <optional>

#include "modfermat/class_invariants.hpp"
#include "modfermat/degree_pattern.hpp"
#include "modfermat/modular_poly.hpp"
#include "modfermat/multipoly.hpp"

namespace modfermat {

/// All rationals u with height(u) <= H, sorted by (height, num, den).
std::vector<Rational> rationals_up_to_height(long H);

/// V_{N,M}(x, y) = Res_v(Phi_N(x, 1-v), Phi_M(y, v)), sign-normalized.
BiPoly fermat_curve(PhiCache& phi, unsigned N, unsigned M);

struct SolutionRecord {
  Rational x, y, u, v;
  unsigned N = 0, M = 0;
  std::optional<long> x_special, y_special, u_special, v_special;
};

bool solution_record_less(const SolutionRecord& a, const SolutionRecord& b);

/// Every solution of the system with height(u) <= H, N <= Nmax, M <= Mmax.
/// Each record is re-verified exactly before emission; output sorted by
/// (N, M, height(u), u, x, y). Specialness flags use |D| <= special_dbound.
std::vector<SolutionRecord> search_solutions(PhiCache& phi, unsigned Nmax,
                                             unsigned Mmax, long H,
                                             long special_dbound);

struct SGHProbeResult {
  Rational x;
  unsigned N = 0;
  bool has_rational_root = false;
  std::vector<Rational> roots;
  long certified_min_degree = 0;
  long najman_threshold = 0;  // ceil(N / 3)
  bool meets_najman = false;
  DegreePatternReport pattern;
  long specialized_degree = 0;
};

/// Specializes Phi_N(x, U), scans rational roots, and certifies a lower
/// bound for the minimal rational-factor degree from >= `prime_count` good
/// primes. Special x is rejected (the degree hypothesis being probed only
/// concerns non-special points) unless allow_special is set.
SGHProbeResult sgh_probe(PhiCache& phi, const Rational& x, unsigned N,
                         std::size_t prime_count = 5, long special_dbound = 10000,
                         bool allow_special = false);

struct GenWitness {
  Rational base;       // x_i with Phi_{N_i}(x_i, u_i) = 0
  unsigned level = 0;  // N_i
};

struct GenSolution {
  std::vector<Rational> coords;
  std::vector<GenWitness> witnesses;  // one per coordinate (minimal level)
  unsigned max_level = 0;
};

/// Rational points u on V = 0 whose coordinates all carry a witness
/// (x_i of height <= H, N_i <= Nmax) with Phi_{N_i}(x_i, u_i) = 0. The
/// candidate pool is the set of rational roots of Phi_N(x, .) over the
/// (x, N) grid; the last coordinate is solved from V. Results are grouped
/// by max N_i (ascending), deterministic.
std::vector<GenSolution> generalized_search(PhiCache& phi, const MultiPoly& V,
                                            unsigned k, unsigned Nmax, long H);

}  // namespace modfermat
