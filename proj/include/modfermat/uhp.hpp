/// Upper-half-plane numerics: fundamental-domain reduction, numeric j and
/// its inverse, level-N coset representatives, and the conjugates-to-roots
/// counting experiment.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "modfermat/bipoly.hpp"
#include "modfermat/mpcomplex.hpp"

namespace modfermat {

struct UHPoint {
  MpComplex tau;  // im > 0
};

struct SL2Matrix {
  Integer a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]], det 1
  Integer det() const { return a * d - b * c; }
};

struct ReduceResult {
  UHPoint point;
  SL2Matrix gamma;  // gamma * input = point
};

/// Reduces tau into F = {|Re| <= 1/2, |tau| >= 1} (within a small boundary
/// tolerance). Throws PrecisionError-style std::runtime_error if the loop
/// fails to converge.
ReduceResult reduce_to_F(const UHPoint& tau);

struct JNumeric {
  MpComplex value;
  double tail_log2;  // log2 bound on the truncation error
};

/// j(tau) after reduction to F; |q| <= e^{-pi sqrt(3)} makes the series tail
/// geometric.
JNumeric j_numeric(const UHPoint& tau, long precision_bits);

/// tau in F with |j(tau) - x| below ~2^(-precision/4); q-coordinate Newton
/// with damping, coarse F-grid fallback. Throws std::runtime_error on
/// non-convergence after grid refinement.
UHPoint j_inverse(const MpComplex& x, long precision_bits);

struct CosetRep {
  unsigned a = 0, b = 0, d = 0;  // a*d = N, 0 <= b < d, gcd(a,b,d) = 1
  unsigned height() const { return std::max(a, std::max(b, d)); }
};

std::vector<CosetRep> level_coset_reps(unsigned N);

struct CountingMatch {
  CosetRep rep;
  MpComplex coset_value;   // j((a tau + b)/d)
  MpComplex matched_root;  // root of the exact specialization
  double residual;
};

struct CountingReport {
  Rational x;
  unsigned level = 0;
  std::vector<CountingMatch> matches;          // psi(N) of them
  std::map<unsigned, unsigned> height_histogram;  // max(a,b,d) -> count
  double max_residual = 0.0;
};

/// Numeric roots of an integer polynomial (Durand-Kerner on the squarefree
/// part, multiplicities restored exactly). Roots are returned with
/// multiplicity, unordered.
std::vector<MpComplex> numeric_roots(const UPoly& p, long precision_bits);

/// The desk-scale face of the conjugate-counting argument: evaluates j at
/// every level-N coset image of j^{-1}(x) and matches the values bijectively
/// to the numeric roots of the exact specialization Phi_N(x, U).
/// `phi` must be the level-N modular polynomial.
CountingReport counting_experiment(const Rational& x, unsigned N,
                                   long precision_bits, const BiPoly& phi,
                                   double tolerance);

}  // namespace modfermat
