/// Complete rational root extraction for integer polynomials, sound for
/// coefficients of any size: roots are located modulo a small good prime,
/// Hensel-lifted past the root height bound, rationally reconstructed and
/// then verified by exact evaluation.
#pragma once

#include <map>

#include "modfermat/upoly.hpp"

namespace modfermat {

/// All rational roots of p with multiplicities. Throws std::invalid_argument
/// for the zero polynomial.
std::map<Rational, unsigned, bool (*)(const Rational&, const Rational&)>
rational_roots(const UPoly& p);

/// Test-oracle flavour: candidates from divisor enumeration of the leading
/// and trailing coefficients (complete only when those factor; intended for
/// small inputs and cross-checks).
std::map<Rational, unsigned, bool (*)(const Rational&, const Rational&)>
rational_roots_by_divisors(const UPoly& p);

}  // namespace modfermat
