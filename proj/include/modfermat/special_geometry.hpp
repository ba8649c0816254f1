/// Combinatorics of special and weakly special subvarieties of Y(1)^k:
/// Hecke relations, smallest special subvariety of a rational point,
/// dimension and complexity, atypicality.
#pragma once

#include <optional>
#include <string>

#include "modfermat/modular_poly.hpp"

namespace modfermat {

/// Smallest N <= Nmax with Phi_N(x, y) = 0, exactly; nullopt otherwise.
std::optional<unsigned> hecke_related(PhiCache& phi, const Rational& x,
                                      const Rational& y, unsigned Nmax);

struct StructConstant {
  std::size_t coord = 0;  // 0-based
  Rational value;
  std::optional<long> disc;  // discriminant when the value is special
  bool via_link = false;     // made constant by a Hecke link to a special constant
};

struct StructLink {
  std::size_t lo = 0, hi = 0;  // 0-based coordinates, lo < hi
  unsigned level = 0;
};

struct SpecialStructure {
  unsigned k = 0;
  std::vector<StructConstant> constants;
  std::vector<std::vector<std::size_t>> classes;  // partition of the rest
  std::vector<StructLink> links;                  // discovered relations
  std::vector<std::string> caveats;

  unsigned dimension() const { return static_cast<unsigned>(classes.size()); }
  /// special iff every constant coordinate is special
  bool is_special_structure() const {
    for (const auto& c : constants)
      if (!c.disc && !c.via_link) return false;
    return true;
  }
};

/// Builds <P> up to the search bounds: coordinates special within dbound
/// become constants, Hecke-linked coordinates merge into classes, and a
/// non-constant coordinate linked to a special constant is folded into a
/// constant (isogenous-to-CM is CM). Relations beyond the bounds are
/// invisible and noted as a caveat.
SpecialStructure smallest_special(PhiCache& phi, const std::vector<Rational>& point,
                                  unsigned Nmax, long dbound);

struct DimComplexity {
  unsigned dimension = 0;
  long complexity = 1;  // max(|D|, N) over the structure's data; ambient = 1
};

DimComplexity dim_and_complexity(const SpecialStructure& T);

/// dim A > dim V + dim T - k. Throws std::invalid_argument unless
/// 0 <= dimA <= dimV <= k and dimT <= k.
bool is_atypical(long dimA, long dimV, long dimT, long k);
bool is_atypical(long dimA, long dimV, const SpecialStructure& T, long k);

/// Structured-text serialization (versioned); parses its own output.
std::string structure_to_text(const SpecialStructure& s);
SpecialStructure structure_from_text(const std::string& text);

}  // namespace modfermat
