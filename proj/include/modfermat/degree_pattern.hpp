/// Certified lower bounds for the minimal degree of a rational factor of a
/// squarefree integer polynomial, from factor-degree patterns modulo several
/// good primes intersected through subset-sum sets.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "modfermat/upoly.hpp"

namespace modfermat {

struct DegreePatternReport {
  std::map<uint64_t, std::vector<long>> prime_patterns;  // prime -> factor degrees
  std::vector<uint64_t> bad_primes;                      // skipped, never patched
  long certified_min_degree = 0;
};

class NeedsMorePrimesError : public std::runtime_error {
 public:
  explicit NeedsMorePrimesError(std::vector<uint64_t> bad)
      : std::runtime_error("degree_pattern_bound: all supplied primes were bad"),
        bad_primes(std::move(bad)) {}
  std::vector<uint64_t> bad_primes;
};

/// p must be squarefree over Q. A prime is bad when it divides the leading
/// coefficient or p mod ell fails the squarefreeness check; bad primes are
/// skipped and listed. Throws NeedsMorePrimesError if every prime is bad.
DegreePatternReport degree_pattern_bound(const UPoly& p,
                                         const std::vector<uint64_t>& primes);

}  // namespace modfermat
