#include "modfermat/degree_pattern.hpp"

#include <bitset>

#include "modfermat/modpoly.hpp"

namespace modfermat {

namespace {

constexpr std::size_t kMaxDeg = 1024;

std::bitset<kMaxDeg> subset_sums(const std::vector<long>& degrees) {
  std::bitset<kMaxDeg> bits;
  bits.set(0);
  for (long d : degrees) bits |= bits << static_cast<std::size_t>(d);
  return bits;
}

}  // namespace

DegreePatternReport degree_pattern_bound(const UPoly& p,
                                         const std::vector<uint64_t>& primes) {
  if (p.is_zero() || p.degree() == 0)
    throw std::invalid_argument("degree_pattern_bound: need positive degree");
  if (p.degree() >= static_cast<long>(kMaxDeg))
    throw std::invalid_argument("degree_pattern_bound: degree too large");

  DegreePatternReport report;
  std::bitset<kMaxDeg> achievable;
  achievable.set();  // intersection identity
  for (uint64_t ell : primes) {
    if (!squarefree_mod(p, ell)) {
      report.bad_primes.push_back(ell);
      continue;
    }
    ModPoly reduced = ModPoly::reduce(p, ell);
    std::vector<long> pattern = ddf_degrees(reduced);
    achievable &= subset_sums(pattern);
    report.prime_patterns.emplace(ell, std::move(pattern));
  }
  if (report.prime_patterns.empty())
    throw NeedsMorePrimesError(report.bad_primes);

  for (std::size_t d = 1; d < kMaxDeg; ++d)
    if (achievable.test(d)) {
      report.certified_min_degree = static_cast<long>(d);
      break;
    }
  return report;
}

}  // namespace modfermat
