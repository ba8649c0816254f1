#include "modfermat/fermat_system.hpp"
#include <numeric>

#include <algorithm>
#include <map>

#include "modfermat/modpoly.hpp"
#include "modfermat/rational_roots.hpp"

namespace modfermat {

std::vector<Rational> rationals_up_to_height(long H) {
  if (H < 1) throw std::invalid_argument("height bound must be >= 1");
  std::vector<Rational> out;
  for (long b = 1; b <= H; ++b)
    for (long a = -H; a <= H; ++a) {
      if (std::gcd(std::labs(a), b) != 1) continue;
      out.emplace_back(a, b);
    }
  for (auto& r : out) r.canonicalize();
  std::sort(out.begin(), out.end(), rational_less);
  return out;
}

BiPoly fermat_curve(PhiCache& phi, unsigned N, unsigned M) {
  if (N == 0 || M == 0) throw std::invalid_argument("fermat_curve: levels >= 1");
  // p(x, v) = Phi_N(x, 1 - v); q(v, y) = Phi_M(y, v) with v first
  BiPoly p = phi.get(N).poly.substitute_y_linear(-1, 1);
  BiPoly q = phi.get(M).poly.transpose();  // (v, y): v = first variable
  return resultant_eliminate(p, q);
}

namespace {

std::vector<Rational> phi_roots_at(PhiCache& phi, unsigned N, const Rational& value) {
  // rational roots of Phi_N(X, value)
  UPoly spec = phi.get(N).poly.specialize_y(value).primitive_part();
  std::vector<Rational> out;
  for (const auto& [r, mult] : rational_roots(spec)) out.push_back(r);
  return out;
}

}  // namespace

bool solution_record_less(const SolutionRecord& a, const SolutionRecord& b) {
  if (a.N != b.N) return a.N < b.N;
  if (a.M != b.M) return a.M < b.M;
  if (a.u != b.u) return rational_less(a.u, b.u);
  if (a.x != b.x) return rational_less(a.x, b.x);
  if (a.y != b.y) return rational_less(a.y, b.y);
  return false;
}

std::vector<SolutionRecord> search_solutions(PhiCache& phi, unsigned Nmax,
                                             unsigned Mmax, long H,
                                             long special_dbound) {
  if (Nmax == 0 || Mmax == 0) throw std::invalid_argument("level bounds must be >= 1");
  if (Nmax > phi.max_level() || Mmax > phi.max_level())
    throw std::invalid_argument("level bound exceeds the configured phi maximum");
  std::vector<SolutionRecord> out;
  std::vector<Rational> us = rationals_up_to_height(H);
  for (const Rational& u : us) {
    Rational v = Rational(1) - u;
    // roots per level, computed once per side
    std::vector<std::vector<Rational>> xs(Nmax + 1), ys(Mmax + 1);
    bool any_x = false;
    for (unsigned N = 1; N <= Nmax; ++N) {
      xs[N] = phi_roots_at(phi, N, u);
      any_x = any_x || !xs[N].empty();
    }
    if (!any_x) continue;
    for (unsigned M = 1; M <= Mmax; ++M) ys[M] = phi_roots_at(phi, M, v);
    for (unsigned N = 1; N <= Nmax; ++N)
      for (unsigned M = 1; M <= Mmax; ++M)
        for (const Rational& x : xs[N])
          for (const Rational& y : ys[M]) {
            SolutionRecord rec;
            rec.x = x;
            rec.y = y;
            rec.u = u;
            rec.v = v;
            rec.N = N;
            rec.M = M;
            // soundness: re-verify by independent exact evaluation
            if (phi.get(N).poly.eval(x, u) != 0) continue;
            if (phi.get(M).poly.eval(y, v) != 0) continue;
            if (u + v != 1) continue;
            rec.x_special = is_special(x, special_dbound);
            rec.y_special = is_special(y, special_dbound);
            rec.u_special = is_special(u, special_dbound);
            rec.v_special = is_special(v, special_dbound);
            out.push_back(std::move(rec));
          }
  }
  std::sort(out.begin(), out.end(), solution_record_less);
  return out;
}

SGHProbeResult sgh_probe(PhiCache& phi, const Rational& x, unsigned N,
                         std::size_t prime_count, long special_dbound,
                         bool allow_special) {
  if (N < 2) throw std::invalid_argument("sgh_probe: N >= 2");
  if (!allow_special) {
    if (auto D = is_special(x, special_dbound))
      throw std::invalid_argument(
          "sgh_probe: x = " + to_string(x) + " is a singular modulus (D = " +
          std::to_string(*D) +
          "); the degree hypothesis being probed concerns non-special points");
  }
  SGHProbeResult res;
  res.x = x;
  res.N = N;
  res.najman_threshold = (static_cast<long>(N) + 2) / 3;

  UPoly spec = phi.get(N).poly.specialize_x(x).primitive_part();
  res.specialized_degree = spec.degree();
  for (const auto& [r, mult] : rational_roots(spec)) res.roots.push_back(r);
  res.has_rational_root = !res.roots.empty();

  UPoly sf = squarefree_part(spec);
  // collect good primes until prime_count patterns were gathered
  std::vector<uint64_t> primes;
  unsigned long next = 3;
  std::size_t good = 0;
  while (good < prime_count && primes.size() < prime_count + 60) {
    uint64_t p = primes_from(next, 1)[0];
    next = p + 1;
    primes.push_back(p);
    if (squarefree_mod(sf, p)) ++good;
  }
  res.pattern = degree_pattern_bound(sf, primes);
  res.certified_min_degree = res.pattern.certified_min_degree;
  res.meets_najman = res.certified_min_degree >= res.najman_threshold;
  return res;
}

std::vector<GenSolution> generalized_search(PhiCache& phi, const MultiPoly& V,
                                            unsigned k, unsigned Nmax, long H) {
  if (V.is_zero()) throw std::invalid_argument("generalized_search: zero polynomial");
  if (V.arity() != k) throw std::invalid_argument("generalized_search: arity mismatch");
  if (k == 0 || k > 4) throw std::invalid_argument("generalized_search: 1 <= k <= 4");
  if (Nmax > phi.max_level())
    throw std::invalid_argument("level bound exceeds the configured phi maximum");

  // candidate pool: u with a witness (x, N); keep the minimal-level witness
  std::map<Rational, GenWitness, bool (*)(const Rational&, const Rational&)> pool(
      &rational_less);
  for (unsigned N = 1; N <= Nmax; ++N)
    for (const Rational& x : rationals_up_to_height(H))
      for (const Rational& u : phi_roots_at(phi, N, x)) {
        auto it = pool.find(u);
        if (it == pool.end())
          pool.emplace(u, GenWitness{x, N});
        else if (N < it->second.level ||
                 (N == it->second.level && rational_less(x, it->second.base)))
          it->second = GenWitness{x, N};
      }

  std::vector<Rational> candidates;
  for (const auto& [u, w] : pool) candidates.push_back(u);

  std::vector<GenSolution> out;
  std::vector<Rational> tuple(k);
  // enumerate the first k-1 coordinates; solve V for the last one
  std::vector<std::size_t> idx(k > 0 ? k - 1 : 0, 0);
  auto emit = [&](const std::vector<Rational>& coords) {
    GenSolution sol;
    sol.coords = coords;
    for (const Rational& c : coords) {
      const GenWitness& w = pool.at(c);
      sol.witnesses.push_back(w);
      sol.max_level = std::max(sol.max_level, w.level);
    }
    out.push_back(std::move(sol));
  };

  if (k == 1) {
    for (const Rational& u : candidates)
      if (V.eval({u}) == 0) emit({u});
  } else {
    std::vector<std::size_t> counter(k - 1, 0);
    bool done = candidates.empty();
    while (!done) {
      std::vector<Rational> partial(k);
      for (unsigned i = 0; i + 1 < k; ++i) partial[i] = candidates[counter[i]];
      // specialize V in the last coordinate and intersect roots with the pool
      UPoly last = V.specialize_all_but(k - 1, partial);
      if (last.is_zero()) {
        // identically zero slice: every candidate works in the last slot
        for (const Rational& u : candidates) {
          partial[k - 1] = u;
          emit(partial);
        }
      } else if (last.degree() >= 1) {
        for (const auto& [r, mult] : rational_roots(last)) {
          if (!pool.count(r)) continue;
          partial[k - 1] = r;
          emit(partial);
        }
      }
      // advance the counter
      long pos = static_cast<long>(k) - 2;
      while (pos >= 0) {
        if (++counter[pos] < candidates.size()) break;
        counter[pos] = 0;
        --pos;
      }
      if (pos < 0) done = true;
    }
  }
  std::sort(out.begin(), out.end(), [](const GenSolution& a, const GenSolution& b) {
    if (a.max_level != b.max_level) return a.max_level < b.max_level;
    for (std::size_t i = 0; i < a.coords.size() && i < b.coords.size(); ++i)
      if (a.coords[i] != b.coords[i]) return rational_less(a.coords[i], b.coords[i]);
    return false;
  });
  return out;
}

}  // namespace modfermat
