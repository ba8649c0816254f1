#include "modfermat/rational_roots.hpp"

#include <algorithm>
#include <stdexcept>

#include "modfermat/modpoly.hpp"

namespace modfermat {

using RootMap = std::map<Rational, unsigned, bool (*)(const Rational&, const Rational&)>;

namespace {

RootMap make_root_map() { return RootMap(&rational_less); }

// strips X^k and returns k
unsigned strip_zero_root(UPoly& p) {
  unsigned k = 0;
  while (!p.is_zero() && p.coeff(0) == 0) {
    std::vector<Integer> c(p.coeffs().begin() + 1, p.coeffs().end());
    p = UPoly(std::move(c));
    ++k;
  }
  return k;
}

Integer root_height_bound(const UPoly& p) {
  // any rational root s/t of p (lowest terms) has max(|s|, t) <= ||p||_2
  Integer s2 = 0;
  for (const auto& c : p.coeffs()) s2 += c * c;
  Integer b = sqrt(s2) + 1;
  return b;
}

Integer hensel_lift_root(const UPoly& f, uint64_t ell, uint64_t r0,
                         const Integer& target_modulus) {
  Integer M(static_cast<unsigned long>(ell));
  Integer r(static_cast<unsigned long>(r0));
  const UPoly df = f.derivative();
  while (M < target_modulus) {
    Integer M2 = M * M;
    Integer fr = f.eval(r) % M2;
    Integer dfr = df.eval(r) % M2;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), M2.get_mpz_t()) == 0)
      throw std::runtime_error("hensel: derivative not invertible");
    r = (r - fr * inv) % M2;
    if (r < 0) r += M2;
    M = M2;
  }
  return r;
}

// rational reconstruction: s/t with |s|, t <= bound and s = t*r (mod M)
bool rational_reconstruct(const Integer& r, const Integer& M,
                          const Integer& bound, Rational& out) {
  Integer a0 = M, a1 = r % M;
  if (a1 < 0) a1 += M;
  Integer t0 = 0, t1 = 1;
  while (a1 > bound) {
    Integer q = a0 / a1;
    Integer a2 = a0 - q * a1;
    Integer t2 = t0 - q * t1;
    a0 = a1;
    a1 = a2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return false;
  if (t1 < 0) {
    t1 = -t1;
    a1 = -a1;
  }
  if (t1 > bound) return false;
  if (gcd(a1, t1) != 1) return false;
  out = Rational(a1, t1);
  out.canonicalize();
  return true;
}

void verified_insert(RootMap& roots, const UPoly& original, const Rational& cand) {
  if (roots.count(cand)) return;
  if (original.eval(cand) != 0) return;
  unsigned mult = root_multiplicity(original, cand);
  roots.emplace(cand, mult);
}

}  // namespace

RootMap rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  RootMap roots = make_root_map();
  UPoly work = p;
  unsigned zero_mult = strip_zero_root(work);
  if (zero_mult > 0) roots.emplace(Rational(0), zero_mult);
  if (work.degree() <= 0) return roots;
  work = work.primitive_part();
  if (work.degree() == 1) {
    Rational r(-work.coeff(0), work.coeff(1));
    r.canonicalize();
    verified_insert(roots, p, r);
    return roots;
  }

  // squarefree model to factor modulo a good prime
  UPoly sf = work;
  uint64_t good = 0;
  auto candidates = primes_from(3, 60);
  for (uint64_t ell : candidates)
    if (squarefree_mod(work, ell)) {
      good = ell;
      break;
    }
  if (good == 0) {
    sf = squarefree_part(work);
    for (uint64_t ell : candidates)
      if (squarefree_mod(sf, ell)) {
        good = ell;
        break;
      }
    if (good == 0)
      throw std::runtime_error("rational_roots: no good prime found");
  }

  const Integer B = root_height_bound(work);
  const Integer target = 2 * B * B + 1;
  ModPoly reduced = ModPoly::reduce(sf, good);
  for (uint64_t r0 : reduced.roots()) {
    Integer lifted = hensel_lift_root(sf, good, r0, target);
    Integer M(static_cast<unsigned long>(good));
    while (M < target) M = M * M;
    Rational cand;
    if (rational_reconstruct(lifted, M, B, cand)) verified_insert(roots, p, cand);
  }
  return roots;
}

RootMap rational_roots_by_divisors(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  RootMap roots = make_root_map();
  UPoly work = p;
  unsigned zero_mult = strip_zero_root(work);
  if (zero_mult > 0) roots.emplace(Rational(0), zero_mult);
  if (work.degree() <= 0) return roots;
  work = work.primitive_part();

  auto divisors = [](const Integer& n) {
    std::vector<Integer> ds{1};
    for (const auto& [prime, e] : factorize(abs(n))) {
      std::size_t sz = ds.size();
      Integer pk = 1;
      for (unsigned i = 1; i <= e; ++i) {
        pk *= prime;
        for (std::size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pk);
      }
    }
    return ds;
  };

  for (const Integer& s : divisors(work.coeff(0)))
    for (const Integer& t : divisors(work.lc())) {
      for (int sign : {1, -1}) {
        Rational cand(sign * s, t);
        cand.canonicalize();
        verified_insert(roots, p, cand);
      }
    }
  return roots;
}

}  // namespace modfermat
