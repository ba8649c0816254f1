#include "modfermat/multiplicative.hpp"
#include <numeric>

#include <algorithm>
#include <map>
#include <stdexcept>

#include "modfermat/mpcomplex.hpp"

namespace modfermat {

namespace {

double log_ratio(const Integer& num, const Integer& den) {
  // log(num) / log(den) at 128 bits, exactly enough for reporting
  MpFloat n = MpFloat::from_integer(num, 128);
  MpFloat d = MpFloat::from_integer(den, 128);
  MpFloat ln(128), ld(128);
  mpfr_log(ln.raw(), n.raw(), MPFR_RNDN);
  mpfr_log(ld.raw(), d.raw(), MPFR_RNDN);
  return (ln / ld).to_double();
}

}  // namespace

AbcTriple abc_quality(const Integer& a, const Integer& b) {
  if (a < 1 || b < 1) throw std::invalid_argument("abc_quality: a, b >= 1");
  if (gcd(a, b) != 1) throw std::invalid_argument("abc_quality: gcd(a, b) must be 1");
  AbcTriple t;
  t.a = a;
  t.b = b;
  t.c = a + b;
  t.radical = radical_of(a * b * t.c);
  t.quality = log_ratio(t.c, t.radical);
  return t;
}

namespace {

// multiplicity of prime p in n (n != 0)
unsigned val_p(Integer& n, const Integer& p) {
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

}  // namespace

std::vector<FmlSolution> fml_search(const SUnitGroup& G, unsigned nmin,
                                    unsigned exp_max, long base_height,
                                    unsigned sunit_exp_max) {
  if (nmin < 4)
    throw std::invalid_argument("fml_search: nmin >= 4 (the regime searched)");
  if (exp_max < nmin) throw std::invalid_argument("fml_search: exp_max >= nmin");
  for (std::size_t i = 1; i < G.primes.size(); ++i)
    if (G.primes[i] <= G.primes[i - 1])
      throw std::invalid_argument("fml_search: primes must be distinct ascending");

  // enumerate the S-units s = +- prod p^e, |e| <= sunit_exp_max
  std::vector<Rational> sunits;
  {
    std::vector<Rational> acc{Rational(1)};
    for (unsigned long p : G.primes) {
      std::vector<Rational> next;
      for (const Rational& r : acc)
        for (long e = -static_cast<long>(sunit_exp_max);
             e <= static_cast<long>(sunit_exp_max); ++e) {
          Rational q = r;
          Integer pk = pow_integer(Integer(p), static_cast<unsigned long>(std::labs(e)));
          if (e >= 0)
            q *= Rational(pk);
          else
            q /= Rational(pk);
          next.push_back(q);
        }
      acc = std::move(next);
    }
    for (const Rational& r : acc) {
      sunits.push_back(r);
      sunits.push_back(-r);
    }
    std::sort(sunits.begin(), sunits.end(), rational_less);
    sunits.erase(std::unique(sunits.begin(), sunits.end()), sunits.end());
  }

  std::vector<Rational> bases;
  for (long b = 1; b <= base_height; ++b)
    for (long a = -base_height; a <= base_height; ++a) {
      if (std::gcd(std::labs(a), b) != 1) continue;
      Rational r(a, b);
      r.canonicalize();
      if (r == 0 || r == 1 || r == -1) continue;
      bases.push_back(r);
    }
  std::sort(bases.begin(), bases.end(), rational_less);

  auto rational_pow = [](const Rational& x, unsigned e) {
    Rational r(pow_integer(x.get_num(), e), pow_integer(x.get_den(), e));
    r.canonicalize();
    return r;
  };
  auto rational_root = [](const Rational& w, unsigned m) -> std::optional<Rational> {
    if (w == 0) return std::nullopt;
    auto rn = exact_root(w.get_num(), m);
    if (!rn) return std::nullopt;
    auto rd = exact_root(w.get_den(), m);
    if (!rd) return std::nullopt;
    Rational r(*rn, *rd);
    r.canonicalize();
    return r;
  };

  std::vector<FmlSolution> out;
  for (const Rational& s : sunits)
    for (const Rational& x : bases)
      for (unsigned n = nmin; n <= exp_max; ++n) {
        Rational left = s * rational_pow(x, n);
        Rational rest = Rational(1) - left;
        if (rest == 0) continue;  // t y^m = 0 impossible
        for (const Rational& t : sunits)
          for (unsigned m = nmin; m <= exp_max; ++m) {
            Rational w = rest / t;
            auto y = rational_root(w, m);
            if (!y) continue;
            if (*y == 0 || *y == 1 || *y == -1) continue;
            if (height(*y) > base_height) continue;

            FmlSolution sol;
            sol.s = s;
            sol.t = t;
            sol.x = x;
            sol.y = *y;
            sol.n = n;
            sol.m = m;

            // canonical clearing: strip the G-primes (and signs) из x, y into s, t
            Rational s2 = s, t2 = t;
            Integer A = x.get_num(), B = x.get_den();
            Integer C = y->get_num(), D = y->get_den();
            for (unsigned long pl : G.primes) {
              Integer p(pl);
              Rational pr(p);
              for (Integer* z : {&A, &B, &C, &D}) {
                unsigned e = val_p(*z, p);
                if (e == 0) continue;
                bool numerator = (z == &A || z == &C);
                bool xside = (z == &A || z == &B);
                unsigned power = xside ? n : m;
                Rational shift(pow_integer(p, static_cast<unsigned long>(e) * power));
                Rational& target = xside ? s2 : t2;
                if (numerator)
                  target *= shift;
                else
                  target /= shift;
              }
            }
            if (A < 0) {
              // x^n sign: odd n moves the sign into s2
              if (n % 2 == 1) s2 = -s2;
              A = -A;
            }
            if (C < 0) {
              if (m % 2 == 1) t2 = -t2;
              C = -C;
            }
            // now s2 (A/B)^n + t2 (C/D)^m = 1 with A,B,C,D positive, coprime to P
            // and B^n = D^m (both sides share the one non-S-unit denominator)
            Integer Bn = pow_integer(B, n), Dm = pow_integer(D, m);
            if (Bn != Dm) continue;  // cannot happen; guards the reduction
            Integer lam = lcm(s2.get_den(), t2.get_den());
            Integer termS = s2.get_num() * (lam / s2.get_den());
            Integer termT = t2.get_num() * (lam / t2.get_den());
            Integer g = gcd(gcd(termS, termT), lam);
            sol.S = termS / g;
            sol.T = termT / g;
            sol.U = lam / g;
            sol.A = A;
            sol.B = B;
            sol.C = C;
            // exact re-verification of the certificate
            Integer lhs = sol.S * pow_integer(A, n) + sol.T * pow_integer(C, m);
            Integer rhs = sol.U * pow_integer(B, n);
            if (lhs != rhs)
              throw std::runtime_error("fml_search: certificate verification failed");

            // abc quality of the positive rearrangement
            Integer v1 = sol.S * pow_integer(A, n);
            Integer v2 = sol.T * pow_integer(C, m);
            Integer v3 = -rhs;
            // v1 + v2 + v3 = 0; the largest-magnitude term is the c side
            Integer a1 = abs(v1), a2 = abs(v2), a3 = abs(v3);
            Integer big = std::max(std::max(a1, a2), a3);
            Integer p1, p2;
            if (a1 == big) {
              p1 = a2;
              p2 = a3;
            } else if (a2 == big) {
              p1 = a1;
              p2 = a3;
            } else {
              p1 = a1;
              p2 = a2;
            }
            if (p1 + p2 == big && p1 >= 1 && p2 >= 1 && gcd(p1, p2) == 1) {
              sol.abc = abc_quality(p1, p2);
            } else {
              sol.abc = AbcTriple{};  // degenerate (a zero term); no quality
            }
            sol.C = C;
            out.push_back(std::move(sol));
          }
      }
  std::sort(out.begin(), out.end(), [](const FmlSolution& a, const FmlSolution& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.m != b.m) return a.m < b.m;
    if (a.s != b.s) return rational_less(a.s, b.s);
    if (a.t != b.t) return rational_less(a.t, b.t);
    if (a.x != b.x) return rational_less(a.x, b.x);
    return rational_less(a.y, b.y);
  });
  return out;
}

Reducibility pure_equation_reducible(const Rational& c, unsigned long n) {
  if (c == 0) throw std::invalid_argument("pure_equation_reducible: c != 0");
  if (n < 1) throw std::invalid_argument("pure_equation_reducible: n >= 1");
  Reducibility out;
  auto try_prime = [&](unsigned long p) -> bool {
    auto num = exact_root(c.get_num(), p);  // handles signs and even p
    if (!num) return false;
    auto den = exact_root(c.get_den(), p);
    if (!den) return false;
    out.reducible = true;
    out.reason = "c = (" + num->get_str() + "/" + den->get_str() + ")^" +
                 std::to_string(p) + " with prime " + std::to_string(p) +
                 " dividing n";
    return true;
  };
  unsigned long m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    if (try_prime(p)) return out;
  }
  if (m > 1 && try_prime(m)) return out;
  if (n % 4 == 0) {
    Rational w = -c / Rational(4);
    auto num = exact_root(w.get_num(), 4);
    auto den = num ? exact_root(w.get_den(), 4) : std::nullopt;
    if (num && den) {
      out.reducible = true;
      out.reason = "-c/4 = (" + num->get_str() + "/" + den->get_str() +
                   ")^4 and 4 divides n";
      return out;
    }
  }
  out.reason = "no power criterion applies";
  return out;
}

RismanBound risman_order_bound(unsigned long n) {
  if (n < 1) throw std::invalid_argument("risman_order_bound: n >= 1");
  RismanBound best;
  best.n = n;
  best.h_min = 0;
  for (unsigned long t = 1; t <= n; ++t) {
    if (n % t) continue;
    if (!is_squarefree(t)) continue;
    unsigned long ell = n / t;
    unsigned long h = std::max(ell, euler_phi(t));
    if (best.h_min == 0 || h < best.h_min ||
        (h == best.h_min && t < best.t)) {
      best.h_min = h;
      best.t = t;
      best.ell = ell;
    }
  }
  return best;
}

}  // namespace modfermat
