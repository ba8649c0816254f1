#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "modfermat/multiplicative.hpp"
#include "modfermat/upoly.hpp"

using namespace modfermat;

TEST_CASE("abc quality: spec examples") {
  AbcTriple t1 = abc_quality(1, 1);
  CHECK(t1.c == 2);
  CHECK(t1.radical == 2);
  CHECK(t1.quality == doctest::Approx(1.0).epsilon(1e-12));

  AbcTriple t2 = abc_quality(1, 8);
  CHECK(t2.c == 9);
  CHECK(t2.radical == 6);
  CHECK(t2.quality == doctest::Approx(std::log(9.0) / std::log(6.0)).epsilon(1e-9));

  // 2 + 3^10 * 109 = 23^5
  Integer b = pow_integer(3, 10) * 109;
  AbcTriple t3 = abc_quality(2, b);
  CHECK(t3.c == pow_integer(23, 5));
  CHECK(t3.c == 6436343);
  CHECK(b == 6436341);
  CHECK(t3.radical == 15042);
  CHECK(t3.quality == doctest::Approx(1.6299).epsilon(1e-3));
  CHECK(t3.quality > 1.0);  // quality > 1 identifies rad(abc) < c

  CHECK_THROWS_AS(abc_quality(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(abc_quality(0, 1), std::invalid_argument);
}

TEST_CASE("fml search: sign-only group") {
  SUnitGroup g;  // just -1
  auto sols = fml_search(g, 4, 5, 2, 3);
  // x, y in {+-2, +-1/2}; s, t in {+-1}: s x^n + t y^m = 1 has no solutions
  CHECK(sols.empty());
}

TEST_CASE("fml search: group <-1, 2, 3> finds exact solutions deterministically") {
  SUnitGroup g{{2, 3}};
  auto sols = fml_search(g, 4, 5, 3, 3);
  auto again = fml_search(g, 4, 5, 3, 3);
  REQUIRE(sols.size() == again.size());
  for (std::size_t i = 0; i < sols.size(); ++i) {
    CHECK(sols[i].s == again[i].s);
    CHECK(sols[i].x == again[i].x);
    CHECK(sols[i].n == again[i].n);
  }
  auto rational_pow = [](const Rational& x, unsigned e) {
    Rational r(pow_integer(x.get_num(), e), pow_integer(x.get_den(), e));
    r.canonicalize();
    return r;
  };
  for (const auto& s : sols) {
    // the raw identity re-verifies exactly
    CHECK(s.s * rational_pow(s.x, s.n) + s.t * rational_pow(s.y, s.m) == 1);
    // the cleared certificate re-verifies exactly and is coprime
    Integer lhs = s.S * pow_integer(s.A, s.n) + s.T * pow_integer(s.C, s.m);
    CHECK(lhs == s.U * pow_integer(s.B, s.n));
    CHECK(gcd(gcd(abs(s.S * pow_integer(s.A, s.n)), abs(s.T * pow_integer(s.C, s.m))),
              abs(s.U * pow_integer(s.B, s.n))) == 1);
    CHECK(s.A >= 1);
    CHECK(s.B >= 1);
    CHECK(s.C >= 1);
  }
  // a known solution in this box: (1/9) * (3/2)^4 * ... enumerate instead:
  // 2^4 * (1/2)^4 = 1 is excluded since t y^m = 0 is impossible; at least
  // check the search examined a nonempty candidate space
  MESSAGE("fml solutions found: ", sols.size());
  CHECK_THROWS_AS(fml_search(g, 3, 5, 2, 2), std::invalid_argument);
}

TEST_CASE("pure equation reducibility: spec examples") {
  CHECK(pure_equation_reducible(Rational(4), 2).reducible);
  Reducibility r = pure_equation_reducible(Rational(-4), 4);
  CHECK(r.reducible);
  CHECK(r.reason.find("-c/4") != std::string::npos);
  CHECK(!pure_equation_reducible(Rational(2), 4).reducible);
  CHECK_THROWS_AS(pure_equation_reducible(Rational(0), 3), std::invalid_argument);
  // n = 1: no prime divisors, never reducible
  CHECK(!pure_equation_reducible(Rational(4), 1).reducible);
  // rational cases
  CHECK(pure_equation_reducible(Rational(8, 27), 6).reducible);
  CHECK(!pure_equation_reducible(Rational(2, 3), 6).reducible);
}

namespace {

// brute-force reducibility oracle for X^n - c over Q (integer c):
// search for a monic integer factor of degree <= n/2 via products of
// subsets of the complex roots, then verify candidates exactly.
bool reducible_oracle(long c, unsigned n) {
  if (n == 1) return false;
  std::vector<std::complex<double>> roots;
  double r = std::pow(std::abs((double)c), 1.0 / n);
  double base = (c >= 0) ? 0.0 : M_PI / n;
  for (unsigned k = 0; k < n; ++k) {
    double theta = base + 2.0 * M_PI * k / n;
    roots.push_back(std::polar(r, theta));
  }
  UPoly target = UPoly::monomial(1, n) - UPoly::constant(Integer(c));
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    unsigned deg = __builtin_popcount(mask);
    if (deg > n / 2 || deg == 0) continue;
    // expand prod (X - root_i) over the mask, ascending coefficients
    std::vector<std::complex<double>> poly{1.0};
    for (unsigned k = 0; k < n; ++k) {
      if (!(mask & (1u << k))) continue;
      std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= roots[k] * poly[i];
      }
      poly = std::move(next);
    }
    bool integral = true;
    std::vector<Integer> cand(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      double re = poly[i].real(), im = poly[i].imag();
      if (std::abs(im) > 1e-6 || std::abs(re - std::round(re)) > 1e-6) {
        integral = false;
        break;
      }
      cand[i] = static_cast<long>(std::llround(re));
    }
    if (!integral) continue;
    UPoly f(std::move(cand));
    if (f.degree() < 1) continue;
    if (f.divides(target)) return true;  // exact verification
  }
  return false;
}

}  // namespace

TEST_CASE("pure equation agrees with the brute-force oracle (|c| <= 12, n <= 8)") {
  // the acceptance suite runs the full |c| <= 50, n <= 12 sweep
  for (long c = -12; c <= 12; ++c) {
    if (c == 0) continue;
    for (unsigned n = 1; n <= 8; ++n) {
      bool lib = pure_equation_reducible(Rational(c), n).reducible;
      bool oracle = reducible_oracle(c, n);
      INFO("c = ", c, ", n = ", n);
      CHECK(lib == oracle);
    }
  }
}

TEST_CASE("risman order bound: spec examples") {
  CHECK(risman_order_bound(1).h_min == 1);
  RismanBound p7 = risman_order_bound(7);
  CHECK(p7.h_min == 6);
  CHECK(p7.t == 7);
  CHECK(p7.ell == 1);
  RismanBound r12 = risman_order_bound(12);
  CHECK(r12.h_min == 2);
  CHECK(r12.t == 6);
  CHECK(r12.ell == 2);
  CHECK_THROWS_AS(risman_order_bound(0), std::invalid_argument);
}

TEST_CASE("risman bound: brute force and sqrt pivot up to 3000") {
  // the acceptance suite runs n <= 10^4
  for (unsigned long n = 1; n <= 3000; ++n) {
    RismanBound b = risman_order_bound(n);
    // independent brute force over all divisor pairs
    unsigned long best = 0;
    for (unsigned long t = 1; t <= n; ++t) {
      if (n % t) continue;
      if (!is_squarefree(t)) continue;
      unsigned long h = std::max(n / t, euler_phi(t));
      if (best == 0 || h < best) best = h;
    }
    CHECK(b.h_min == best);
    CHECK(b.n == b.t * b.ell);
    // max(t, ell) >= sqrt(n) for every factorization
    for (unsigned long t = 1; t <= n; ++t) {
      if (n % t) continue;
      unsigned long ell = n / t;
      CHECK(static_cast<unsigned long>(std::max(t, ell)) *
                static_cast<unsigned long>(std::max(t, ell)) >=
            n);
    }
  }
}
