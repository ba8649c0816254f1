#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <thread>
#include <fstream>

#include "modfermat/jseries.hpp"
#include "modfermat/modular_poly.hpp"
#include "modfermat/uhp.hpp"

using namespace modfermat;

namespace {

// The classical nine-term polynomial, entered independently of the engine.
BiPoly classical_phi2() {
  BiPoly p;
  p.set(3, 0, 1);
  p.set(0, 3, 1);
  p.set(2, 2, -1);
  p.set(2, 1, 1488);
  p.set(1, 2, 1488);
  p.set(2, 0, -162000);
  p.set(0, 2, -162000);
  p.set(1, 1, 40773375);
  p.set(1, 0, Integer("8748000000"));
  p.set(0, 1, Integer("8748000000"));
  p.set(0, 0, Integer("-157464000000000"));
  return p;
}

}  // namespace

TEST_CASE("j-expansion: independent hand oracle for the first coefficients") {
  // E4 = 1 + 240 q + 2160 q^2 + ... and Delta = q prod (1-q^n)^24, both
  // recomputed here from scratch with plain loops.
  const int T = 6;
  std::vector<long long> e4(T, 0);
  e4[0] = 1;
  for (int n = 1; n < T; ++n) {
    long long s3 = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s3 += 1LL * d * d * d;
    e4[n] = 240 * s3;
  }
  std::vector<long long> e43(T, 0);
  {
    std::vector<long long> sq(T, 0);
    for (int i = 0; i < T; ++i)
      for (int j = 0; i + j < T; ++j) sq[i + j] += e4[i] * e4[j];
    for (int i = 0; i < T; ++i)
      for (int j = 0; i + j < T; ++j) e43[i + j] += sq[i] * e4[j];
  }
  std::vector<long long> dq{1};
  dq.resize(T, 0);
  for (int n = 1; n < T; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int e = T - 1; e >= n; --e) dq[e] -= dq[e - n];
  // long division j * dq = e43 with j = sum jc[k] q^(k-1)
  std::vector<long long> jc(T, 0);
  for (int k = 0; k < T; ++k) {
    long long acc = e43[k];
    for (int i = 1; i <= k; ++i) acc -= dq[i] * jc[k - i];
    jc[k] = acc;
  }
  CHECK(jc[0] == 1);
  CHECK(jc[1] == 744);
  CHECK(jc[2] == 196884);
  CHECK(jc[3] == 21493760);

  QSeries j = j_q_expansion(3);
  CHECK(j.leading_exponent() == -1);
  CHECK(j.coeff(-1) == 1);
  CHECK(j.coeff(0) == 744);
  CHECK(j.coeff(1) == 196884);
  CHECK(j.coeff(2) == 21493760);

  QSeries j1 = j_q_expansion(1);
  CHECK(j1.truncation_order() == 1);
  CHECK(j1.coeff(0) == 744);
  CHECK_THROWS_AS(j_q_expansion(0), std::invalid_argument);
}

TEST_CASE("psi and coset counts") {
  CHECK(psi_of(1) == 1);
  CHECK(psi_of(2) == 3);
  CHECK(psi_of(6) == 12);
  CHECK(psi_of(4) == 6);
  CHECK(psi_of(20) == 36);
  for (unsigned N = 1; N <= 30; ++N)
    CHECK(level_coset_reps(N).size() == psi_of(N));
}

TEST_CASE("phi_1 and phi_2") {
  ModularPolynomial p1 = compute_modular_polynomial(1);
  CHECK(p1.poly == (BiPoly::variable_x() - BiPoly::variable_y()));

  ModularPolynomial p2 = compute_modular_polynomial(2);
  CHECK(p2.psi == 3);
  CHECK(p2.poly == classical_phi2());
}

TEST_CASE("phi_2 diagonal and specializations") {
  ModularPolynomial p2 = compute_modular_polynomial(2);

  // Phi_2(X, X) = -(X - 1728)(X - 8000)(X + 3375)^2
  UPoly diag = p2.poly.diagonal();
  UPoly expect = -(UPoly(std::vector<Integer>{-1728, 1}) *
                   UPoly(std::vector<Integer>{-8000, 1}) *
                   UPoly(std::vector<Integer>{3375, 1}) *
                   UPoly(std::vector<Integer>{3375, 1}));
  CHECK(diag == expect);

  // Phi_2(X, 0) = (X - 54000)^3
  UPoly at0 = p2.poly.specialize_y(Rational(0));
  UPoly cube = UPoly(std::vector<Integer>{-54000, 1});
  cube = cube * cube * cube;
  CHECK(at0 == cube);
  // sum-of-roots cross-check against the X^2 coefficient
  CHECK(at0.coeff(2) == -3 * Integer(54000));

  // Phi_2(X, 1728) = (X - 1728)(X - 287496)^2
  UPoly at1728 = p2.poly.specialize_y(Rational(1728));
  UPoly expect1728 = UPoly(std::vector<Integer>{-1728, 1}) *
                     UPoly(std::vector<Integer>{-287496, 1}) *
                     UPoly(std::vector<Integer>{-287496, 1});
  CHECK(at1728 == expect1728);
  CHECK(at1728.coeff(2) == -(Integer(1728) + 287496 + 287496));
}

TEST_CASE("phi_3 through phi_7: structural identities") {
  for (unsigned N : {3u, 4u, 5u, 6u, 7u}) {
    ModularPolynomial p = compute_modular_polynomial(N);
    CHECK(p.psi == psi_of(N));
    CHECK(static_cast<unsigned long>(p.poly.deg_x()) == p.psi);
    CHECK(static_cast<unsigned long>(p.poly.deg_y()) == p.psi);
    CHECK(p.poly.is_symmetric());
    CHECK(p.poly.coeff_of_x(p.psi) == UPoly::constant(1));
  }
}

TEST_CASE("kronecker congruence for small primes") {
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    ModularPolynomial phi = compute_modular_polynomial(p);
    CHECK(kronecker_congruence_holds(phi));
  }
}

TEST_CASE("phi_2 matches the numeric interpolation oracle bit-exactly") {
  // Independent oracle: sample tau, evaluate the three conjugate factors
  // numerically, expand the product in X, interpolate each X-coefficient as
  // a cubic in y = j(tau), round to integers.
  const long prec = 320;
  const int samples = 4;
  std::vector<MpComplex> ys;
  std::vector<std::vector<MpComplex>> coeffs(samples);  // per sample: c0..c2 (X^0..X^2)
  for (int s = 0; s < samples; ++s) {
    MpComplex tau(0.06 + 0.071 * s, 1.13 + 0.17 * s, prec);
    MpComplex y = j_numeric(UHPoint{tau}, prec).value;
    MpComplex two(2.0, 0.0, prec);
    MpComplex half = tau / two;
    MpComplex halfp = (tau + MpComplex(1.0, 0.0, prec)) / two;
    std::vector<MpComplex> roots{
        j_numeric(UHPoint{tau * two}, prec).value,
        j_numeric(UHPoint{half}, prec).value,
        j_numeric(UHPoint{halfp}, prec).value,
    };
    // expand prod (X - r): coefficients of X^0, X^1, X^2
    MpComplex e1 = roots[0] + roots[1] + roots[2];
    MpComplex e2 = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
    MpComplex e3 = roots[0] * roots[1] * roots[2];
    coeffs[s] = {-e3, e2, -e1};
    ys.push_back(y);
  }
  ModularPolynomial p2 = compute_modular_polynomial(2);
  // interpolate each X-coefficient as a cubic in y (Lagrange) at y-sample points
  for (unsigned xdeg = 0; xdeg <= 2; ++xdeg) {
    // Lagrange gives the value-form; recover monomial coefficients by solving
    // the 4x4 Vandermonde with Gaussian elimination in MpComplex.
    std::vector<std::vector<MpComplex>> M(samples,
                                          std::vector<MpComplex>(samples + 1,
                                                                 MpComplex(0.0, 0.0, prec)));
    for (int r = 0; r < samples; ++r) {
      MpComplex pw(1.0, 0.0, prec);
      for (int cidx = 0; cidx < samples; ++cidx) {
        M[r][cidx] = pw;
        pw = pw * ys[r];
      }
      M[r][samples] = coeffs[r][xdeg];
    }
    for (int col = 0; col < samples; ++col) {
      int piv = col;
      for (int r = col + 1; r < samples; ++r)
        if (M[piv][col].abs() < M[r][col].abs()) piv = r;
      std::swap(M[col], M[piv]);
      for (int r = 0; r < samples; ++r) {
        if (r == col) continue;
        MpComplex f = M[r][col] / M[col][col];
        for (int cidx = col; cidx <= samples; ++cidx)
          M[r][cidx] = M[r][cidx] - f * M[col][cidx];
      }
    }
    for (int ydeg = 0; ydeg < samples; ++ydeg) {
      MpComplex val = M[ydeg][samples] / M[ydeg][ydeg];
      Integer rounded = val.re().round();
      CHECK(val.im().abs().to_double() < 1e-6);
      CHECK((val.re() - MpFloat::from_integer(rounded, prec)).abs().to_double() < 1e-6);
      CHECK(rounded == p2.poly.coeff(xdeg, static_cast<unsigned>(ydeg)));
    }
  }
}

namespace {

// generalized interpolation oracle: sample tau, evaluate all psi(N) coset
// images of j numerically, expand prod (X - j_i), interpolate each
// X-coefficient as a degree-psi polynomial in y = j(tau), round, compare.
void interpolation_oracle_check(unsigned N, long prec) {
  const long psi = static_cast<long>(psi_of(N));
  const int samples = static_cast<int>(psi) + 1;
  ModularPolynomial computed = compute_modular_polynomial(N);
  std::vector<MpComplex> ys;
  std::vector<std::vector<MpComplex>> coeffs(samples);
  auto reps = level_coset_reps(N);
  for (int s = 0; s < samples; ++s) {
    MpComplex tau(0.037 * s - 0.11, 1.07 + 0.113 * s, prec);
    ys.push_back(j_numeric(UHPoint{tau}, prec).value);
    std::vector<MpComplex> poly{MpComplex(1.0, 0.0, prec)};  // ascending in X
    for (const auto& r : reps) {
      MpComplex img = (tau * MpComplex(static_cast<double>(r.a), 0.0, prec) +
                       MpComplex(static_cast<double>(r.b), 0.0, prec)) /
                      MpComplex(static_cast<double>(r.d), 0.0, prec);
      MpComplex root = j_numeric(UHPoint{img}, prec).value;
      std::vector<MpComplex> next(poly.size() + 1, MpComplex(0.0, 0.0, prec));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] = next[i + 1] + poly[i];
        next[i] = next[i] - root * poly[i];
      }
      poly = std::move(next);
    }
    poly.pop_back();  // drop the monic X^psi coefficient
    coeffs[s] = std::move(poly);
  }
  for (long xdeg = 0; xdeg < psi; ++xdeg) {
    std::vector<std::vector<MpComplex>> M(
        samples, std::vector<MpComplex>(samples + 1, MpComplex(0.0, 0.0, prec)));
    for (int r = 0; r < samples; ++r) {
      MpComplex pw(1.0, 0.0, prec);
      for (int c = 0; c < samples; ++c) {
        M[r][c] = pw;
        pw = pw * ys[r];
      }
      M[r][samples] = coeffs[r][xdeg];
    }
    for (int col = 0; col < samples; ++col) {
      int piv = col;
      for (int r = col + 1; r < samples; ++r)
        if (M[piv][col].abs() < M[r][col].abs()) piv = r;
      std::swap(M[col], M[piv]);
      for (int r = 0; r < samples; ++r) {
        if (r == col) continue;
        MpComplex f = M[r][col] / M[col][col];
        for (int c = col; c <= samples; ++c) M[r][c] = M[r][c] - f * M[col][c];
      }
    }
    for (int ydeg = 0; ydeg < samples; ++ydeg) {
      MpComplex val = M[ydeg][samples] / M[ydeg][ydeg];
      Integer rounded = val.re().round();
      INFO("N = ", N, ", xdeg = ", xdeg, ", ydeg = ", ydeg);
      CHECK(val.im().abs().to_double() < 1e-3);
      CHECK((val.re() - MpFloat::from_integer(rounded, prec)).abs().to_double() <
            1e-3);
      CHECK(rounded ==
            computed.poly.coeff(static_cast<unsigned>(xdeg),
                                static_cast<unsigned>(ydeg)));
    }
  }
}

}  // namespace

TEST_CASE("phi_3 and phi_4 match the interpolation oracle bit-exactly") {
  interpolation_oracle_check(3, 640);   // prime
  interpolation_oracle_check(4, 1024);  // composite: exercises the gcd families
}

TEST_CASE("resultant elimination against phi_2 substitution") {
  // Res_T(Phi_2(A, 1-T), Phi_1(B, T)) = Phi_2(A, 1-B) up to sign
  ModularPolynomial p2 = compute_modular_polynomial(2);
  BiPoly p = p2.poly.substitute_y_linear(-1, 1);  // (A, T)
  BiPoly q;                                       // Phi_1(B, T) read in (T, B): B - T
  q.set(0, 1, 1);   // B
  q.set(1, 0, -1);  // -T
  BiPoly res = resultant_eliminate(p, q);
  BiPoly expect = p2.poly.substitute_y_linear(-1, 1).sign_normalized();
  CHECK(res == expect);
}

TEST_CASE("verify_phi reports") {
  ModularPolynomial p2 = compute_modular_polynomial(2);
  PhiVerifyReport rep = verify_phi(p2, 5, 1e-9, 256);
  CHECK(rep.all_pass());

  ModularPolynomial p1 = compute_modular_polynomial(1);
  PhiVerifyReport rep1 = verify_phi(p1, 3, 1e-9, 256);
  CHECK(rep1.all_pass());

  ModularPolynomial p13 = compute_modular_polynomial(13);
  CHECK(kronecker_congruence_holds(p13));

  // damaged polynomial: failures are entries, not exceptions
  ModularPolynomial bad = p2;
  bad.poly.set(1, 0, bad.poly.coeff(1, 0) + 1);
  PhiVerifyReport repb = verify_phi(bad, 3, 1e-9, 256);
  CHECK(!repb.all_pass());
}

TEST_CASE("phi cache serves concurrent readers of distinct levels") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "modfermat_test_cache_mt";
  fs::remove_all(dir);
  PhiCache cache(dir, 50);
  std::vector<std::thread> pool;
  std::vector<unsigned long> degs(6, 0);
  for (unsigned t = 0; t < 6; ++t)
    pool.emplace_back([&cache, &degs, t]() {
      unsigned N = 2 + t;
      degs[t] = static_cast<unsigned long>(cache.get(N).poly.deg_x());
    });
  for (auto& th : pool) th.join();
  for (unsigned t = 0; t < 6; ++t) CHECK(degs[t] == psi_of(2 + t));
  fs::remove_all(dir);
}

TEST_CASE("phi cache: round trip, corruption recovery, determinism") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "modfermat_test_cache";
  fs::remove_all(dir);

  PhiCache cache(dir, 50);
  const ModularPolynomial& first = cache.get(2);
  CHECK(first.poly == classical_phi2());
  CHECK(fs::exists(dir / "phi" / "2.poly"));

  // a fresh cache instance must serve a bit-identical polynomial from disk
  PhiCache cache2(dir, 50);
  CHECK(cache2.get(2).poly == first.poly);
  CHECK(cache2.drain_warnings().empty());

  // truncated file: recompute and replace, with a warning
  {
    std::ofstream f(dir / "phi" / "2.poly", std::ios::trunc);
    f << "PHI 2 3\nCHECKSUM deadbeef\nPOLY X,Y 9\n0 0 1\n";
  }
  PhiCache cache3(dir, 50);
  CHECK(cache3.get(2).poly == classical_phi2());
  auto warnings = cache3.drain_warnings();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("corrupt") != std::string::npos);
  PhiCache cache4(dir, 50);
  CHECK(cache4.get(2).poly == classical_phi2());
  CHECK(cache4.drain_warnings().empty());

  CHECK_THROWS_AS(cache.get(0), std::invalid_argument);
  CHECK_THROWS_AS(cache.get(51), std::invalid_argument);
  fs::remove_all(dir);
}
