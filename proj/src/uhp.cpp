#include "modfermat/uhp.hpp"
#include <memory>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "modfermat/jseries.hpp"
#include "modfermat/upoly.hpp"

namespace modfermat {

namespace {

// shared exact j coefficients, grown on demand; callers hold a snapshot so
// concurrent growth can never invalidate their view
std::shared_ptr<const std::vector<Integer>> j_coeff_pool(std::size_t need) {
  static std::mutex mu;
  static std::shared_ptr<const std::vector<Integer>> pool;
  std::lock_guard<std::mutex> lock(mu);
  if (!pool || pool->size() < need)
    pool = std::make_shared<const std::vector<Integer>>(
        j_coefficients(std::max(need, pool ? pool->size() * 2 : 0)));
  return pool;
}

}  // namespace

ReduceResult reduce_to_F(const UHPoint& tau) {
  long prec = std::max<long>(tau.tau.prec(), 64);
  if (!(tau.tau.im() > MpFloat::from_double(0.0, prec)))
    throw std::invalid_argument("reduce_to_F: point not in the upper half-plane");
  MpComplex z = tau.tau;
  SL2Matrix g;
  const MpFloat one = MpFloat::from_double(1.0, prec);
  const MpFloat boundary = MpFloat::from_double(1e-30, prec);
  for (int iter = 0; iter < 100000; ++iter) {
    Integer n = z.re().round();
    if (n != 0) {
      z = z - MpComplex(MpFloat::from_integer(n, prec), MpFloat::from_double(0.0, prec));
      g.a -= n * g.c;
      g.b -= n * g.d;
    }
    MpFloat norm = z.abs2();
    if (norm < one - boundary) {
      // S: z -> -1/z, matrix [[0,-1],[1,0]]
      z = -(MpComplex(1.0, 0.0, prec) / z);
      SL2Matrix s;
      s.a = 0;
      s.b = -1;
      s.c = 1;
      s.d = 0;
      SL2Matrix ng;
      ng.a = s.a * g.a + s.b * g.c;
      ng.b = s.a * g.b + s.b * g.d;
      ng.c = s.c * g.a + s.d * g.c;
      ng.d = s.c * g.b + s.d * g.d;
      g = ng;
      continue;
    }
    return ReduceResult{UHPoint{z}, g};
  }
  throw std::runtime_error("reduce_to_F: did not converge (precision exhausted)");
}

JNumeric j_numeric(const UHPoint& tau, long precision_bits) {
  ReduceResult red = reduce_to_F(tau);
  const long prec = precision_bits + 32;
  const MpComplex& z = red.point.tau;
  // q = exp(2 pi i z)
  MpFloat two_pi = MpFloat::from_double(2.0, prec) * MpFloat::pi(prec);
  MpComplex two_pi_i_z(-(two_pi * z.im()), two_pi * z.re());
  MpComplex q = two_pi_i_z.exp();
  MpFloat qabs = q.abs();

  // series terms until c_n |q|^n drops below 2^-(precision+16); |q| <= e^{-pi sqrt 3}
  double logq = std::log2(qabs.to_double());
  if (!(logq < -0.5))
    throw std::runtime_error("j_numeric: |q| too close to 1 after reduction");
  double target = -static_cast<double>(precision_bits) - 16.0;
  std::size_t terms = 8;
  {
    // log2 c_n <= 4 pi sqrt(n) / ln 2; solve 4 pi sqrt(n)/ln2 + n log2|q| < target
    double l2e = 1.0 / std::log(2.0);
    for (std::size_t n = 1;; ++n) {
      double t = 4.0 * M_PI * std::sqrt(static_cast<double>(n)) * l2e +
                 static_cast<double>(n) * logq;
      if (t < target) {
        terms = n + 4;
        break;
      }
      if (n > 100000) throw std::runtime_error("j_numeric: precision infeasible");
    }
  }
  auto cp = j_coeff_pool(terms + 2);
  const std::vector<Integer>& c = *cp;
  // Horner from the top: j = q^{-1} * sum c[k] q^k over k = 0..terms+1
  MpComplex acc(0.0, 0.0, prec);
  for (std::size_t k = terms + 1; k-- > 0;) {
    acc = acc * q;
    acc = acc + MpComplex(MpFloat::from_integer(c[k], prec), MpFloat::from_double(0.0, prec));
  }
  acc = acc / q;
  double tail_log2 = 4.0 * M_PI * std::sqrt(static_cast<double>(terms)) / std::log(2.0) +
                     static_cast<double>(terms) * logq + 2.0;
  return JNumeric{acc, tail_log2};
}

namespace {

// dj/dq: j = sum_{k>=0} c[k] q^{k-1}, so j' = -c[0] q^{-2} + sum_{k>=2} (k-1) c[k] q^{k-2}
MpComplex j_derivative_q(const MpComplex& q, long prec, std::size_t terms) {
  auto cp = j_coeff_pool(terms + 2);
  const std::vector<Integer>& c = *cp;
  MpComplex acc(0.0, 0.0, prec);
  for (std::size_t k = terms + 1; k >= 2; --k) {
    acc = acc * q;
    acc = acc + MpComplex(MpFloat::from_integer(c[k] * Integer(k - 1), prec),
                          MpFloat::from_double(0.0, prec));
  }
  MpComplex q2 = q * q;
  acc = acc - MpComplex(MpFloat::from_integer(c[0], prec), MpFloat::from_double(0.0, prec)) / q2;
  return acc;
}

MpComplex j_of_q(const MpComplex& q, long prec, std::size_t terms) {
  auto cp = j_coeff_pool(terms + 2);
  const std::vector<Integer>& c = *cp;
  MpComplex acc(0.0, 0.0, prec);
  for (std::size_t k = terms + 1; k-- > 0;) {
    acc = acc * q;
    acc = acc + MpComplex(MpFloat::from_integer(c[k], prec), MpFloat::from_double(0.0, prec));
  }
  return acc / q;
}

UHPoint tau_from_q(const MpComplex& q, long prec) {
  // tau = log(q) / (2 pi i): log q = log|q| + i arg q
  MpFloat r = q.abs();
  MpFloat logr(prec);
  mpfr_log(logr.raw(), r.raw(), MPFR_RNDN);
  MpFloat arg(prec);
  mpfr_atan2(arg.raw(), q.im().raw(), q.re().raw(), MPFR_RNDN);
  MpFloat two_pi = MpFloat::from_double(2.0, prec) * MpFloat::pi(prec);
  // tau = (arg + i*(-log r)) / (2 pi)
  return UHPoint{MpComplex(arg / two_pi, -(logr / two_pi))};
}

}  // namespace

UHPoint j_inverse(const MpComplex& x, long precision_bits) {
  const long prec = precision_bits + 64;
  const std::size_t terms = 64 + static_cast<std::size_t>(precision_bits / 6);
  // target accuracy ~ 2^-(precision_bits/2) on |j(tau) - x|
  MpFloat target(prec);
  mpfr_set_d(target.raw(), 1.0, MPFR_RNDN);
  mpfr_mul_2si(target.raw(), target.raw(), -(precision_bits / 2), MPFR_RNDN);

  auto newton_from = [&](MpComplex q) -> std::pair<bool, MpComplex> {
    const MpFloat qmax = MpFloat::from_double(0.061, prec);  // inside e^{-pi sqrt 3} + margin
    for (int it = 0; it < 400; ++it) {
      MpComplex f = j_of_q(q, prec, terms) - x;
      if (f.abs() < target) return {true, q};
      MpComplex df = j_derivative_q(q, prec, terms);
      if (df.abs().to_double() == 0.0) return {false, q};
      MpComplex step = f / df;
      // damping: halve until residual does not grow and |q| stays small
      MpFloat f0 = f.abs();
      MpComplex qn = q - step;
      for (int damp = 0; damp < 60; ++damp) {
        if (qn.abs() < qmax) {
          MpComplex fn = j_of_q(qn, prec, terms) - x;
          if (fn.abs() < f0 || fn.abs() < target) break;
        }
        step = step * MpComplex(0.5, 0.0, prec);
        qn = q - step;
      }
      q = qn;
    }
    MpComplex f = j_of_q(q, prec, terms) - x;
    return {f.abs() < target, q};
  };

  // initial guess q ~ 1/x for large |x|
  std::vector<MpComplex> starts;
  if (x.abs() > MpFloat::from_double(2500.0, prec))
    starts.push_back(MpComplex(1.0, 0.0, prec) / x);
  // coarse grid over F (tau = re + i im), q = exp(2 pi i tau)
  for (int gridpass = 0; gridpass < 2; ++gridpass) {
    int n = gridpass == 0 ? 12 : 36;
    for (int ir = 0; ir <= n; ++ir)
      for (int ii = 0; ii < n; ++ii) {
        double re = -0.5 + ir * (1.0 / n);
        double im = 0.87 + 1.8 * ii / n;
        MpFloat twopi = MpFloat::from_double(2.0, prec) * MpFloat::pi(prec);
        MpComplex e(-(twopi * MpFloat::from_double(im, prec)),
                    twopi * MpFloat::from_double(re, prec));
        starts.push_back(e.exp());
      }
    // order grid starts by closeness of j(q) to x
    std::stable_sort(starts.begin(), starts.end(),
                     [&](const MpComplex& qa, const MpComplex& qb) {
                       return ((j_of_q(qa, prec, terms) - x).abs() <
                               (j_of_q(qb, prec, terms) - x).abs());
                     });
    std::size_t tries = std::min<std::size_t>(starts.size(), 10);
    for (std::size_t i = 0; i < tries; ++i) {
      auto [ok, q] = newton_from(starts[i]);
      if (ok) {
        ReduceResult red = reduce_to_F(tau_from_q(q, prec));
        return red.point;
      }
    }
    starts.clear();  // refine the grid and retry
  }
  throw std::runtime_error("j_inverse: Newton iteration did not converge");
}

std::vector<CosetRep> level_coset_reps(unsigned N) {
  if (N == 0) throw std::invalid_argument("level_coset_reps: N >= 1");
  std::vector<CosetRep> out;
  for (unsigned a = 1; a <= N; ++a) {
    if (N % a) continue;
    unsigned d = N / a;
    for (unsigned b = 0; b < d; ++b)
      if (std::gcd(a, std::gcd(b, d)) == 1) out.push_back({a, b, d});
  }
  return out;
}

namespace {

// Durand-Kerner on a squarefree integer polynomial.
std::vector<MpComplex> durand_kerner(const UPoly& sf, long prec, long target_bits) {
  long n = sf.degree();
  std::vector<MpComplex> z;
  if (n <= 0) return z;

  std::vector<MpFloat> cf;
  for (long i = 0; i <= n; ++i) cf.push_back(MpFloat::from_integer(sf.coeff(i), prec));
  auto eval = [&](const MpComplex& w) {
    MpComplex v(0.0, 0.0, prec);
    for (long i = n; i >= 0; --i)
      v = v * w + MpComplex(cf[i], MpFloat::from_double(0.0, prec));
    return v;
  };

  // initial circle at the geometric-mean root size |c_0/c_n|^(1/n)
  double bits0 = sf.coeff(0) == 0
                     ? 1.0
                     : static_cast<double>(mpz_sizeinbase(sf.coeff(0).get_mpz_t(), 2));
  double bitsn = static_cast<double>(mpz_sizeinbase(sf.lc().get_mpz_t(), 2));
  double radius = std::exp2(std::clamp((bits0 - bitsn) / n, -40.0, 600.0));

  for (long k = 0; k < n; ++k) {
    double theta = 2.0 * M_PI * k / n + 0.41;
    z.push_back(MpComplex(radius * std::cos(theta), radius * std::sin(theta), prec));
  }
  MpFloat target(prec);
  mpfr_set_d(target.raw(), 1.0, MPFR_RNDN);
  mpfr_mul_2si(target.raw(), target.raw(), -target_bits, MPFR_RNDN);
  MpFloat lcf = MpFloat::from_integer(sf.lc(), prec);
  for (int iter = 0; iter < 800; ++iter) {
    MpFloat worst = MpFloat::from_double(0.0, prec);
    MpFloat largest = MpFloat::from_double(1.0, prec);
    for (long k = 0; k < n; ++k) {
      MpComplex num = eval(z[k]) / MpComplex(lcf, MpFloat::from_double(0.0, prec));
      MpComplex den(1.0, 0.0, prec);
      for (long j = 0; j < n; ++j)
        if (j != k) den = den * (z[k] - z[j]);
      MpComplex delta = num / den;
      z[k] = z[k] - delta;
      if (worst < delta.abs()) worst = delta.abs();
      if (largest < z[k].abs()) largest = z[k].abs();
    }
    if (worst < target * largest) break;  // relative convergence
  }
  return z;
}

}  // namespace

std::vector<MpComplex> numeric_roots(const UPoly& p, long precision_bits) {
  if (p.is_zero()) throw std::invalid_argument("numeric_roots: zero polynomial");
  const long prec = precision_bits + 32;
  std::vector<MpComplex> roots;
  std::vector<UPoly> decomp = squarefree_decomposition(p);
  for (std::size_t m = 0; m < decomp.size(); ++m) {
    if (decomp[m].is_zero() || decomp[m].degree() <= 0) continue;
    std::vector<MpComplex> part =
        durand_kerner(decomp[m], prec, precision_bits / 2);
    for (const auto& r : part)
      for (std::size_t copy = 0; copy <= m; ++copy) roots.push_back(r);
  }
  return roots;
}

CountingReport counting_experiment(const Rational& x, unsigned N,
                                   long precision_bits, const BiPoly& phi,
                                   double tolerance) {
  CountingReport rep;
  rep.x = x;
  rep.level = N;
  const long prec = precision_bits;

  MpComplex xc(MpFloat::from_rational(x, prec + 32), MpFloat::from_double(0.0, prec + 32));
  UHPoint tau = j_inverse(xc, prec);

  std::vector<CosetRep> reps = level_coset_reps(N);
  std::vector<MpComplex> coset_values;
  for (const CosetRep& r : reps) {
    MpComplex num = tau.tau * MpComplex(static_cast<double>(r.a), 0.0, prec + 32) +
                    MpComplex(static_cast<double>(r.b), 0.0, prec + 32);
    MpComplex img = num / MpComplex(static_cast<double>(r.d), 0.0, prec + 32);
    coset_values.push_back(j_numeric(UHPoint{img}, prec).value);
  }

  UPoly spec = phi.specialize_x(x).primitive_part();
  std::vector<MpComplex> roots = numeric_roots(spec, prec);
  if (roots.size() != coset_values.size())
    throw std::runtime_error("counting_experiment: root count mismatch (" +
                             std::to_string(roots.size()) + " vs " +
                             std::to_string(coset_values.size()) + ")");

  // greedy nearest-neighbour matching, Hungarian fallback if it exceeds tol
  const std::size_t n = roots.size();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dist[i][j] = (coset_values[i] - roots[j]).abs().to_double();

  std::vector<long> match(n, -1);
  {
    std::vector<bool> used(n, false);
    std::vector<std::pair<double, std::pair<std::size_t, std::size_t>>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) edges.push_back({dist[i][j], {i, j}});
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<bool> taken(n, false);
    for (const auto& [d, ij] : edges) {
      if (match[ij.first] >= 0 || taken[ij.second]) continue;
      match[ij.first] = static_cast<long>(ij.second);
      taken[ij.second] = true;
    }
  }
  double greedy_worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    greedy_worst = std::max(greedy_worst, dist[i][match[i]]);

  if (greedy_worst > tolerance) {
    // Hungarian algorithm (O(n^3)), minimizing the total residual
    const double INF = 1e300;
    std::vector<double> u(n + 1), v(n + 1);
    std::vector<long> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
      p[0] = static_cast<long>(i);
      long j0 = 0;
      std::vector<double> minv(n + 1, INF);
      std::vector<bool> used(n + 1, false);
      do {
        used[j0] = true;
        long i0 = p[j0], j1 = -1;
        double delta = INF;
        for (std::size_t j = 1; j <= n; ++j)
          if (!used[j]) {
            double cur = dist[i0 - 1][j - 1] - u[i0] - v[j];
            if (cur < minv[j]) {
              minv[j] = cur;
              way[j] = j0;
            }
            if (minv[j] < delta) {
              delta = minv[j];
              j1 = static_cast<long>(j);
            }
          }
        for (std::size_t j = 0; j <= n; ++j)
          if (used[j]) {
            u[p[j]] += delta;
            v[j] -= delta;
          } else {
            minv[j] -= delta;
          }
        j0 = j1;
      } while (p[j0] != 0);
      do {
        long j1 = way[j0];
        p[j0] = p[j1];
        j0 = j1;
      } while (j0);
    }
    for (std::size_t j = 1; j <= n; ++j)
      if (p[j] > 0) match[p[j] - 1] = static_cast<long>(j) - 1;
  }

  for (std::size_t i = 0; i < n; ++i) {
    CountingMatch m;
    m.rep = reps[i];
    m.coset_value = coset_values[i];
    m.matched_root = roots[match[i]];
    m.residual = dist[i][match[i]];
    rep.max_residual = std::max(rep.max_residual, m.residual);
    rep.matches.push_back(std::move(m));
    rep.height_histogram[reps[i].height()]++;
  }
  if (rep.max_residual > tolerance)
    throw std::runtime_error("counting_experiment: matching residual " +
                             std::to_string(rep.max_residual) +
                             " above tolerance");
  return rep;
}

}  // namespace modfermat
