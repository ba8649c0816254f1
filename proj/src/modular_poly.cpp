#include "modfermat/modular_poly.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "modfermat/jseries.hpp"
#include "modfermat/multipoly.hpp"
#include "modfermat/qseries.hpp"
#include "modfermat/uhp.hpp"

namespace modfermat {

unsigned long psi_of(unsigned N) {
  unsigned long psi = N;
  unsigned n = N;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      psi = psi / p * (p + 1);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) psi = psi / n * (n + 1);
  return psi;
}

namespace {

// Integer series on an explicit exponent window [lo, lo+c.size()).
struct Win {
  long lo = 0;
  std::vector<Integer> c;

  long hi() const { return lo + static_cast<long>(c.size()); }
  const Integer& at(long e) const {
    static const Integer kZero(0);
    if (e < lo || e >= hi()) return kZero;
    return c[e - lo];
  }
  void add_at(long e, const Integer& v) {
    if (e < lo || e >= hi()) return;
    c[e - lo] += v;
  }
};

Win win_zero(long lo, long hi) {
  Win w;
  w.lo = lo;
  w.c.assign(hi - lo, Integer(0));
  return w;
}

// product restricted to [lo, hi)
Win win_mul(const Win& a, const Win& b, long lo, long hi) {
  Win out = win_zero(lo, hi);
  if (a.c.empty() || b.c.empty()) return out;
  long plo = a.lo + b.lo;
  long idx_lo = lo - plo, idx_hi = hi - plo;
  if (idx_hi <= 0) return out;
  idx_lo = std::max<long>(idx_lo, 0);
  std::vector<Integer> part = convolve_window(
      a.c, b.c, static_cast<std::size_t>(idx_lo), static_cast<std::size_t>(idx_hi));
  for (std::size_t k = 0; k < part.size(); ++k)
    out.add_at(plo + idx_lo + static_cast<long>(k), part[k]);
  return out;
}

void win_addmul_scaled(Win& acc, const Win& a, const Win& b, int sign) {
  Win p = win_mul(a, b, acc.lo, acc.hi());
  for (std::size_t i = 0; i < acc.c.size(); ++i) {
    if (sign > 0)
      acc.c[i] += p.c[i];
    else
      acc.c[i] -= p.c[i];
  }
}

struct Family {
  unsigned a = 0, d = 0, g = 0;
  unsigned long size = 0;  // number of valid b
  long pole = 0;           // ceil(size * a / d)
};

long ceil_div(long x, long y) {  // ceiling for y > 0, any sign of x
  long q = x / y, r = x % y;
  return q + (r > 0 ? 1 : 0);
}

std::vector<Family> coset_families(unsigned N) {
  std::vector<Family> fs;
  for (unsigned d = 1; d <= N; ++d) {
    if (N % d) continue;
    Family f;
    f.d = d;
    f.a = N / d;
    f.g = std::gcd(f.a, f.d);
    f.size = static_cast<unsigned long>(d) * euler_phi(f.g) / f.g;
    if (f.size == 0) continue;
    f.pole = ceil_div(static_cast<long>(f.size) * f.a, f.d);
    fs.push_back(f);
  }
  return fs;
}

std::vector<std::pair<long, int>> moebius_divisors(unsigned g) {
  // squarefree divisors of g with their Moebius sign
  std::vector<std::pair<long, int>> out{{1, 1}};
  unsigned n = g;
  for (unsigned p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      std::size_t sz = out.size();
      for (std::size_t i = 0; i < sz; ++i)
        out.emplace_back(out[i].first * p, -out[i].second);
      while (n % p == 0) n /= p;
    }
  if (n > 1) {
    std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i)
      out.emplace_back(out[i].first * n, -out[i].second);
  }
  return out;
}

BiPoly assemble_phi(unsigned N, unsigned guard) {
  const long psi = static_cast<long>(psi_of(N));
  std::vector<Family> fams = coset_families(N);
  {
    unsigned long total = 0;
    for (const auto& f : fams) total += f.size;
    if (total != static_cast<unsigned long>(psi))
      throw PrecisionError("coset family sizes do not sum to psi(N)");
  }

  long sum_pole = 0;
  for (const auto& f : fams) sum_pole += f.pole;

  const long G = static_cast<long>(guard);

  // per-family target precision and per-power-sum windows
  struct FamilyPlan {
    Family f;
    long T;                       // family coefficients needed through [ -pole, T )
    std::vector<long> need_e;     // 1-based: e_k needed through need_e[k]
    std::vector<long> need_p;     // p_i needed through need_p[i]
  };
  std::vector<FamilyPlan> plans;
  long max_s = 0;
  for (const auto& f : fams) {
    FamilyPlan pl;
    pl.f = f;
    pl.T = G + (sum_pole - f.pole) + 2;
    long s = static_cast<long>(f.size);
    pl.need_e.assign(s + 1, 0);
    pl.need_p.assign(s + 1, 0);
    for (long k = 1; k <= s; ++k)
      pl.need_e[k] = pl.T + ceil_div((s - k) * (f.a + f.d), f.d) + 1;
    for (long i = 1; i <= s; ++i) pl.need_p[i] = pl.need_e[i] + 2;
    plans.push_back(std::move(pl));
    max_s = std::max(max_s, s);
  }

  // j^i needed through exponent L(i) = max over families with size >= i of
  // need_p(i) * d / a, plus the short-range powers for pole elimination.
  std::vector<long> L(max_s + 1, 0);
  for (long i = 1; i <= max_s; ++i) {
    long need = psi + G + 2;  // short powers for elimination reuse the chain
    for (const auto& pl : plans)
      if (static_cast<long>(pl.f.size) >= i)
        need = std::max(need, ceil_div(pl.need_p[i] * pl.f.d, pl.f.a) + 1);
    L[i] = need;
  }

  // j coefficients once, then the power chain
  std::vector<Integer> jvec = j_coefficients(static_cast<std::size_t>(L[1]) + 2);
  // jvec[m] = coefficient of q^(m-1); power i occupies exponents [-i, ...]

  // short j-powers for the elimination stage: shortj[t] covers [-t, elim_hi)
  const long elim_hi = G + 2;
  std::vector<std::vector<Integer>> shortj(psi + 1);
  shortj[0] = {Integer(1)};
  {
    // the chain loses one known term per multiplication; pad the base
    const long top = elim_hi + psi;
    std::vector<std::vector<Integer>> wide(psi + 1);
    std::size_t len1 = static_cast<std::size_t>(top + 1);
    wide[1].assign(jvec.begin(), jvec.begin() + std::min(jvec.size(), len1));
    wide[1].resize(len1, Integer(0));
    for (long t = 2; t <= psi; ++t) {
      std::size_t len = static_cast<std::size_t>(top + t);
      wide[t] = convolve_window(wide[t - 1], wide[1], 0, len);
      wide[t].resize(len, Integer(0));
    }
    for (long t = 1; t <= psi; ++t) {
      wide[t].resize(static_cast<std::size_t>(elim_hi + t));
      shortj[t] = std::move(wide[t]);
    }
  }

  // power sums per family, windows [-pole, need_p(i))
  std::vector<std::vector<Win>> psums(plans.size());
  for (std::size_t fi = 0; fi < plans.size(); ++fi)
    psums[fi].resize(plans[fi].f.size + 1);

  std::vector<Integer> power = jvec;  // j^1
  power.resize(L[1] + 1);
  for (long i = 1; i <= max_s; ++i) {
    if (i > 1) {
      power = convolve_window(power, jvec, 0, static_cast<std::size_t>(L[i] + i));
      power.resize(L[i] + i);
    }
    // power[idx] = coefficient of q^(idx - i)
    for (std::size_t fi = 0; fi < plans.size(); ++fi) {
      const FamilyPlan& pl = plans[fi];
      const Family& f = pl.f;
      if (static_cast<long>(f.size) < i) continue;
      Win w = win_zero(-f.pole, pl.need_p[i]);
      for (const auto& [e, mu] : moebius_divisors(f.g)) {
        long stride = f.a / e;
        long decim = f.d / e;
        Integer weight = Integer(mu) * decim;
        // exponent s = stride * t carries decim * t
        long tmin = ceil_div(w.lo, stride);
        for (long t = tmin; stride * t < w.hi(); ++t) {
          long m = decim * t;
          if (m < -i) continue;
          long idx = m + i;
          if (idx >= static_cast<long>(power.size())) break;
          w.add_at(stride * t, weight * power[idx]);
        }
      }
      psums[fi][i] = std::move(w);
    }
  }
  power.clear();
  power.shrink_to_fit();

  // Newton's identities per family: e_k = (1/k) sum (-1)^(i-1) e_{k-i} p_i
  std::vector<std::vector<Win>> elem(plans.size());
  for (std::size_t fi = 0; fi < plans.size(); ++fi) {
    const FamilyPlan& pl = plans[fi];
    long s = static_cast<long>(pl.f.size);
    elem[fi].resize(s + 1);
    elem[fi][0] = Win{0, {Integer(1)}};
    for (long k = 1; k <= s; ++k) {
      Win acc = win_zero(-pl.f.pole, pl.need_e[k]);
      for (long i = 1; i <= k; ++i)
        win_addmul_scaled(acc, elem[fi][k - i], psums[fi][i], (i % 2 == 1) ? 1 : -1);
      for (auto& x : acc.c) {
        if (x % k != 0)
          throw PrecisionError("Newton identity division failed at level " +
                               std::to_string(N));
        x /= k;
      }
      elem[fi][k] = std::move(acc);
    }
    psums[fi].clear();
  }

  // family characteristic polynomials in X, then the cross-family product
  // invariant maintained: after absorbing a subset S of families, the
  // coefficients are valid through G + 2 + (sum_pole - sum over S of poles)
  std::vector<Win> prod{Win{0, {Integer(1)}}};  // polynomial in X, coeff index = X-degree
  long absorbed_pole = 0;
  for (std::size_t fi = 0; fi < plans.size(); ++fi) {
    const FamilyPlan& pl = plans[fi];
    long s = static_cast<long>(pl.f.size);
    long new_pole = absorbed_pole + pl.f.pole;
    long hi = G + 2 + (sum_pole - new_pole);
    long lo = -new_pole;
    std::vector<Win> next(prod.size() + s, win_zero(lo, hi));
    for (std::size_t m = 0; m < prod.size(); ++m)
      for (long k = 0; k <= s; ++k) {
        // C_f coefficient of X^(s-k) is (-1)^k e_k
        Win term = win_mul(prod[m], elem[fi][k], lo, hi);
        std::size_t deg = m + static_cast<std::size_t>(s - k);
        for (std::size_t t = 0; t < term.c.size(); ++t) {
          if (k % 2 == 0)
            next[deg].c[t] += term.c[t];
          else
            next[deg].c[t] -= term.c[t];
        }
      }
    prod = std::move(next);
    elem[fi].clear();
    absorbed_pole = new_pole;
  }
  if (static_cast<long>(prod.size()) != psi + 1)
    throw PrecisionError("assembled degree mismatch");

  // descending-pole elimination: rewrite each coefficient as a polynomial in j
  std::vector<UPoly> coeffs_in_y(psi + 1);
  for (long m = 0; m <= psi; ++m) {
    Win cur = std::move(prod[m]);
    for (long e = cur.lo; e < -psi; ++e)
      if (cur.at(e) != 0)
        throw PrecisionError("pole deeper than deg_Y at level " + std::to_string(N));
    std::vector<Integer> g(psi + 1, Integer(0));
    for (long t = psi; t >= 1; --t) {
      Integer alpha = cur.at(-t);
      if (alpha == 0) continue;
      g[t] = alpha;
      // cur -= alpha * j^t on the overlap
      long jlo = -t;
      for (long e = std::max(cur.lo, jlo); e < std::min(cur.hi(), elim_hi); ++e)
        cur.add_at(e, -alpha * shortj[t][e - jlo]);
    }
    g[0] = cur.at(0);
    cur.add_at(0, -g[0]);
    for (long e = std::max(cur.lo, -psi); e < cur.hi(); ++e)
      if (cur.at(e) != 0)
        throw PrecisionError("nonzero residual tail at level " + std::to_string(N));
    coeffs_in_y[m] = UPoly(std::move(g));
  }

  if (!(coeffs_in_y[psi] == UPoly::constant(1)))
    throw PrecisionError("leading coefficient is not 1");

  BiPoly phi = BiPoly::from_x_coeffs(coeffs_in_y);
  if (N >= 2 && !phi.is_symmetric())
    throw PrecisionError("computed polynomial is not symmetric");
  return phi;
}

}  // namespace

ModularPolynomial compute_modular_polynomial(unsigned N, unsigned guard) {
  if (N == 0) throw std::invalid_argument("modular polynomial level must be >= 1");
  ModularPolynomial out;
  out.level = N;
  out.psi = psi_of(N);
  if (N == 1) {
    out.poly = BiPoly::variable_x() - BiPoly::variable_y();
    return out;
  }
  try {
    out.poly = assemble_phi(N, guard);
  } catch (const PrecisionError&) {
    out.poly = assemble_phi(N, guard * 2);  // one retry, then hard error
  }
  return out;
}

bool kronecker_congruence_holds(const ModularPolynomial& phi) {
  unsigned p = phi.level;
  // (X^p - Y)(X - Y^p)
  BiPoly xp, yp, x = BiPoly::variable_x(), y = BiPoly::variable_y();
  xp.set(p, 0, 1);
  yp.set(0, p, 1);
  BiPoly target = (xp - y) * (x - yp);
  BiPoly diff = phi.poly - target;
  Integer pp(p);
  for (const auto& [e, c] : diff.terms())
    if (c % pp != 0) return false;
  return true;
}

PhiVerifyReport verify_phi(const ModularPolynomial& phi, unsigned trials,
                           double tolerance, long precision_bits, uint64_t seed) {
  PhiVerifyReport rep;
  rep.level = phi.level;

  if (phi.level >= 2) {
    PhiCheck sym{"symmetry", phi.poly.is_symmetric(), ""};
    rep.checks.push_back(sym);
  } else {
    rep.checks.push_back({"symmetry", true, "skipped for level 1"});
  }

  bool monic = phi.poly.coeff_of_x(static_cast<unsigned>(phi.psi)) == UPoly::constant(1);
  bool degx = static_cast<unsigned long>(phi.poly.deg_x()) == phi.psi;
  rep.checks.push_back({"monic_in_x", monic && degx, ""});

  if (is_prime(Integer(phi.level))) {
    rep.checks.push_back(
        {"kronecker_congruence", kronecker_congruence_holds(phi), ""});
  }

  // numeric: |Phi(j(tau), j(N tau))| / scale at random points of F
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re_d(-0.5, 0.5), im_d(1.0, 2.0);
  bool numeric_ok = true;
  std::string detail;
  for (unsigned t = 0; t < trials; ++t) {
    MpComplex tau(re_d(rng), im_d(rng), precision_bits);
    MpComplex jx = j_numeric(UHPoint{tau}, precision_bits).value;
    UHPoint ntau{tau * MpComplex(static_cast<double>(phi.level), 0.0, precision_bits)};
    MpComplex jy = j_numeric(ntau, precision_bits).value;
    // scale: sum of |c_ij| |x|^i |y|^j
    MpFloat scale = MpFloat::from_double(0.0, precision_bits);
    MpFloat ax = jx.abs(), ay = jy.abs();
    MpComplex acc(0.0, 0.0, precision_bits);
    for (const auto& [e, c] : phi.poly.terms()) {
      MpFloat term = MpFloat::from_integer(abs(c), precision_bits);
      term = term * ax.pow_ui(e.first) * ay.pow_ui(e.second);
      scale = scale + term;
      MpComplex cterm = jx.pow_ui(e.first) * jy.pow_ui(e.second);
      acc = acc + cterm.scaled_by_integer(c);
    }
    double rel = (acc.abs() / scale).to_double();
    if (!(rel < tolerance)) {
      numeric_ok = false;
      detail = "relative residual " + std::to_string(rel) + " at trial " +
               std::to_string(t);
      break;
    }
  }
  rep.checks.push_back({"numeric_identity", numeric_ok, detail});
  return rep;
}

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

PhiCache::PhiCache(std::filesystem::path cache_dir, unsigned max_level)
    : dir_(std::move(cache_dir)), max_level_(max_level) {}

const ModularPolynomial& PhiCache::get(unsigned N) {
  if (N == 0) throw std::invalid_argument("phi level must be >= 1");
  if (N > max_level_)
    throw std::invalid_argument("phi level " + std::to_string(N) +
                                " exceeds the configured maximum " +
                                std::to_string(max_level_));
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mem_.find(N);
    if (it != mem_.end()) return *it->second;
  }
  std::optional<ModularPolynomial> loaded = load_from_disk(N);
  if (!loaded) {
    ModularPolynomial computed = compute_modular_polynomial(N);
    store_to_disk(computed);
    loaded = std::move(computed);
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = mem_.emplace(
      N, std::make_unique<ModularPolynomial>(std::move(*loaded)));
  return *it->second;
}

std::optional<ModularPolynomial> PhiCache::load_from_disk(unsigned N) {
  std::filesystem::path file = dir_ / "phi" / (std::to_string(N) + ".poly");
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string line, tag, checksum;
  unsigned level = 0;
  unsigned long psi = 0;
  try {
    if (!std::getline(in, line)) throw std::runtime_error("empty");
    {
      std::istringstream hs(line);
      hs >> tag >> level >> psi;
      if (tag != "PHI" || hs.fail() || level != N) throw std::runtime_error("header");
    }
    if (!std::getline(in, line)) throw std::runtime_error("no checksum");
    {
      std::istringstream cs(line);
      cs >> tag >> checksum;
      if (tag != "CHECKSUM" || cs.fail()) throw std::runtime_error("checksum line");
    }
    std::ostringstream rest;
    rest << in.rdbuf();
    std::string body = rest.str();
    if (fnv1a_hex(body) != checksum) throw std::runtime_error("checksum mismatch");
    MultiPoly mp = poly_from_text(body);
    ModularPolynomial out;
    out.level = level;
    out.psi = psi;
    out.poly = mp.to_bipoly();
    if (static_cast<unsigned long>(out.poly.deg_x()) != psi_of(N))
      throw std::runtime_error("degree mismatch");
    return out;
  } catch (const std::exception& e) {
    std::lock_guard<std::mutex> lock(mu_);
    warnings_.push_back("corrupt phi cache entry for level " + std::to_string(N) +
                        " (" + e.what() + "); recomputing");
    return std::nullopt;
  }
}

void PhiCache::store_to_disk(const ModularPolynomial& phi) {
  std::error_code ec;
  std::filesystem::create_directories(dir_ / "phi", ec);
  std::filesystem::path file = dir_ / "phi" / (std::to_string(phi.level) + ".poly");
  std::string body = poly_to_text(MultiPoly::from_bipoly(phi.poly, "X", "Y"));
  std::ostringstream os;
  os << "PHI " << phi.level << " " << phi.psi << "\n";
  os << "CHECKSUM " << fnv1a_hex(body) << "\n";
  os << body;
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << os.str();
  }
  std::filesystem::rename(tmp, file, ec);  // atomic publish
}

std::vector<std::string> PhiCache::drain_warnings() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> w = std::move(warnings_);
  warnings_.clear();
  return w;
}

}  // namespace modfermat
