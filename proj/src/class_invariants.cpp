#include "modfermat/class_invariants.hpp"
#include <numeric>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "modfermat/jseries.hpp"
#include "modfermat/modpoly.hpp"
#include "modfermat/modular_poly.hpp"
#include "modfermat/mpcomplex.hpp"
#include "modfermat/multipoly.hpp"

namespace modfermat {

bool is_valid_discriminant(long D) {
  if (D >= 0) return false;
  long r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

std::vector<BQForm> reduced_forms(long D) {
  if (!is_valid_discriminant(D))
    throw std::invalid_argument("not an imaginary quadratic discriminant: " +
                                std::to_string(D));
  std::vector<BQForm> out;
  const long absD = -D;
  for (long a = 1; 3 * a * a <= absD; ++a) {  // reduced forms have a <= sqrt(|D|/3)
    // |b| <= a, b same parity as D, 4ac = b^2 - D
    for (long babs = (absD % 2 == 0) ? 0 : 1; babs <= a; babs += 2) {
      long num = babs * babs + absD;
      if (num % (4 * a)) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (std::gcd(a, std::gcd(babs, c)) != 1) continue;
      out.push_back({a, babs, c});
      if (babs != 0 && babs != a && a != c) out.push_back({a, -babs, c});
    }
  }
  return out;
}

unsigned long class_number(long D) { return reduced_forms(D).size(); }

namespace {

ClassPolynomial hilbert_attempt(long D, long extra_bits) {
  std::vector<BQForm> forms = reduced_forms(D);
  const unsigned long h = forms.size();
  const double absD = static_cast<double>(-D);
  // precision: sum over forms of pi sqrt|D|/a * log2 e, plus guard
  double bits = 0;
  for (const auto& f : forms) bits += M_PI * std::sqrt(absD) / f.a * 1.4426950408889634;
  long prec = static_cast<long>(bits) + 32 * static_cast<long>(h) + 64 + extra_bits;

  MpFloat sqrtD = MpFloat::from_integer(Integer(-D), prec).sqrt();
  MpFloat pi = MpFloat::pi(prec);

  // real polynomial accumulated factor by factor (pairs give quadratics)
  std::vector<MpFloat> poly{MpFloat::from_double(1.0, prec)};
  auto mul_in = [&](const std::vector<MpFloat>& factor) {
    std::vector<MpFloat> next(poly.size() + factor.size() - 1,
                              MpFloat::from_double(0.0, prec));
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < factor.size(); ++j)
        next[i + j] = next[i + j] + poly[i] * factor[j];
    poly = std::move(next);
  };

  for (const auto& f : forms) {
    if (f.b < 0) continue;  // conjugate pair handled at +b
    // tau = (-b + i sqrt|D|) / (2a); q = exp(2 pi i tau)
    MpFloat re_q = -(pi * sqrtD) / MpFloat::from_double(static_cast<double>(f.a), prec);
    MpFloat arg = -(pi * MpFloat::from_double(static_cast<double>(f.b), prec)) /
                  MpFloat::from_double(static_cast<double>(f.a), prec);
    MpFloat mag = re_q.exp();
    MpComplex q(mag * arg.cos(), mag * arg.sin());
    // series length: c_n |q|^n < 2^-(prec+8); log2|q| = -pi sqrt|D|/a log2 e
    double logq = -M_PI * std::sqrt(absD) / f.a * 1.4426950408889634;
    std::size_t terms = 8;
    for (std::size_t n = 1;; ++n) {
      double t = 4.0 * M_PI * std::sqrt(static_cast<double>(n)) * 1.4426950408889634 +
                 static_cast<double>(n) * logq;
      if (t < -static_cast<double>(prec) - 8.0) {
        terms = n + 2;
        break;
      }
    }
    const std::vector<Integer>& c = j_coefficients(terms + 2);
    MpComplex acc(0.0, 0.0, prec);
    for (std::size_t k = terms + 1; k-- > 0;) {
      acc = acc * q;
      acc = acc + MpComplex(MpFloat::from_integer(c[k], prec), MpFloat::from_double(0.0, prec));
    }
    MpComplex jval = acc / q;

    bool ambiguous = (f.b == 0) || (f.b == f.a) || (f.a == f.c);
    if (ambiguous) {
      mul_in({-jval.re(), MpFloat::from_double(1.0, prec)});
    } else {
      // (X - j)(X - conj j) = X^2 - 2 Re j X + |j|^2
      MpFloat two(prec);
      mpfr_set_d(two.raw(), 2.0, MPFR_RNDN);
      mul_in({jval.abs2(), -(two * jval.re()), MpFloat::from_double(1.0, prec)});
    }
  }

  ClassPolynomial out;
  out.discriminant = D;
  out.class_number = h;
  std::vector<Integer> coeffs(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Integer r = poly[i].round();
    MpFloat resid = (poly[i] - MpFloat::from_integer(r, prec)).abs();
    if (!(resid < MpFloat::from_double(0.25, prec)))
      throw PrecisionError("class polynomial rounding residual too large for D=" +
                           std::to_string(D));
    coeffs[i] = std::move(r);
  }
  out.poly = UPoly(std::move(coeffs));
  if (out.poly.degree() != static_cast<long>(h) || out.poly.lc() != 1)
    throw PrecisionError("class polynomial degree/monicity failed for D=" +
                         std::to_string(D));
  return out;
}

}  // namespace

ClassPolynomial hilbert_class_polynomial(long D, long extra_guard_bits) {
  if (!is_valid_discriminant(D))
    throw std::invalid_argument("not an imaginary quadratic discriminant: " +
                                std::to_string(D));
  try {
    return hilbert_attempt(D, extra_guard_bits);
  } catch (const PrecisionError&) {
    return hilbert_attempt(D,
                           extra_guard_bits + static_cast<long>(64 + 2 * std::sqrt(-D)));
  }
}

namespace {

// memoized list of (D, j) with h(D) = 1, extended on demand
std::vector<std::pair<long, Integer>> h1_moduli_upto(long dbound) {
  static std::mutex mu;
  static long covered = 0;
  static std::vector<std::pair<long, Integer>> table;
  std::lock_guard<std::mutex> lock(mu);
  if (dbound > covered) {
    table.clear();
    for (long absd = 3; absd <= dbound; ++absd) {
      long D = -absd;
      if (!is_valid_discriminant(D)) continue;
      if (class_number(D) != 1) continue;
      ClassPolynomial hd = hilbert_class_polynomial(D);
      table.emplace_back(D, -hd.poly.coeff(0));  // root of the monic linear H_D
    }
    covered = dbound;
  }
  std::vector<std::pair<long, Integer>> out;
  for (const auto& [d, j] : table)
    if (-d <= dbound) out.emplace_back(d, j);
  return out;
}

}  // namespace

std::vector<std::pair<long, Integer>> rational_singular_moduli(long dbound) {
  if (dbound < 3) return {};
  return h1_moduli_upto(dbound);
}

std::optional<long> is_special(const Rational& x, long dbound) {
  if (!is_integer(x)) return std::nullopt;  // singular moduli are algebraic integers
  const Integer& xi = x.get_num();
  for (const auto& [D, j] : rational_singular_moduli(dbound))
    if (j == xi) return D;
  return std::nullopt;
}

namespace {

uint64_t modpoly_resultant(ModPoly f, ModPoly g) {
  const uint64_t p = f.prime();
  auto powm = [&](uint64_t base, long e) {
    uint64_t r = 1 % p;
    base %= p;
    while (e) {
      if (e & 1) r = static_cast<uint64_t>((static_cast<unsigned __int128>(r) * base) % p);
      base = static_cast<uint64_t>((static_cast<unsigned __int128>(base) * base) % p);
      e >>= 1;
    }
    return r;
  };
  if (f.is_zero() || g.is_zero()) return 0;
  uint64_t res = 1;
  while (true) {
    if (g.degree() == 0) {
      res = static_cast<uint64_t>(
          (static_cast<unsigned __int128>(res) * powm(g.coeffs()[0], f.degree())) % p);
      return res;
    }
    ModPoly r = f.rem(g);
    if (r.is_zero()) return 0;
    long df = f.degree(), dg = g.degree(), dr = r.degree();
    uint64_t factor = powm(g.coeffs().back(), df - dr);
    if ((df & 1) && (dg & 1)) factor = (p - factor) % p;
    res = static_cast<uint64_t>((static_cast<unsigned __int128>(res) * factor) % p);
    f = std::move(g);
    g = std::move(r);
  }
}

}  // namespace

KuhneReport kuhne_check(long dbound, unsigned threads) {
  KuhneReport rep;
  rep.dbound = dbound;
  std::vector<long> discs;
  for (long absd = 3; absd <= dbound; ++absd)
    if (is_valid_discriminant(-absd)) discs.push_back(-absd);
  rep.discriminants = discs.size();

  std::vector<UPoly> hd(discs.size()), hd_flip(discs.size());
  for (std::size_t i = 0; i < discs.size(); ++i) {
    hd[i] = hilbert_class_polynomial(discs[i]).poly;
    hd_flip[i] = hd[i].compose_linear(-1, 1);  // H_D(1 - X)
  }

  const std::vector<uint64_t> screen_primes{1000003, 1000033, 1000037, 1000039,
                                            1000081, 1000099, 1000117, 1000121};
  std::mutex viol_mu;
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < discs.size(); ++j) {
        bool nonzero = false;
        for (uint64_t p : screen_primes) {
          // monic inputs keep their degree mod p, so a nonzero residue certifies
          if (modpoly_resultant(ModPoly::reduce(hd[i], p),
                                ModPoly::reduce(hd_flip[j], p)) != 0) {
            nonzero = true;
            break;
          }
        }
        if (!nonzero && upoly_resultant(hd[i], hd_flip[j]) == 0) {
          std::lock_guard<std::mutex> lock(viol_mu);
          rep.violations.emplace_back(discs[i], discs[j]);
        }
      }
    }
  };
  if (threads <= 1 || discs.size() < 8) {
    worker(0, discs.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (discs.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t lo = t * chunk, hi = std::min(discs.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  rep.pairs_checked = discs.size() * discs.size();
  return rep;
}

HdCache::HdCache(std::filesystem::path cache_dir, long max_disc)
    : dir_(std::move(cache_dir)), max_disc_(max_disc) {}

const ClassPolynomial& HdCache::get(long D) {
  if (!is_valid_discriminant(D))
    throw std::invalid_argument("not an imaginary quadratic discriminant: " +
                                std::to_string(D));
  if (-D > max_disc_)
    throw std::invalid_argument("|D| exceeds the configured maximum " +
                                std::to_string(max_disc_));
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = mem_.find(D);
    if (it != mem_.end()) return *it->second;
  }
  std::optional<ClassPolynomial> loaded = load_from_disk(D);
  if (!loaded) {
    ClassPolynomial computed = hilbert_class_polynomial(D);
    store_to_disk(computed);
    loaded = std::move(computed);
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] =
      mem_.emplace(D, std::make_unique<ClassPolynomial>(std::move(*loaded)));
  return *it->second;
}

std::optional<ClassPolynomial> HdCache::load_from_disk(long D) {
  std::filesystem::path file = dir_ / "hd" / (std::to_string(-D) + ".poly");
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    std::string line, tag, checksum;
    long level = 0;
    unsigned long h = 0;
    if (!std::getline(in, line)) throw std::runtime_error("empty");
    {
      std::istringstream hs(line);
      hs >> tag >> level >> h;
      if (tag != "HD" || hs.fail() || level != D) throw std::runtime_error("header");
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
    ClassPolynomial out;
    out.discriminant = D;
    out.class_number = h;
    out.poly = poly_from_text(body).to_upoly();
    if (out.poly.degree() != static_cast<long>(h)) throw std::runtime_error("degree");
    return out;
  } catch (const std::exception& e) {
    std::lock_guard<std::mutex> lock(mu_);
    warnings_.push_back("corrupt hd cache entry for D=" + std::to_string(D) + " (" +
                        e.what() + "); recomputing");
    return std::nullopt;
  }
}

void HdCache::store_to_disk(const ClassPolynomial& hd) {
  std::error_code ec;
  std::filesystem::create_directories(dir_ / "hd", ec);
  std::filesystem::path file = dir_ / "hd" / (std::to_string(-hd.discriminant) + ".poly");
  std::string body = poly_to_text(MultiPoly::from_upoly(hd.poly, "X"));
  std::ostringstream os;
  os << "HD " << hd.discriminant << " " << hd.class_number << "\n";
  os << "CHECKSUM " << fnv1a_hex(body) << "\n";
  os << body;
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << os.str();
  }
  std::filesystem::rename(tmp, file, ec);
}

std::vector<std::string> HdCache::drain_warnings() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::string> w = std::move(warnings_);
  warnings_.clear();
  return w;
}

}  // namespace modfermat
