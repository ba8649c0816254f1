#include "modfermat/qseries.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace modfermat {

namespace {

std::size_t max_bits(const std::vector<Integer>& v) {
  std::size_t m = 1;
  for (const auto& x : v)
    if (x != 0) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
  return m;
}

std::vector<Integer> schoolbook(const std::vector<Integer>& a,
                                const std::vector<Integer>& b,
                                std::size_t out_lo, std::size_t out_hi) {
  std::vector<Integer> c(out_hi - out_lo);
  Integer t;
  for (std::size_t i = 0; i < a.size() && i < out_hi; ++i) {
    if (a[i] == 0) continue;
    std::size_t jlo = out_lo > i ? out_lo - i : 0;
    std::size_t jhi = std::min(b.size(), out_hi - i);
    for (std::size_t j = jlo; j < jhi; ++j) {
      if (b[j] == 0) continue;
      t = a[i] * b[j];
      c[i + j - out_lo] += t;
    }
  }
  return c;
}

// Kronecker substitution with the all-ones offset trick so that negative
// coefficients survive a single nonnegative big-integer product.
std::vector<Integer> kronecker(const std::vector<Integer>& a,
                               const std::vector<Integer>& b,
                               std::size_t out_lo, std::size_t out_hi) {
  const std::size_t na = a.size(), nb = b.size();
  const std::size_t ba = max_bits(a), bb = max_bits(b);
  std::size_t logmin = 1;
  while ((1ull << logmin) < std::min(na, nb)) ++logmin;
  // Digit bound: (2^(ba+1))(2^(bb+1)) * min(na,nb)  =>  ba+bb+2+logmin bits.
  std::size_t W = ba + bb + logmin + 4;
  W = (W + 63) & ~std::size_t(63);
  const std::size_t limbs_per = W / 64;

  auto pack = [&](const std::vector<Integer>& v, std::size_t vbits) {
    // offset M = 2^vbits makes every digit nonnegative and < 2^(vbits+1)
    Integer M;
    mpz_setbit(M.get_mpz_t(), vbits);
    std::vector<uint64_t> buf(v.size() * limbs_per, 0);
    Integer tmp;
    for (std::size_t i = 0; i < v.size(); ++i) {
      tmp = v[i] + M;
      std::size_t cnt = 0;
      mpz_export(buf.data() + i * limbs_per, &cnt, -1, sizeof(uint64_t), 0, 0,
                 tmp.get_mpz_t());
    }
    Integer packed;
    mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(uint64_t), 0, 0,
               buf.data());
    return std::make_pair(packed, M);
  };

  auto [za, Ma] = pack(a, ba);
  auto [zb, Mb] = pack(b, bb);

  Integer prod = za * zb;

  const std::size_t nc = na + nb - 1;
  std::vector<uint64_t> buf(nc * limbs_per + 1, 0);
  std::size_t cnt = 0;
  mpz_export(buf.data(), &cnt, -1, sizeof(uint64_t), 0, 0, prod.get_mpz_t());

  // Sliding-window sums of the raw (signed) inputs for the offset correction:
  // ~c[k] = c[k] + Ma * sum_{i+j=k} b[j] + Mb * sum a[i] + Ma*Mb*count(k).
  std::vector<Integer> psa(na + 1), psb(nb + 1);
  psa[0] = 0;
  for (std::size_t i = 0; i < na; ++i) psa[i + 1] = psa[i] + a[i];
  psb[0] = 0;
  for (std::size_t j = 0; j < nb; ++j) psb[j + 1] = psb[j] + b[j];

  std::vector<Integer> c(out_hi - out_lo);
  Integer digit, corr;
  Integer MaMb = Ma * Mb;
  for (std::size_t k = out_lo; k < out_hi; ++k) {
    mpz_import(digit.get_mpz_t(), limbs_per, -1, sizeof(uint64_t), 0, 0,
               buf.data() + k * limbs_per);
    std::size_t ilo = k >= nb ? k - nb + 1 : 0;
    std::size_t ihi = std::min(k, na - 1);
    std::size_t jlo = k >= na ? k - na + 1 : 0;
    std::size_t jhi = std::min(k, nb - 1);
    long count = static_cast<long>(ihi - ilo + 1);
    corr = Ma * (psb[jhi + 1] - psb[jlo]) + Mb * (psa[ihi + 1] - psa[ilo]) +
           MaMb * count;
    c[k - out_lo] = digit - corr;
  }
  return c;
}

}  // namespace

std::vector<Integer> convolve_window(const std::vector<Integer>& a,
                                     const std::vector<Integer>& b,
                                     std::size_t out_lo, std::size_t out_hi) {
  if (a.empty() || b.empty()) return {};
  const std::size_t nc = a.size() + b.size() - 1;
  out_hi = std::min(out_hi, nc);
  if (out_lo >= out_hi) return {};
  // Kronecker pays off once the schoolbook work is large enough.
  const std::size_t window = out_hi - out_lo;
  const std::size_t small = std::min(a.size(), b.size());
  if (small < 24 || window * small < 16384)
    return schoolbook(a, b, out_lo, out_hi);
  return kronecker(a, b, out_lo, out_hi);
}

std::vector<Integer> convolve(const std::vector<Integer>& a,
                              const std::vector<Integer>& b) {
  if (a.empty() || b.empty()) return {};
  return convolve_window(a, b, 0, a.size() + b.size() - 1);
}

std::vector<Integer> series_invert(const std::vector<Integer>& f, std::size_t n) {
  if (f.empty() || (f[0] != 1 && f[0] != -1))
    throw std::invalid_argument("series_invert: leading coefficient must be +-1");
  std::vector<Integer> g{f[0]};  // 1/f mod q
  std::size_t have = 1;
  while (have < n) {
    std::size_t want = std::min(n, 2 * have);
    // g <- g*(2 - f*g) mod q^want
    std::vector<Integer> fg = convolve_window(
        std::vector<Integer>(f.begin(), f.begin() + std::min(f.size(), want)), g,
        0, want);
    fg.resize(want);
    for (auto& x : fg) x = -x;
    fg[0] += 2;
    std::vector<Integer> next = convolve_window(g, fg, 0, want);
    next.resize(want);
    g = std::move(next);
    have = want;
  }
  g.resize(n);
  return g;
}

QSeries::QSeries(long lead, std::vector<Integer> coeffs, long trunc)
    : lead_(lead), trunc_(trunc), coeff_(std::move(coeffs)) {
  if (trunc_ <= lead_)
    throw std::invalid_argument("QSeries: empty window (truncation <= leading exponent)");
  if (static_cast<long>(coeff_.size()) != trunc_ - lead_)
    throw std::invalid_argument("QSeries: coefficient count does not match window");
}

QSeries QSeries::zero(long lead, long trunc) {
  return QSeries(lead, std::vector<Integer>(trunc - lead), trunc);
}

long QSeries::order() const {
  for (long i = 0; i < trunc_ - lead_; ++i)
    if (coeff_[i] != 0) return lead_ + i;
  return trunc_;
}

const Integer& QSeries::coeff(long e) const {
  static const Integer kZero(0);
  if (e >= trunc_)
    throw std::out_of_range("QSeries::coeff beyond truncation order");
  if (e < lead_) return kZero;
  return coeff_[e - lead_];
}

QSeries QSeries::truncated(long new_trunc) const {
  if (new_trunc > trunc_)
    throw std::invalid_argument("QSeries::truncated cannot extend the window");
  std::vector<Integer> c(coeff_.begin(), coeff_.begin() + (new_trunc - lead_));
  return QSeries(lead_, std::move(c), new_trunc);
}

QSeries QSeries::shifted(long delta) const {
  return QSeries(lead_ + delta, coeff_, trunc_ + delta);
}

QSeries add(const QSeries& a, const QSeries& b) {
  long lead = std::min(a.lead_, b.lead_);
  long trunc = std::min(a.trunc_, b.trunc_);
  if (trunc <= lead) throw std::invalid_argument("QSeries add: empty result window");
  std::vector<Integer> c(trunc - lead);
  for (long e = lead; e < trunc; ++e) {
    Integer v = (e >= a.lead_ ? a.coeff_[e - a.lead_] : Integer(0)) +
                (e >= b.lead_ ? b.coeff_[e - b.lead_] : Integer(0));
    c[e - lead] = std::move(v);
  }
  return QSeries(lead, std::move(c), trunc);
}

QSeries sub(const QSeries& a, const QSeries& b) {
  long lead = std::min(a.lead_, b.lead_);
  long trunc = std::min(a.trunc_, b.trunc_);
  if (trunc <= lead) throw std::invalid_argument("QSeries sub: empty result window");
  std::vector<Integer> c(trunc - lead);
  for (long e = lead; e < trunc; ++e) {
    Integer v = (e >= a.lead_ ? a.coeff_[e - a.lead_] : Integer(0)) -
                (e >= b.lead_ ? b.coeff_[e - b.lead_] : Integer(0));
    c[e - lead] = std::move(v);
  }
  return QSeries(lead, std::move(c), trunc);
}

QSeries mul(const QSeries& a, const QSeries& b) {
  // Truncation propagates through the actual orders: terms of a at or above
  // a.trunc_ are unknown and meet b at exponent >= b.order().
  long oa = a.order(), ob = b.order();
  long trunc = std::min(a.trunc_ + ob, b.trunc_ + oa);
  long lead = oa + ob;
  if (oa == a.trunc_ || ob == b.trunc_)  // a factor is zero through its window
    return QSeries::zero(trunc - 1, trunc);
  if (trunc <= lead) throw std::invalid_argument("QSeries mul: empty result window");
  std::vector<Integer> va(a.coeff_.begin() + (oa - a.lead_), a.coeff_.end());
  std::vector<Integer> vb(b.coeff_.begin() + (ob - b.lead_), b.coeff_.end());
  std::vector<Integer> c = convolve_window(va, vb, 0, trunc - lead);
  c.resize(trunc - lead);
  return QSeries(lead, std::move(c), trunc);
}

QSeries QSeries::invert_unit() const {
  long o = order();
  if (o == trunc_)
    throw std::invalid_argument("QSeries::invert_unit: series is zero through its window");
  std::vector<Integer> unit(coeff_.begin() + (o - lead_), coeff_.end());
  std::vector<Integer> inv = series_invert(unit, unit.size());
  return QSeries(-o, std::move(inv), -o + static_cast<long>(trunc_ - o));
}

QSeries QSeries::power_substitute(unsigned long k) const {
  if (k == 0) throw std::invalid_argument("power_substitute: k must be >= 1");
  long kk = static_cast<long>(k);
  long lead = lead_ * kk;
  // exponents e with e*k < trunc*k are known; the first unknown stretched
  // exponent is (trunc-1)*k + 1 when the source had trunc-1 known.
  long trunc = (trunc_ - 1) * kk + 1;
  std::vector<Integer> c(trunc - lead);
  for (long i = 0; i < trunc_ - lead_; ++i) c[i * kk] = coeff_[i];
  return QSeries(lead, std::move(c), trunc);
}

bool QSeries::operator==(const QSeries& o) const {
  return lead_ == o.lead_ && trunc_ == o.trunc_ && coeff_ == o.coeff_;
}

}  // namespace modfermat
