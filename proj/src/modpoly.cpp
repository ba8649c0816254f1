#include "modfermat/modpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace modfermat {

namespace {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

uint64_t invmod(uint64_t a, uint64_t p) { return powmod_u64(a % p, p - 2, p); }

}  // namespace

ModPoly::ModPoly(uint64_t p, std::vector<uint64_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= p_;
  normalize();
}

void ModPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::reduce(const UPoly& f, uint64_t p) {
  std::vector<uint64_t> c(f.coeffs().size());
  Integer pp(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Integer r = f.coeffs()[i] % pp;
    if (r < 0) r += pp;
    c[i] = r.get_ui();
  }
  return ModPoly(p, std::move(c));
}

ModPoly ModPoly::x(uint64_t p) { return ModPoly(p, {0, 1}); }

ModPoly ModPoly::mul(const ModPoly& o) const {
  if (is_zero() || o.is_zero()) return ModPoly(p_, {});
  std::vector<uint64_t> c(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      c[i + j] = (c[i + j] + mulmod(c_[i], o.c_[j], p_)) % p_;
  }
  return ModPoly(p_, std::move(c));
}

ModPoly ModPoly::sub(const ModPoly& o) const {
  std::vector<uint64_t> c(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    uint64_t a = i < c_.size() ? c_[i] : 0;
    uint64_t b = i < o.c_.size() ? o.c_[i] : 0;
    c[i] = (a + p_ - b) % p_;
  }
  return ModPoly(p_, std::move(c));
}

ModPoly ModPoly::rem(const ModPoly& mod) const {
  if (mod.is_zero()) throw std::invalid_argument("ModPoly::rem by zero");
  std::vector<uint64_t> r = c_;
  const long dm = mod.degree();
  const uint64_t inv = invmod(mod.c_.back(), p_);
  for (long k = static_cast<long>(r.size()) - 1; k >= dm; --k) {
    if (r[k] == 0) continue;
    uint64_t f = mulmod(r[k], inv, p_);
    for (long i = 0; i <= dm; ++i)
      r[k - dm + i] = (r[k - dm + i] + p_ - mulmod(f, mod.c_[i], p_)) % p_;
  }
  r.resize(dm > 0 ? dm : 0);
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  uint64_t inv = invmod(c_.back(), p_);
  std::vector<uint64_t> c = c_;
  for (auto& x : c) x = mulmod(x, inv, p_);
  return ModPoly(p_, std::move(c));
}

ModPoly ModPoly::derivative() const {
  if (c_.size() <= 1) return ModPoly(p_, {});
  std::vector<uint64_t> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    c[i - 1] = mulmod(c_[i], i % p_, p_);
  return ModPoly(p_, std::move(c));
}

ModPoly ModPoly::gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = a.rem(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ModPoly ModPoly::powmod(const Integer& e, const ModPoly& mod) const {
  ModPoly base = rem(mod);
  ModPoly result(p_, {1});
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result.mul(result).rem(mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result.mul(base).rem(mod);
  }
  return result;
}

ModPoly ModPoly::divexact(const ModPoly& o) const {
  if (o.is_zero()) throw std::invalid_argument("ModPoly::divexact by zero");
  std::vector<uint64_t> r = c_;
  long dq = degree() - o.degree();
  if (dq < 0) throw std::invalid_argument("ModPoly::divexact: degree");
  std::vector<uint64_t> q(dq + 1, 0);
  const uint64_t inv = invmod(o.c_.back(), p_);
  for (long k = dq; k >= 0; --k) {
    uint64_t f = mulmod(r[k + o.degree()], inv, p_);
    q[k] = f;
    if (f)
      for (long i = 0; i <= o.degree(); ++i)
        r[k + i] = (r[k + i] + p_ - mulmod(f, o.c_[i], p_)) % p_;
  }
  for (uint64_t x : r)
    if (x) throw std::invalid_argument("ModPoly::divexact: remainder");
  return ModPoly(p_, std::move(q));
}

uint64_t ModPoly::eval(uint64_t x) const {
  uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = (mulmod(acc, x, p_) + *it) % p_;
  return acc;
}

std::vector<uint64_t> ModPoly::roots() const {
  std::vector<uint64_t> out;
  if (is_zero()) return out;
  if (p_ < (1u << 22)) {
    for (uint64_t x = 0; x < p_; ++x)
      if (eval(x) == 0) out.push_back(x);
    return out;
  }
  // x^p - x splitting, then recursive (x+a)^((p-1)/2) - 1 splitting
  ModPoly xp = x(p_).powmod(Integer(static_cast<unsigned long>(p_)), *this);
  ModPoly lin = gcd(xp.sub(x(p_)), *this);
  std::vector<ModPoly> stack{lin};
  uint64_t shift = 1;
  while (!stack.empty()) {
    ModPoly f = stack.back();
    stack.pop_back();
    if (f.degree() <= 0) continue;
    if (f.degree() == 1) {
      uint64_t a = f.c_[0], b = f.c_[1];
      out.push_back(mulmod(p_ - a, invmod(b, p_), p_));
      continue;
    }
    if (f.eval(0) == 0) {
      out.push_back(0);
      f = f.divexact(ModPoly(p_, {0, 1}));
      stack.push_back(f);
      continue;
    }
    ModPoly shifted(p_, {shift, 1});
    ModPoly h = shifted.powmod(Integer((static_cast<unsigned long>(p_) - 1) / 2), f);
    h = h.sub(ModPoly(p_, {1}));
    ModPoly g = gcd(h, f);
    ++shift;
    if (g.degree() == 0 || g.degree() == f.degree()) {
      stack.push_back(f);  // retry with the next shift
    } else {
      stack.push_back(g);
      stack.push_back(f.divexact(g));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool squarefree_mod(const UPoly& f, uint64_t p) {
  if (f.is_zero()) return false;
  ModPoly fp = ModPoly::reduce(f, p);
  if (fp.degree() != f.degree()) return false;  // leading coefficient dropped
  ModPoly g = ModPoly::gcd(fp, fp.derivative());
  return g.degree() == 0;
}

std::vector<long> ddf_degrees(const ModPoly& f) {
  std::vector<long> out;
  ModPoly cur = f.monic();
  ModPoly h = ModPoly::x(f.prime());
  Integer p(static_cast<unsigned long>(f.prime()));
  long k = 0;
  while (cur.degree() > 0) {
    ++k;
    if (2 * k > cur.degree()) {
      out.push_back(cur.degree());  // what is left is irreducible
      break;
    }
    h = h.powmod(p, cur);
    ModPoly g = ModPoly::gcd(h.sub(ModPoly::x(f.prime())), cur);
    if (g.degree() > 0) {
      for (long i = 0; i < g.degree() / k; ++i) out.push_back(k);
      cur = cur.divexact(g);
      h = h.rem(cur);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace modfermat
