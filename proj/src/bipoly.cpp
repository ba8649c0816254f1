#include "modfermat/bipoly.hpp"

#include <stdexcept>

namespace modfermat {

BiPoly BiPoly::variable_x() {
  BiPoly p;
  p.set(1, 0, 1);
  return p;
}

BiPoly BiPoly::variable_y() {
  BiPoly p;
  p.set(0, 1, 1);
  return p;
}

BiPoly BiPoly::constant(Integer c) {
  BiPoly p;
  p.set(0, 0, std::move(c));
  return p;
}

void BiPoly::set(unsigned i, unsigned j, Integer c) {
  if (c == 0)
    t_.erase({i, j});
  else
    t_[{i, j}] = std::move(c);
}

const Integer& BiPoly::coeff(unsigned i, unsigned j) const {
  static const Integer kZero(0);
  auto it = t_.find({i, j});
  return it == t_.end() ? kZero : it->second;
}

long BiPoly::deg_x() const {
  long d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, static_cast<long>(e.first));
  return d;
}

long BiPoly::deg_y() const {
  long d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, static_cast<long>(e.second));
  return d;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [e, c] : o.t_) {
    auto it = r.t_.find(e);
    if (it == r.t_.end()) {
      r.t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.t_.erase(it);
    }
  }
  return r;
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r;
  for (const auto& [ea, ca] : t_)
    for (const auto& [eb, cb] : o.t_) {
      ExpPair e{ea.first + eb.first, ea.second + eb.second};
      auto it = r.t_.find(e);
      if (it == r.t_.end())
        r.t_.emplace(e, ca * cb);
      else {
        it->second += ca * cb;
        if (it->second == 0) r.t_.erase(it);
      }
    }
  return r;
}

BiPoly BiPoly::operator*(const Integer& k) const {
  if (k == 0) return BiPoly();
  BiPoly r = *this;
  for (auto& [e, c] : r.t_) c *= k;
  return r;
}

Rational BiPoly::eval(const Rational& x, const Rational& y) const {
  // Horner in x over Horner in y
  long dx = deg_x();
  Rational acc = 0;
  for (long i = dx; i >= 0; --i) {
    Rational row = 0;
    UPoly yi = coeff_of_x(static_cast<unsigned>(i));
    row = yi.eval(y);
    acc = acc * x + row;
  }
  return acc;
}

BiPoly BiPoly::transpose() const {
  BiPoly r;
  for (const auto& [e, c] : t_) r.t_[{e.second, e.first}] = c;
  return r;
}

BiPoly BiPoly::substitute_y_linear(const Integer& a, const Integer& b) const {
  long dy = deg_y();
  // powers of (a*v + b)
  std::vector<UPoly> pw(dy + 1);
  pw[0] = UPoly::constant(1);
  UPoly lin(std::vector<Integer>{b, a});
  for (long j = 1; j <= dy; ++j) pw[j] = pw[j - 1] * lin;
  BiPoly r;
  for (const auto& [e, c] : t_) {
    const UPoly& q = pw[e.second];
    for (long k = 0; k <= q.degree(); ++k) {
      if (q.coeff(k) == 0) continue;
      auto key = ExpPair{e.first, static_cast<unsigned>(k)};
      auto it = r.t_.find(key);
      Integer add = c * q.coeff(k);
      if (it == r.t_.end())
        r.t_.emplace(key, std::move(add));
      else {
        it->second += add;
        if (it->second == 0) r.t_.erase(it);
      }
    }
  }
  return r;
}

BiPoly BiPoly::substitute_x_linear(const Integer& a, const Integer& b) const {
  return transpose().substitute_y_linear(a, b).transpose();
}

UPoly BiPoly::specialize_x(const Rational& r) const {
  long dx = deg_x();
  if (dx < 0) return UPoly();
  const Integer& num = r.get_num();
  const Integer& den = r.get_den();
  // powers num^i * den^(dx-i)
  std::vector<Integer> scale(dx + 1);
  for (long i = 0; i <= dx; ++i)
    scale[i] = pow_integer(num, i) * pow_integer(den, dx - i);
  std::vector<Integer> out(static_cast<std::size_t>(deg_y()) + 1, Integer(0));
  for (const auto& [e, c] : t_) out[e.second] += c * scale[e.first];
  return UPoly(std::move(out));
}

UPoly BiPoly::specialize_y(const Rational& r) const {
  return transpose().specialize_x(r);
}

UPoly BiPoly::diagonal() const {
  long d = deg_x() + deg_y();
  if (is_zero()) return UPoly();
  std::vector<Integer> out(d + 1, Integer(0));
  for (const auto& [e, c] : t_) out[e.first + e.second] += c;
  return UPoly(std::move(out));
}

Integer BiPoly::content() const {
  Integer g = 0;
  for (const auto& [e, c] : t_) {
    g = gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

BiPoly BiPoly::sign_normalized() const {
  if (t_.empty()) return *this;
  // leading term in graded lex order (total degree, then lex)
  const Integer* lead = nullptr;
  unsigned best_deg = 0;
  ExpPair best_e{0, 0};
  for (const auto& [e, c] : t_) {
    unsigned deg = e.first + e.second;
    if (!lead || deg > best_deg || (deg == best_deg && e > best_e)) {
      lead = &c;
      best_deg = deg;
      best_e = e;
    }
  }
  if (*lead < 0) return -*this;
  return *this;
}

UPoly BiPoly::coeff_of_x(unsigned i) const {
  long dy = deg_y();
  std::vector<Integer> c(dy >= 0 ? dy + 1 : 0, Integer(0));
  for (const auto& [e, v] : t_)
    if (e.first == i) c[e.second] = v;
  return UPoly(std::move(c));
}

BiPoly BiPoly::from_x_coeffs(const std::vector<UPoly>& cs) {
  BiPoly r;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (long j = 0; j <= cs[i].degree(); ++j)
      if (cs[i].coeff(j) != 0)
        r.t_[{static_cast<unsigned>(i), static_cast<unsigned>(j)}] = cs[i].coeff(j);
  return r;
}

namespace {

// ---- subresultant PRS over Z[A, B] ------------------------------------
// Polynomials in the eliminated variable T with BiPoly coefficients,
// ascending T-degree, no zero leading entry.

using TPoly = std::vector<BiPoly>;

void tnormalize(TPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

long tdeg(const TPoly& p) { return static_cast<long>(p.size()) - 1; }

// exact division q = a / b for BiPoly (throws if not exact)
BiPoly bipoly_divexact(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("bipoly division by zero");
  BiPoly rem = a, q;
  while (!rem.is_zero()) {
    const auto& lt_r = *rem.terms().rbegin();
    const auto& lt_b = *b.terms().rbegin();
    if (lt_r.first.first < lt_b.first.first || lt_r.first.second < lt_b.first.second)
      throw std::invalid_argument("bipoly division not exact (exponents)");
    if (lt_r.second % lt_b.second != 0)
      throw std::invalid_argument("bipoly division not exact (coefficient)");
    BiPoly t;
    t.set(lt_r.first.first - lt_b.first.first, lt_r.first.second - lt_b.first.second,
          lt_r.second / lt_b.second);
    q = q + t;
    rem = rem - t * b;
  }
  return q;
}

BiPoly bipoly_pow(const BiPoly& b, long e) {
  BiPoly r = BiPoly::constant(1);
  for (long i = 0; i < e; ++i) r = r * b;
  return r;
}

TPoly t_prem(const TPoly& a, const TPoly& b) {
  long da = tdeg(a), db = tdeg(b);
  if (da < db) return a;
  TPoly r = a;
  const BiPoly& lb = b.back();
  for (long k = da; k >= db; --k) {
    BiPoly top = r[k];
    for (auto& x : r) x = x * lb;
    if (!top.is_zero())
      for (long i = 0; i <= db; ++i) r[k - db + i] = r[k - db + i] - top * b[i];
  }
  r.resize(db > 0 ? db : 0);
  tnormalize(r);
  return r;
}

}  // namespace

BiPoly resultant_eliminate(const BiPoly& p, const BiPoly& q) {
  if (p.is_zero() || q.is_zero())
    throw std::invalid_argument("resultant_eliminate: zero input polynomial");
  // p lives in (A, T): T is p's second variable. q lives in (T, B): T is
  // q's first variable. Internally A is variable x and B is variable y of
  // the output; convert both inputs to T-polynomials with BiPoly(A,B)
  // coefficients.
  long dtp = p.deg_y(), dtq = q.deg_x();
  if (dtp <= 0 || dtq <= 0)
    throw std::invalid_argument("resultant_eliminate: degree 0 in the eliminated variable");

  TPoly A(dtp + 1), B(dtq + 1);
  for (const auto& [e, c] : p.terms()) {
    BiPoly& slot = A[e.second];
    slot.set(e.first, 0, slot.coeff(e.first, 0) + c);
  }
  for (const auto& [e, c] : q.terms()) {
    BiPoly& slot = B[e.first];
    slot.set(0, e.second, slot.coeff(0, e.second) + c);
  }
  tnormalize(A);
  tnormalize(B);

  int sign = 1;
  if (tdeg(A) < tdeg(B)) {
    if ((tdeg(A) & 1) && (tdeg(B) & 1)) sign = -sign;
    std::swap(A, B);
  }

  BiPoly g = BiPoly::constant(1), h = BiPoly::constant(1);
  while (true) {
    long da = tdeg(A), db = tdeg(B);
    if (db < 0) return BiPoly();  // zero remainder at positive degree: resultant 0
    if (db == 0) {
      BiPoly num = bipoly_pow(B[0], da);
      for (long i = 0; i < da - 1; ++i) num = bipoly_divexact(num, h);
      if (sign < 0) num = -num;
      return num.sign_normalized();
    }
    long delta = da - db;
    if ((da & 1) && (db & 1)) sign = -sign;
    TPoly R = t_prem(A, B);
    BiPoly denom = g * bipoly_pow(h, delta);
    for (auto& x : R) x = bipoly_divexact(x, denom);
    A = std::move(B);
    B = std::move(R);
    g = A.back();
    if (delta >= 1) {
      BiPoly hp = bipoly_pow(g, delta);
      for (long i = 0; i < delta - 1; ++i) hp = bipoly_divexact(hp, h);
      h = hp;
    }
  }
}

}  // namespace modfermat
