#include "modfermat/upoly.hpp"

#include <sstream>
#include <stdexcept>

#include "modfermat/qseries.hpp"

namespace modfermat {

UPoly::UPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { normalize(); }

UPoly UPoly::constant(Integer c) {
  UPoly p;
  if (c != 0) p.c_.push_back(std::move(c));
  return p;
}

UPoly UPoly::monomial(Integer c, std::size_t deg) {
  UPoly p;
  if (c != 0) {
    p.c_.assign(deg + 1, Integer(0));
    p.c_[deg] = std::move(c);
  }
  return p;
}

void UPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Integer& UPoly::lc() const {
  static const Integer kZero(0);
  return c_.empty() ? kZero : c_.back();
}

const Integer& UPoly::coeff(std::size_t i) const {
  static const Integer kZero(0);
  return i < c_.size() ? c_[i] : kZero;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Integer> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + o.coeff(i);
  return UPoly(std::move(c));
}

UPoly UPoly::operator-(const UPoly& o) const {
  std::vector<Integer> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - o.coeff(i);
  return UPoly(std::move(c));
}

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return UPoly();
  return UPoly(convolve(c_, o.c_));
}

UPoly UPoly::operator*(const Integer& k) const {
  if (k == 0) return UPoly();
  UPoly r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

Integer UPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Integer> c(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Integer(i);
  return UPoly(std::move(c));
}

Integer UPoly::content() const {
  Integer g = 0;
  for (const auto& x : c_) {
    g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

UPoly UPoly::primitive_part() const {
  if (is_zero()) return UPoly();
  Integer g = content();
  UPoly r = *this;
  for (auto& x : r.c_) x /= g;
  return r;
}

UPoly UPoly::compose_linear(const Integer& a, const Integer& b) const {
  // Horner: p(aX + b)
  UPoly lin(std::vector<Integer>{b, a});
  UPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * lin + UPoly::constant(*it);
  return acc;
}

UPoly UPoly::exact_divide(const UPoly& o) const {
  if (o.is_zero()) throw std::invalid_argument("exact_divide by zero");
  if (is_zero()) return UPoly();
  long dq = degree() - o.degree();
  if (dq < 0) throw std::invalid_argument("exact_divide: degree too small");
  std::vector<Integer> rem = c_;
  std::vector<Integer> q(dq + 1);
  for (long k = dq; k >= 0; --k) {
    Integer& top = rem[k + o.degree()];
    if (top % o.lc() != 0) throw std::invalid_argument("exact_divide: not divisible");
    q[k] = top / o.lc();
    if (q[k] != 0)
      for (long i = 0; i <= o.degree(); ++i) rem[k + i] -= q[k] * o.coeff(i);
  }
  for (const auto& x : rem)
    if (x != 0) throw std::invalid_argument("exact_divide: nonzero remainder");
  return UPoly(std::move(q));
}

bool UPoly::divides(const UPoly& o) const {
  if (is_zero()) return o.is_zero();
  if (o.is_zero()) return true;
  if (o.degree() < degree()) return false;
  // pseudo-division then check the scaled remainder vanishes
  UPoly r = pseudo_rem(o, *this);
  return r.is_zero();
}

std::string UPoly::to_text() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << (c_[i] > 0 ? " + " : " - ");
    else if (c_[i] < 0) os << "-";
    Integer a = abs(c_[i]);
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) {
      if (a != 1) os << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

UPoly pseudo_rem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("pseudo_rem by zero");
  long da = a.degree(), db = b.degree();
  if (da < db) return a;
  std::vector<Integer> r = a.coeffs();
  const Integer& lb = b.lc();
  for (long k = da; k >= db; --k) {
    Integer top = r[k];
    for (auto& x : r) x *= lb;
    if (top != 0)
      for (long i = 0; i <= db; ++i) r[k - db + i] -= top * b.coeff(i);
  }
  r.resize(db > 0 ? db : 0);
  return UPoly(std::move(r));
}

namespace {

// Subresultant PRS; returns the full remainder chain starting a, b.
// (Cohen, A Course in Computational Algebraic Number Theory, Alg. 3.3.7.)
struct PRSResult {
  std::vector<UPoly> chain;
  Integer resultant;  // meaningful when requested and deg gcd == 0
  bool res_valid = false;
};

PRSResult subresultant_prs(UPoly A, UPoly B, bool want_resultant) {
  PRSResult out;
  if (A.degree() < B.degree()) {
    long s = (A.degree() & 1) && (B.degree() & 1) ? -1 : 1;
    PRSResult sw = subresultant_prs(B, A, want_resultant);
    if (sw.res_valid && s < 0) sw.resultant = -sw.resultant;
    return sw;
  }
  out.chain.push_back(A);
  out.chain.push_back(B);
  Integer g = 1, h = 1;
  int sign = 1;
  while (true) {
    long da = A.degree(), db = B.degree();
    long delta = da - db;
    if ((da & 1) && (db & 1)) sign = -sign;
    UPoly R = pseudo_rem(A, B);
    if (R.is_zero()) {
      out.chain.push_back(R);
      return out;  // resultant is 0 unless deg B == 0
    }
    Integer denom = g;
    for (long i = 0; i < delta; ++i) denom *= h;
    std::vector<Integer> rc = R.coeffs();
    for (auto& x : rc) x /= denom;  // exact by subresultant theory
    R = UPoly(std::move(rc));
    A = B;
    B = R;
    g = A.lc();
    if (delta >= 1) {
      Integer hp = pow_integer(g, delta);
      for (long i = 0; i < delta - 1; ++i) hp /= h;
      h = hp;
    }  // delta == 0 leaves h unchanged
    out.chain.push_back(B);
    if (B.degree() <= 0) break;
  }
  if (want_resultant) {
    // finish: A has degree d >= 1, B degree 0 nonzero
    long d = A.degree();
    Integer num = pow_integer(B.lc(), d);
    for (long i = 0; i < d - 1; ++i) num /= h;
    out.resultant = sign > 0 ? num : -num;
    out.res_valid = true;
  }
  return out;
}

}  // namespace

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero()) return UPoly();
  if (a.is_zero()) return b.lc() < 0 ? (-b).primitive_part() : b.primitive_part();
  if (b.is_zero()) return a.lc() < 0 ? (-a).primitive_part() : a.primitive_part();
  Integer cont = gcd(a.content(), b.content());
  UPoly A = a.primitive_part(), B = b.primitive_part();
  if (A.degree() == 0 || B.degree() == 0) return UPoly::constant(cont);
  PRSResult prs = subresultant_prs(A, B, false);
  // last nonzero entry of the chain
  UPoly g;
  for (auto it = prs.chain.rbegin(); it != prs.chain.rend(); ++it)
    if (!it->is_zero()) {
      g = *it;
      break;
    }
  if (g.degree() == 0) return UPoly::constant(cont);
  g = g.primitive_part();
  if (g.lc() < 0) g = -g;
  return g * cont;
}

Integer upoly_resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0) return pow_integer(a.lc(), b.degree());
  if (b.degree() == 0) return pow_integer(b.lc(), a.degree());
  // Res(a,b) = cont(a)^deg b * cont(b)^deg a * Res(pp a, pp b)
  Integer ca = a.content(), cb = b.content();
  UPoly A = a.primitive_part(), B = b.primitive_part();
  PRSResult prs = subresultant_prs(A, B, true);
  // a zero remainder at positive degree means a common factor: resultant 0
  Integer res = prs.res_valid ? prs.resultant : Integer(0);
  return res * pow_integer(ca, b.degree()) * pow_integer(cb, a.degree());
}

UPoly squarefree_part(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_part of zero");
  if (p.degree() == 0) return UPoly::constant(1);
  UPoly g = upoly_gcd(p, p.derivative());
  UPoly sf = g.degree() == 0 ? p : p.primitive_part().exact_divide(g);
  sf = sf.primitive_part();
  if (sf.lc() < 0) sf = -sf;
  return sf;
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree_decomposition of zero");
  std::vector<UPoly> out;
  UPoly w = p.primitive_part();
  if (w.lc() < 0) w = -w;
  if (w.degree() == 0) return out;
  UPoly g = upoly_gcd(w, w.derivative());
  if (g.degree() == 0) {
    out.push_back(w);
    return out;
  }
  UPoly y = w.derivative();
  {
    // divisions are exact over Z by Gauss's lemma (g primitive)
    UPoly pw = w.exact_divide(g);
    y = y.exact_divide(g);
    w = pw;
  }
  UPoly z = y - w.derivative();
  while (true) {
    UPoly gi = upoly_gcd(w, z);
    if (gi.lc() < 0) gi = -gi;
    out.push_back(gi.degree() > 0 ? gi : UPoly::constant(1));
    if (out.back().degree() == 0) out.back() = UPoly();  // no factor at this multiplicity
    w = gi.degree() > 0 ? w.exact_divide(gi) : w;
    if (w.degree() == 0) break;
    y = gi.degree() > 0 ? z.exact_divide(gi) : z;
    z = y - w.derivative();
  }
  // normalize: represent "no factor" as the empty polynomial; strip trailing
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

unsigned root_multiplicity(const UPoly& p, const Rational& root) {
  if (p.is_zero()) throw std::invalid_argument("root_multiplicity of zero polynomial");
  if (p.eval(root) != 0) return 0;
  // divide by (den*X - num) over Q, exactly, as often as possible
  const Integer num = root.get_num(), den = root.get_den();
  std::vector<Rational> cur(p.coeffs().begin(), p.coeffs().end());
  unsigned mult = 0;
  while (cur.size() > 1) {
    // synthetic division by (den X - num): process from the top
    std::vector<Rational> q(cur.size() - 1);
    Rational carry = 0;
    for (std::size_t k = cur.size(); k-- > 1;) {
      Rational top = cur[k] + carry;
      q[k - 1] = top / den;
      carry = q[k - 1] * num;
    }
    if (cur[0] + carry != 0) break;  // nonzero remainder
    ++mult;
    cur = std::move(q);
  }
  return mult;
}

}  // namespace modfermat
