#include "modfermat/numbers.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace modfermat {

Integer height(const Rational& r) {
  Integer num = abs(r.get_num());
  const Integer& den = r.get_den();
  return num > den ? num : den;
}

bool rational_less(const Rational& a, const Rational& b) {
  Integer ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  if (a.get_num() != b.get_num()) return a.get_num() < b.get_num();
  return a.get_den() < b.get_den();
}

namespace {

bool valid_decimal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Integer parse_integer(const std::string& text) {
  if (!valid_decimal(text))
    throw std::invalid_argument("not a decimal integer: '" + text + "'");
  return Integer(text, 10);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  Integer num, den;
  if (slash == std::string::npos) {
    num = parse_integer(text);
    den = 1;
  } else {
    num = parse_integer(text.substr(0, slash));
    den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer pow_integer(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

std::optional<Integer> exact_root(const Integer& n, unsigned long p) {
  if (p == 0) throw std::invalid_argument("exact_root: p must be >= 1");
  if (n == 0) return Integer(0);
  if (n < 0 && p % 2 == 0) return std::nullopt;
  Integer root;
  int exactp = mpz_root(root.get_mpz_t(), n.get_mpz_t(), p);
  if (exactp) return root;
  return std::nullopt;
}

bool is_prime(const Integer& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Integer pollard_brent(const Integer& n) {
  // Brent's cycle variant; n odd composite, no factor below the trial bound.
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, r = 1, q = 1, g = 1, x, ys;
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        Integer lim = Integer(r - k);
        if (lim > 128) lim = 128;
        for (Integer i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += 128;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      }
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::vector<std::pair<Integer, unsigned>>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.emplace_back(n, 1);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<std::pair<Integer, unsigned>> out;
  Integer m = n;
  for (unsigned long p = 2; p <= 1000000ul && Integer(p) * p <= m; p = (p == 2 ? 3 : p + 2)) {
    if (m % p == 0) {
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      out.emplace_back(Integer(p), e);
    }
  }
  if (m > 1) {
    std::vector<std::pair<Integer, unsigned>> rest;
    factor_into(m, rest);
    std::sort(rest.begin(), rest.end());
    for (std::size_t i = 0; i < rest.size();) {
      std::size_t j = i;
      unsigned e = 0;
      while (j < rest.size() && rest[j].first == rest[i].first) e += rest[j++].second;
      out.emplace_back(rest[i].first, e);
      i = j;
    }
  }
  return out;
}

Integer radical_of(const Integer& n) {
  if (n < 1) throw std::invalid_argument("radical: n must be >= 1");
  Integer rad = 1;
  for (const auto& [p, e] : factorize(n)) rad *= p;
  return rad;
}

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  unsigned long m = n;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

bool is_squarefree(unsigned long n) {
  if (n == 0) return false;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
    while (n % p == 0) n /= p;
  }
  return true;
}

std::vector<unsigned long> primes_from(unsigned long from, std::size_t count) {
  std::vector<unsigned long> out;
  unsigned long n = std::max<unsigned long>(from, 2);
  while (out.size() < count) {
    if (mpz_probab_prime_p(Integer(n).get_mpz_t(), 30)) out.push_back(n);
    ++n;
  }
  return out;
}

}  // namespace modfermat
