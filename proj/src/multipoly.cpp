#include "modfermat/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace modfermat {

MultiPoly::MultiPoly(std::vector<std::string> vars,
                     std::vector<std::pair<std::vector<unsigned>, Integer>> terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {
  for (const auto& [e, c] : terms_)
    if (e.size() != vars_.size())
      throw std::invalid_argument("MultiPoly: exponent arity mismatch");
  normalize();
}

void MultiPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<std::vector<unsigned>, Integer>> merged;
  for (auto& [e, c] : terms_) {
    if (!merged.empty() && merged.back().first == e)
      merged.back().second += c;
    else
      merged.emplace_back(std::move(e), std::move(c));
  }
  terms_.clear();
  for (auto& [e, c] : merged)
    if (c != 0) terms_.emplace_back(std::move(e), std::move(c));
}

Rational MultiPoly::eval(const std::vector<Rational>& point) const {
  if (point.size() != vars_.size())
    throw std::invalid_argument("MultiPoly::eval: arity mismatch");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational term(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

UPoly MultiPoly::specialize_all_but(std::size_t free_index,
                                    const std::vector<Rational>& values) const {
  if (values.size() != vars_.size())
    throw std::invalid_argument("MultiPoly::specialize_all_but: arity mismatch");
  long dfree = 0;
  for (const auto& [e, c] : terms_)
    dfree = std::max(dfree, static_cast<long>(e[free_index]));
  std::vector<Rational> out(dfree + 1, Rational(0));
  for (const auto& [e, c] : terms_) {
    Rational term(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == free_index) continue;
      for (unsigned k = 0; k < e[i]; ++k) term *= values[i];
    }
    out[e[free_index]] += term;
  }
  Integer den = 1;
  for (const auto& r : out) den = den / gcd(den, r.get_den()) * r.get_den();
  std::vector<Integer> cleared(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Rational scaled = out[i] * den;
    cleared[i] = scaled.get_num();
  }
  return UPoly(std::move(cleared));
}

MultiPoly MultiPoly::from_bipoly(const BiPoly& p, const std::string& x,
                                 const std::string& y) {
  std::vector<std::pair<std::vector<unsigned>, Integer>> terms;
  for (const auto& [e, c] : p.terms())
    terms.emplace_back(std::vector<unsigned>{e.first, e.second}, c);
  return MultiPoly({x, y}, std::move(terms));
}

MultiPoly MultiPoly::from_upoly(const UPoly& p, const std::string& x) {
  std::vector<std::pair<std::vector<unsigned>, Integer>> terms;
  for (long i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0)
      terms.emplace_back(std::vector<unsigned>{static_cast<unsigned>(i)},
                         p.coeff(i));
  return MultiPoly({x}, std::move(terms));
}

BiPoly MultiPoly::to_bipoly() const {
  if (arity() != 2) throw std::invalid_argument("to_bipoly: arity != 2");
  BiPoly p;
  for (const auto& [e, c] : terms_) p.set(e[0], e[1], c);
  return p;
}

UPoly MultiPoly::to_upoly() const {
  if (arity() != 1) throw std::invalid_argument("to_upoly: arity != 1");
  long d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[0]));
  std::vector<Integer> cs(d + 1, Integer(0));
  for (const auto& [e, c] : terms_) cs[e[0]] = c;
  return UPoly(std::move(cs));
}

std::string poly_to_text(const MultiPoly& p) {
  std::ostringstream os;
  os << "POLY ";
  for (std::size_t i = 0; i < p.vars().size(); ++i) {
    if (i) os << ",";
    os << p.vars()[i];
  }
  os << " " << p.terms().size() << "\n";
  for (const auto& [e, c] : p.terms()) {
    for (unsigned x : e) os << x << " ";
    os << c.get_str() << "\n";
  }
  return os.str();
}

MultiPoly poly_from_stream(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    break;
  }
  std::istringstream head(line);
  std::string tag, vars_csv;
  std::size_t nterms = 0;
  head >> tag >> vars_csv >> nterms;
  if (tag != "POLY" || head.fail())
    throw std::invalid_argument("polynomial text: bad header line: '" + line + "'");
  std::vector<std::string> vars;
  std::istringstream vs(vars_csv);
  std::string v;
  while (std::getline(vs, v, ',')) {
    if (v.empty()) throw std::invalid_argument("polynomial text: empty variable name");
    vars.push_back(v);
  }
  if (vars.empty()) throw std::invalid_argument("polynomial text: no variables");
  std::vector<std::pair<std::vector<unsigned>, Integer>> terms;
  while (terms.size() < nterms) {
    if (!std::getline(in, line))
      throw std::invalid_argument("polynomial text: truncated term list");
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ts(line);
    std::vector<unsigned> e(vars.size());
    for (auto& x : e)
      if (!(ts >> x)) throw std::invalid_argument("polynomial text: bad exponent");
    std::string coeff;
    if (!(ts >> coeff)) throw std::invalid_argument("polynomial text: missing coefficient");
    terms.emplace_back(std::move(e), parse_integer(coeff));
  }
  return MultiPoly(std::move(vars), std::move(terms));
}

MultiPoly poly_from_text(const std::string& text) {
  std::istringstream in(text);
  return poly_from_stream(in);
}

}  // namespace modfermat
