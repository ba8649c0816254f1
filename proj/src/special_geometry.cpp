#include "modfermat/special_geometry.hpp"
#include <functional>
#include <map>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "modfermat/class_invariants.hpp"

namespace modfermat {

std::optional<unsigned> hecke_related(PhiCache& phi, const Rational& x,
                                      const Rational& y, unsigned Nmax) {
  for (unsigned N = 1; N <= Nmax; ++N) {
    if (N == 1) {
      if (x == y) return 1;
      continue;
    }
    if (phi.get(N).poly.eval(x, y) == 0) return N;
  }
  return std::nullopt;
}

SpecialStructure smallest_special(PhiCache& phi, const std::vector<Rational>& point,
                                  unsigned Nmax, long dbound) {
  const std::size_t k = point.size();
  if (k == 0) throw std::invalid_argument("smallest_special: empty point");
  SpecialStructure out;
  out.k = static_cast<unsigned>(k);

  std::vector<bool> constant(k, false);
  std::vector<bool> via_link(k, false);
  std::vector<std::optional<long>> disc(k);
  for (std::size_t i = 0; i < k; ++i) {
    disc[i] = is_special(point[i], dbound);
    constant[i] = disc[i].has_value();
  }

  // all pairwise Hecke relations within the bound
  std::vector<StructLink> all_links;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (auto N = hecke_related(phi, point[i], point[j], Nmax))
        all_links.push_back({i, j, *N});

  // fold: a non-constant coordinate linked to a special constant is itself
  // special (possibly with discriminant beyond the bound)
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& ln : all_links) {
      if (constant[ln.lo] != constant[ln.hi]) {
        std::size_t target = constant[ln.lo] ? ln.hi : ln.lo;
        constant[target] = true;
        via_link[target] = true;
        if (!disc[target]) disc[target] = is_special(point[target], dbound);
        changed = true;
      }
    }
  }

  // union-find over the remaining non-constant coordinates
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& ln : all_links)
    if (!constant[ln.lo] && !constant[ln.hi])
      parent[find(ln.lo)] = find(ln.hi);

  for (std::size_t i = 0; i < k; ++i) {
    if (!constant[i]) continue;
    out.constants.push_back({i, point[i], disc[i], via_link[i]});
  }
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < k; ++i)
    if (!constant[i]) classes[find(i)].push_back(i);
  for (auto& [root, members] : classes) {
    std::sort(members.begin(), members.end());
    out.classes.push_back(members);
  }
  std::sort(out.classes.begin(), out.classes.end());

  // keep links among non-constant coordinates (class labels) and the links
  // that caused folding, for the record
  for (const auto& ln : all_links) out.links.push_back(ln);

  std::ostringstream caveat;
  caveat << "relations beyond nmax=" << Nmax << " or |D|>" << dbound
         << " are not visible";
  out.caveats.push_back(caveat.str());
  return out;
}

DimComplexity dim_and_complexity(const SpecialStructure& T) {
  DimComplexity out;
  out.dimension = T.dimension();
  long delta = 1;  // ambient convention
  for (const auto& c : T.constants)
    if (c.disc) delta = std::max(delta, -*c.disc);  // |D| with D < 0
  for (const auto& ln : T.links)
    delta = std::max(delta, static_cast<long>(ln.level));
  out.complexity = delta;
  return out;
}

bool is_atypical(long dimA, long dimV, long dimT, long k) {
  if (k < 1 || dimA < 0 || dimA > dimV || dimV > k || dimT < 0 || dimT > k)
    throw std::invalid_argument("is_atypical: inconsistent dimensions");
  return dimA > dimV + dimT - k;
}

bool is_atypical(long dimA, long dimV, const SpecialStructure& T, long k) {
  if (T.k != static_cast<unsigned>(k))
    throw std::invalid_argument("is_atypical: structure ambient mismatch");
  return is_atypical(dimA, dimV, static_cast<long>(T.dimension()), k);
}

std::string structure_to_text(const SpecialStructure& s) {
  std::ostringstream os;
  os << "STRUCT v1\n";
  os << "K " << s.k << "\n";
  for (const auto& c : s.constants) {
    os << "CONST " << (c.coord + 1) << " " << to_string(c.value) << " ";
    if (c.disc)
      os << *c.disc;
    else
      os << "-";
    if (c.via_link) os << " via-link";
    os << "\n";
  }
  for (const auto& cl : s.classes) {
    os << "CLASS";
    for (std::size_t i : cl) os << " " << (i + 1);
    os << "\n";
  }
  for (const auto& ln : s.links)
    os << "LINK " << (ln.lo + 1) << " " << (ln.hi + 1) << " " << ln.level << "\n";
  for (const auto& cv : s.caveats) os << "CAVEAT " << cv << "\n";
  os << "END\n";
  return os.str();
}

SpecialStructure structure_from_text(const std::string& text) {
  SpecialStructure s;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false, saw_end = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!saw_header) {
      std::string ver;
      ls >> ver;
      if (tag != "STRUCT" || ver != "v1")
        throw std::invalid_argument("structure text: bad header");
      saw_header = true;
      continue;
    }
    if (tag == "K") {
      ls >> s.k;
      if (ls.fail() || s.k == 0) throw std::invalid_argument("structure text: bad K");
    } else if (tag == "CONST") {
      StructConstant c;
      std::size_t coord1;
      std::string value, d, extra;
      ls >> coord1 >> value >> d;
      if (ls.fail()) throw std::invalid_argument("structure text: bad CONST");
      c.coord = coord1 - 1;
      c.value = parse_rational(value);
      if (d != "-") c.disc = std::stol(d);
      if (ls >> extra) c.via_link = (extra == "via-link");
      s.constants.push_back(std::move(c));
    } else if (tag == "CLASS") {
      std::vector<std::size_t> members;
      std::size_t m;
      while (ls >> m) members.push_back(m - 1);
      if (members.empty()) throw std::invalid_argument("structure text: empty CLASS");
      s.classes.push_back(std::move(members));
    } else if (tag == "LINK") {
      StructLink ln;
      std::size_t a, b;
      ls >> a >> b >> ln.level;
      if (ls.fail()) throw std::invalid_argument("structure text: bad LINK");
      ln.lo = a - 1;
      ln.hi = b - 1;
      s.links.push_back(ln);
    } else if (tag == "CAVEAT") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      s.caveats.push_back(rest);
    } else if (tag == "END") {
      saw_end = true;
      break;
    } else {
      throw std::invalid_argument("structure text: unknown tag '" + tag + "'");
    }
  }
  if (!saw_header || !saw_end)
    throw std::invalid_argument("structure text: missing STRUCT/END");
  if (s.k == 0) throw std::invalid_argument("structure text: missing K");
  auto check_coord = [&](std::size_t c) {
    if (c >= s.k)
      throw std::invalid_argument("structure text: coordinate out of range");
  };
  for (const auto& c : s.constants) check_coord(c.coord);
  for (const auto& cl : s.classes)
    for (std::size_t c : cl) check_coord(c);
  for (const auto& ln : s.links) {
    check_coord(ln.lo);
    check_coord(ln.hi);
  }
  return s;
}

}  // namespace modfermat
