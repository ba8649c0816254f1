#include "modfermat/cli.hpp"
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "modfermat/fermat_system.hpp"
#include "modfermat/multipoly.hpp"
#include "modfermat/multiplicative.hpp"
#include "modfermat/special_geometry.hpp"
#include "modfermat/uhp.hpp"

namespace modfermat {

const char* const kVersion = "1.0.0";

Session::Session(Config cfg) { reconfigure(std::move(cfg)); }

void Session::reconfigure(Config cfg) {
  cfg_ = std::move(cfg);
  phi_ = std::make_unique<PhiCache>(cfg_.cache_dir, cfg_.phi_max_level);
  hd_ = std::make_unique<HdCache>(cfg_.cache_dir, cfg_.hilbert_max_disc);
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- small formatting helpers ------------------------------------------

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_opt_disc(const std::optional<long>& d) {
  return d ? std::to_string(*d) : "-";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// aligned table: rows of cells, first row is the header
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return "";
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << "  ";
      os << row[i];
      if (i + 1 < row.size())
        os << std::string(width[i] - row[i].size(), ' ');
    }
    os << "\n";
  }
  return os.str();
}

std::string render_csv(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      bool quote = row[i].find_first_of(",\" ") != std::string::npos;
      if (quote) {
        os << '"';
        for (char c : row[i]) {
          if (c == '"') os << '"';
          os << c;
        }
        os << '"';
      } else {
        os << row[i];
      }
    }
    os << "\n";
  }
  return os.str();
}

std::string render_records(const std::string& type,
                           const std::vector<std::vector<std::string>>& rows) {
  // rows[0] is the header (field names)
  std::ostringstream os;
  os << "schema modfermat-records v1\n";
  for (std::size_t r = 1; r < rows.size(); ++r) {
    os << "record type=" << type;
    for (std::size_t i = 0; i < rows[r].size(); ++i)
      os << " " << rows[0][i] << "=" << rows[r][i];
    os << "\n";
  }
  return os.str();
}

std::string render(const Config& cfg, const std::string& record_type,
                   const std::vector<std::vector<std::string>>& rows) {
  if (cfg.format == "csv") return render_csv(rows);
  if (cfg.format == "records") return render_records(record_type, rows);
  return render_table(rows);
}

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;  // --key value / --key=value
  std::set<std::string> switches;              // bare --flag

  const std::string& pos(std::size_t i, const char* what) const {
    if (i >= positional.size())
      throw UsageError(std::string("missing argument: ") + what);
    return positional[i];
  }
  std::optional<std::string> opt(const std::string& key) const {
    auto it = options.find(key);
    if (it == options.end()) return std::nullopt;
    return it->second;
  }
};

long parse_long_arg(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("bad integer for ") + what + ": '" + s + "'");
  }
}

unsigned parse_level_arg(const std::string& s, const char* what) {
  long v = parse_long_arg(s, what);
  if (v < 1) throw UsageError(std::string(what) + " must be >= 1");
  return static_cast<unsigned>(v);
}

Rational parse_rational_arg(const std::string& s, const char* what) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad rational for ") + what + ": '" + s + "'");
  }
}

long parse_disc_arg(const std::string& s) {
  long v = parse_long_arg(s, "discriminant");
  if (v > 0) v = -v;  // accept |D| as a convenience
  if (!is_valid_discriminant(v))
    throw UsageError("not an imaginary quadratic discriminant: " + s);
  return v;
}

// ---- subcommand handlers -------------------------------------------------

using Handler = std::string (*)(Session&, const Args&, int&);

std::string cmd_phi(Session& s, const Args& a, int&) {
  unsigned N = parse_level_arg(a.pos(0, "N"), "N");
  const ModularPolynomial& phi = s.phi().get(N);
  return poly_to_text(MultiPoly::from_bipoly(phi.poly, "X", "Y"));
}

std::string cmd_phi_verify(Session& s, const Args& a, int&) {
  unsigned N = parse_level_arg(a.pos(0, "N"), "N");
  unsigned trials = 5;
  if (auto t = a.opt("trials")) trials = parse_level_arg(*t, "trials");
  const ModularPolynomial& phi = s.phi().get(N);
  PhiVerifyReport rep =
      verify_phi(phi, trials, s.config().tolerance, s.config().float_precision_bits);
  std::vector<std::vector<std::string>> rows{{"check", "result", "detail"}};
  for (const auto& c : rep.checks)
    rows.push_back({c.name, c.pass ? "PASS" : "FAIL", c.detail});
  return render(s.config(), "phi-check", rows);
}

std::string cmd_hilbert(Session& s, const Args& a, int&) {
  long D = parse_disc_arg(a.pos(0, "D"));
  const ClassPolynomial& hd = s.hd().get(D);
  return poly_to_text(MultiPoly::from_upoly(hd.poly, "X"));
}

std::string cmd_classnum(Session& s, const Args& a, int&) {
  long D = parse_disc_arg(a.pos(0, "D"));
  auto forms = reduced_forms(D);
  std::vector<std::vector<std::string>> rows{{"D", "h", "forms"}};
  std::vector<std::string> fs;
  for (const auto& f : forms)
    fs.push_back("(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," +
                 std::to_string(f.c) + ")");
  rows.push_back({std::to_string(D), std::to_string(forms.size()), join(fs, " ")});
  return render(s.config(), "classnum", rows);
}

std::string cmd_special(Session& s, const Args& a, int&) {
  long dbound = s.config().hilbert_max_disc;
  if (auto d = a.opt("dbound")) dbound = parse_long_arg(*d, "dbound");
  if (dbound < 3 || dbound > s.config().hilbert_max_disc)
    throw UsageError("dbound must lie in [3, hilbert_max_disc]");
  if (a.switches.count("list") || a.opt("list")) {
    auto list = rational_singular_moduli(dbound);
    std::vector<std::vector<std::string>> rows{{"D", "j"}};
    for (const auto& [d, j] : list)
      rows.push_back({std::to_string(d), j.get_str()});
    return render(s.config(), "singular-modulus", rows);
  }
  Rational x = parse_rational_arg(a.pos(0, "x"), "x");
  auto D = is_special(x, dbound);
  std::vector<std::vector<std::string>> rows{{"x", "special", "D"}};
  rows.push_back({to_string(x), D ? "yes" : "no", fmt_opt_disc(D)});
  return render(s.config(), "special", rows);
}

std::string cmd_kuhne(Session& s, const Args& a, int& exit_code) {
  long dbound = parse_long_arg(a.pos(0, "Dbound"), "Dbound");
  if (dbound < 3) throw UsageError("Dbound must be >= 3");
  KuhneReport rep = kuhne_check(dbound, effective_threads(s.config()));
  std::ostringstream os;
  std::vector<std::vector<std::string>> rows{
      {"dbound", "discriminants", "pairs_checked", "violations", "result"}};
  rows.push_back({std::to_string(rep.dbound), std::to_string(rep.discriminants),
                  std::to_string(rep.pairs_checked),
                  std::to_string(rep.violations.size()),
                  rep.all_pass() ? "PASS" : "FAIL"});
  os << render(s.config(), "kuhne", rows);
  for (const auto& [d1, d2] : rep.violations)
    os << "violation: D1=" << d1 << " D2=" << d2 << "\n";
  if (!rep.all_pass()) exit_code = 2;
  return os.str();
}

std::string cmd_fermat_curve(Session& s, const Args& a, int&) {
  unsigned N = parse_level_arg(a.pos(0, "N"), "N");
  unsigned M = parse_level_arg(a.pos(1, "M"), "M");
  BiPoly v = fermat_curve(s.phi(), N, M);
  return poly_to_text(MultiPoly::from_bipoly(v, "x", "y"));
}

std::vector<std::vector<std::string>> solution_rows(
    const std::vector<SolutionRecord>& records) {
  std::vector<std::vector<std::string>> rows{{"N", "M", "x", "y", "u", "v",
                                              "x_special", "y_special", "u_special",
                                              "v_special"}};
  for (const auto& r : records)
    rows.push_back({std::to_string(r.N), std::to_string(r.M), to_string(r.x),
                    to_string(r.y), to_string(r.u), to_string(r.v),
                    fmt_opt_disc(r.x_special), fmt_opt_disc(r.y_special),
                    fmt_opt_disc(r.u_special), fmt_opt_disc(r.v_special)});
  return rows;
}

std::string cmd_fermat_search(Session& s, const Args& a, int&) {
  unsigned Nmax = parse_level_arg(a.pos(0, "Nmax"), "Nmax");
  unsigned Mmax = parse_level_arg(a.pos(1, "Mmax"), "Mmax");
  long H = parse_long_arg(a.pos(2, "H"), "H");
  if (H < 1) throw UsageError("H must be >= 1");
  auto records =
      search_solutions(s.phi(), Nmax, Mmax, H, s.config().hilbert_max_disc);
  std::ostringstream os;
  os << render(s.config(), "solution", solution_rows(records));
  os << "total " << records.size() << "\n";
  return os.str();
}

std::string cmd_sgh_probe(Session& s, const Args& a, int&) {
  Rational x = parse_rational_arg(a.pos(0, "x"), "x");
  unsigned N = parse_level_arg(a.pos(1, "N"), "N");
  std::size_t primes = 5;
  if (auto p = a.opt("primes")) primes = parse_level_arg(*p, "primes");
  bool allow_special = a.switches.count("allow-special") > 0;
  SGHProbeResult r =
      sgh_probe(s.phi(), x, N, primes, s.config().hilbert_max_disc, allow_special);
  std::ostringstream os;
  std::vector<std::vector<std::string>> rows{
      {"x", "N", "deg", "has_rational_root", "roots", "certified_min_degree",
       "najman_threshold", "meets_najman"}};
  std::vector<std::string> roots;
  for (const auto& rt : r.roots) roots.push_back(to_string(rt));
  rows.push_back({to_string(r.x), std::to_string(r.N),
                  std::to_string(r.specialized_degree),
                  r.has_rational_root ? "yes" : "no", join(roots, " "),
                  std::to_string(r.certified_min_degree),
                  std::to_string(r.najman_threshold),
                  r.meets_najman ? "yes" : "no"});
  os << render(s.config(), "sgh-probe", rows);
  for (const auto& [p, pattern] : r.pattern.prime_patterns) {
    os << "pattern p=" << p << ":";
    for (long d : pattern) os << " " << d;
    os << "\n";
  }
  if (!r.pattern.bad_primes.empty()) {
    os << "bad primes skipped:";
    for (uint64_t p : r.pattern.bad_primes) os << " " << p;
    os << "\n";
  }
  return os.str();
}

std::string cmd_gen_search(Session& s, const Args& a, int&) {
  std::string polyfile = a.pos(0, "polyfile");
  unsigned k = parse_level_arg(a.pos(1, "k"), "k");
  unsigned Nmax = parse_level_arg(a.pos(2, "Nmax"), "Nmax");
  long H = parse_long_arg(a.pos(3, "H"), "H");
  std::ifstream in(polyfile);
  if (!in) throw UsageError("cannot open polynomial file '" + polyfile + "'");
  MultiPoly V = poly_from_stream(in);
  auto sols = generalized_search(s.phi(), V, k, Nmax, H);
  std::vector<std::vector<std::string>> rows{
      {"max_level", "coords", "witness_bases", "witness_levels"}};
  for (const auto& sol : sols) {
    std::vector<std::string> cs, wb, wl;
    for (const auto& c : sol.coords) cs.push_back(to_string(c));
    for (const auto& w : sol.witnesses) {
      wb.push_back(to_string(w.base));
      wl.push_back(std::to_string(w.level));
    }
    rows.push_back({std::to_string(sol.max_level), join(cs, " "), join(wb, " "),
                    join(wl, " ")});
  }
  std::ostringstream os;
  os << render(s.config(), "gen-solution", rows);
  os << "total " << sols.size() << "\n";
  return os.str();
}

std::string cmd_hecke(Session& s, const Args& a, int&) {
  Rational x = parse_rational_arg(a.pos(0, "x"), "x");
  Rational y = parse_rational_arg(a.pos(1, "y"), "y");
  unsigned Nmax = parse_level_arg(a.pos(2, "Nmax"), "Nmax");
  auto N = hecke_related(s.phi(), x, y, Nmax);
  std::vector<std::vector<std::string>> rows{{"x", "y", "related", "N"}};
  rows.push_back({to_string(x), to_string(y), N ? "yes" : "no",
                  N ? std::to_string(*N) : "-"});
  return render(s.config(), "hecke", rows);
}

std::string cmd_classify(Session& s, const Args& a, int&) {
  std::string point_text = a.pos(0, "point");
  std::vector<Rational> point;
  std::istringstream ps(point_text);
  std::string tok;
  while (std::getline(ps, tok, ','))
    point.push_back(parse_rational_arg(tok, "coordinate"));
  if (point.empty()) throw UsageError("empty point");
  unsigned nmax = 10;
  long dbound = s.config().hilbert_max_disc;
  if (auto n = a.opt("nmax")) nmax = parse_level_arg(*n, "nmax");
  if (auto d = a.opt("dbound")) dbound = parse_long_arg(*d, "dbound");
  if (nmax > s.config().phi_max_level)
    throw UsageError("nmax exceeds phi_max_level");
  SpecialStructure st = smallest_special(s.phi(), point, nmax, dbound);
  DimComplexity dc = dim_and_complexity(st);
  std::ostringstream os;
  os << structure_to_text(st);
  os << "dimension " << dc.dimension << "\n";
  os << "complexity " << dc.complexity << "\n";
  return os.str();
}

std::string cmd_atypical(Session& s, const Args& a, int&) {
  long dimA = parse_long_arg(a.pos(0, "dimA"), "dimA");
  long dimV = parse_long_arg(a.pos(1, "dimV"), "dimV");
  std::string structfile = a.pos(2, "structfile");
  long k = parse_long_arg(a.pos(3, "k"), "k");
  std::ifstream in(structfile);
  if (!in) throw UsageError("cannot open structure file '" + structfile + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  SpecialStructure st = structure_from_text(buf.str());
  bool atypical = is_atypical(dimA, dimV, st, k);
  DimComplexity dc = dim_and_complexity(st);
  std::vector<std::vector<std::string>> rows{
      {"dimA", "dimV", "dimT", "k", "complexity", "atypical"}};
  rows.push_back({std::to_string(dimA), std::to_string(dimV),
                  std::to_string(dc.dimension), std::to_string(k),
                  std::to_string(dc.complexity), atypical ? "yes" : "no"});
  return render(s.config(), "atypical", rows);
}

std::string cmd_abc(Session& s, const Args& a, int&) {
  Integer x = parse_integer(a.pos(0, "a"));
  Integer y = parse_integer(a.pos(1, "b"));
  AbcTriple t = abc_quality(x, y);
  std::vector<std::vector<std::string>> rows{{"a", "b", "c", "radical", "quality"}};
  rows.push_back({t.a.get_str(), t.b.get_str(), t.c.get_str(), t.radical.get_str(),
                  fmt_double(t.quality)});
  return render(s.config(), "abc", rows);
}

std::string cmd_fml_search(Session& s, const Args& a, int&) {
  SUnitGroup g;
  if (auto p = a.opt("primes")) {
    std::istringstream ps(*p);
    std::string tok;
    while (std::getline(ps, tok, ','))
      g.primes.push_back(parse_level_arg(tok, "prime"));
  }
  unsigned nmin = 4, exp_max = 5, sunit_exp = 3;
  long heightb = 3;
  if (auto v = a.opt("nmin")) nmin = parse_level_arg(*v, "nmin");
  if (auto v = a.opt("exp-max")) exp_max = parse_level_arg(*v, "exp-max");
  if (auto v = a.opt("height")) heightb = parse_long_arg(*v, "height");
  if (auto v = a.opt("sunit-exp")) sunit_exp = parse_level_arg(*v, "sunit-exp");
  auto sols = fml_search(g, nmin, exp_max, heightb, sunit_exp);
  std::vector<std::vector<std::string>> rows{
      {"s", "x", "n", "t", "y", "m", "S", "A", "T", "C", "U", "B", "quality"}};
  for (const auto& sol : sols)
    rows.push_back({to_string(sol.s), to_string(sol.x), std::to_string(sol.n),
                    to_string(sol.t), to_string(sol.y), std::to_string(sol.m),
                    sol.S.get_str(), sol.A.get_str(), sol.T.get_str(),
                    sol.C.get_str(), sol.U.get_str(), sol.B.get_str(),
                    sol.abc.c == 0 ? "-" : fmt_double(sol.abc.quality)});
  std::ostringstream os;
  os << render(s.config(), "fml-solution", rows);
  os << "total " << sols.size() << "\n";
  return os.str();
}

std::string cmd_pure_eq(Session& s, const Args& a, int&) {
  Rational c = parse_rational_arg(a.pos(0, "c"), "c");
  unsigned long n = parse_level_arg(a.pos(1, "n"), "n");
  Reducibility r = pure_equation_reducible(c, n);
  std::vector<std::vector<std::string>> rows{{"c", "n", "reducible", "reason"}};
  rows.push_back({to_string(c), std::to_string(n), r.reducible ? "yes" : "no",
                  r.reason});
  return render(s.config(), "pure-eq", rows);
}

std::string cmd_risman(Session& s, const Args& a, int&) {
  unsigned long n = parse_level_arg(a.pos(0, "n"), "n");
  RismanBound b = risman_order_bound(n);
  std::vector<std::vector<std::string>> rows{
      {"n", "h_min", "t", "ell", "sqrt_n"}};
  char sq[32];
  std::snprintf(sq, sizeof sq, "%.3f", std::sqrt(static_cast<double>(n)));
  rows.push_back({std::to_string(b.n), std::to_string(b.h_min), std::to_string(b.t),
                  std::to_string(b.ell), sq});
  return render(s.config(), "risman", rows);
}

std::string cmd_uhp(Session& s, const Args& a, int&) {
  const std::string& sub = a.pos(0, "uhp subcommand");
  const long prec = s.config().float_precision_bits;
  const int digits = 20;
  if (sub == "reduce") {
    double re = std::stod(a.pos(1, "re"));
    double im = std::stod(a.pos(2, "im"));
    if (!(im > 0)) throw UsageError("im must be positive");
    ReduceResult r = reduce_to_F(UHPoint{MpComplex(re, im, prec)});
    std::ostringstream os;
    os << "tau " << r.point.tau.re().str(digits) << " " << r.point.tau.im().str(digits)
       << "\n";
    os << "gamma " << r.gamma.a.get_str() << " " << r.gamma.b.get_str() << " "
       << r.gamma.c.get_str() << " " << r.gamma.d.get_str() << "\n";
    return os.str();
  }
  if (sub == "jval") {
    double re = std::stod(a.pos(1, "re"));
    double im = std::stod(a.pos(2, "im"));
    if (!(im > 0)) throw UsageError("im must be positive");
    JNumeric j = j_numeric(UHPoint{MpComplex(re, im, prec)}, prec);
    std::ostringstream os;
    os << "j " << j.value.re().str(digits) << " " << j.value.im().str(digits) << "\n";
    os << "tail_log2 " << fmt_double(j.tail_log2) << "\n";
    return os.str();
  }
  if (sub == "jinv") {
    double re = std::stod(a.pos(1, "re"));
    double im = a.positional.size() > 2 ? std::stod(a.pos(2, "im")) : 0.0;
    UHPoint t = j_inverse(MpComplex(re, im, prec), prec);
    std::ostringstream os;
    os << "tau " << t.tau.re().str(digits) << " " << t.tau.im().str(digits) << "\n";
    return os.str();
  }
  throw UsageError("unknown uhp subcommand '" + sub + "'");
}

std::string cmd_count_exp(Session& s, const Args& a, int&) {
  Rational x = parse_rational_arg(a.pos(0, "x"), "x");
  unsigned N = parse_level_arg(a.pos(1, "N"), "N");
  if (is_special(x, s.config().hilbert_max_disc) && !a.switches.count("allow-special"))
    throw std::invalid_argument("x is special; pass --allow-special to proceed");
  const BiPoly& phi = s.phi().get(N).poly;
  CountingReport rep = counting_experiment(x, N, s.config().float_precision_bits, phi,
                                           s.config().tolerance * 1000);
  std::vector<std::vector<std::string>> rows{
      {"a", "b", "d", "coset_value", "matched_root", "residual"}};
  const int digits = 12;
  for (const auto& m : rep.matches) {
    std::ostringstream cv, mr;
    cv << m.coset_value.re().str(digits);
    if (!m.coset_value.im().is_zero()) cv << "+" << m.coset_value.im().str(digits) << "i";
    mr << m.matched_root.re().str(digits);
    rows.push_back({std::to_string(m.rep.a), std::to_string(m.rep.b),
                    std::to_string(m.rep.d), cv.str(), mr.str(),
                    fmt_double(m.residual)});
  }
  std::ostringstream os;
  os << render(s.config(), "coset-match", rows);
  os << "height histogram:";
  for (const auto& [h, c] : rep.height_histogram) os << " " << h << ":" << c;
  os << "\n";
  os << "max residual " << fmt_double(rep.max_residual) << "\n";
  return os.str();
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"phi", cmd_phi},
      {"phi-verify", cmd_phi_verify},
      {"hilbert", cmd_hilbert},
      {"classnum", cmd_classnum},
      {"special", cmd_special},
      {"kuhne", cmd_kuhne},
      {"fermat-curve", cmd_fermat_curve},
      {"fermat-search", cmd_fermat_search},
      {"sgh-probe", cmd_sgh_probe},
      {"gen-search", cmd_gen_search},
      {"hecke", cmd_hecke},
      {"classify", cmd_classify},
      {"atypical", cmd_atypical},
      {"abc", cmd_abc},
      {"fml-search", cmd_fml_search},
      {"pure-eq", cmd_pure_eq},
      {"risman", cmd_risman},
      {"uhp", cmd_uhp},
      {"count-exp", cmd_count_exp},
  };
  return table;
}

bool looks_like_number(const std::string& s) {
  if (s.size() < 2 || s[0] != '-') return false;
  return std::isdigit(static_cast<unsigned char>(s[1]));
}

}  // namespace

std::string usage_text() {
  std::ostringstream os;
  os << "usage: modfermat [flags] <subcommand> [args]\n\n";
  os << "subcommands:\n";
  os << "  phi <N>                         modular polynomial Phi_N\n";
  os << "  phi-verify <N> [--trials k]     defining-identity checks for Phi_N\n";
  os << "  hilbert <D>                     Hilbert class polynomial H_D\n";
  os << "  classnum <D>                    reduced forms and class number\n";
  os << "  special <x> | --list            singular-modulus test / h=1 table\n";
  os << "  kuhne <Dbound>                  no-special-points check on u+v=1\n";
  os << "  fermat-curve <N> <M>            the curve V_{N,M}\n";
  os << "  fermat-search <Nmax> <Mmax> <H> rational solutions of the system\n";
  os << "  sgh-probe <x> <N>               degree probe of Phi_N(x, .)\n";
  os << "  gen-search <polyfile> <k> <Nmax> <H>  k-variate search\n";
  os << "  hecke <x> <y> <Nmax>            smallest Hecke relation level\n";
  os << "  classify <v1,v2,...>            smallest special structure of a point\n";
  os << "  atypical <dimA> <dimV> <structfile> <k>\n";
  os << "  abc <a> <b>                     abc triple and quality\n";
  os << "  fml-search [--primes p,q ...]   S-unit power-sum search\n";
  os << "  pure-eq <c> <n>                 reducibility of X^n - c over Q\n";
  os << "  risman <n>                      order-derived degree lower bound\n";
  os << "  uhp reduce|jval|jinv <re> <im>  upper-half-plane numerics\n";
  os << "  count-exp <x> <N>               conjugates-to-roots experiment\n\n";
  os << "flags: --config FILE --cache-dir DIR --format table|records|csv\n";
  os << "       --phi-max N --hilbert-max D --prec BITS --tol T --threads N\n";
  return os.str();
}

DispatchResult dispatch(Session& session, const std::vector<std::string>& argv) {
  DispatchResult result;
  Args args;
  Config cfg = session.config();
  bool cfg_changed = false;

  // global flags may appear anywhere; "-<digit>" is a positional value
  static const std::map<std::string, std::string> flag_to_key{
      {"cache-dir", "cache_dir"},     {"format", "format"},
      {"phi-max", "phi_max_level"},   {"hilbert-max", "hilbert_max_disc"},
      {"prec", "float_precision_bits"}, {"tol", "tolerance"},
      {"threads", "thread_count"},
  };
  static const std::set<std::string> bare_switches{"list", "allow-special"};
  static const std::set<std::string> local_options{"trials", "dbound", "nmax",
                                                   "primes", "nmin", "exp-max",
                                                   "height", "sunit-exp"};

  try {
    for (std::size_t i = 0; i < argv.size(); ++i) {
      const std::string& tok = argv[i];
      if (tok.rfind("--", 0) == 0) {
        std::string body = tok.substr(2);
        std::string key = body, value;
        bool has_value = false;
        auto eq = body.find('=');
        if (eq != std::string::npos) {
          key = body.substr(0, eq);
          value = body.substr(eq + 1);
          has_value = true;
        }
        if (bare_switches.count(key) && !has_value) {
          args.switches.insert(key);
          continue;
        }
        if (!has_value) {
          if (i + 1 >= argv.size())
            throw UsageError("flag --" + key + " needs a value");
          value = argv[++i];
        }
        if (key == "config") {
          try {
            cfg = config_from_file(value, cfg);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
          cfg_changed = true;
        } else if (flag_to_key.count(key)) {
          try {
            config_apply(cfg, flag_to_key.at(key), value);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
          cfg_changed = true;
        } else if (local_options.count(key)) {
          args.options[key] = value;
        } else {
          throw UsageError("unknown flag --" + key);
        }
        continue;
      }
      if (looks_like_number(tok) || tok.rfind("-", 0) != 0) {
        args.positional.push_back(tok);
        continue;
      }
      throw UsageError("unknown argument '" + tok + "'");
    }

    if (args.positional.empty()) {
      result.exit_code = 1;
      result.output = usage_text();
      return result;
    }
    std::string sub = args.positional.front();
    args.positional.erase(args.positional.begin());

    auto it = handlers().find(sub);
    if (it == handlers().end()) {
      result.exit_code = 1;
      result.output = "unknown subcommand '" + sub + "'\n\n" + usage_text();
      return result;
    }

    if (cfg_changed) session.reconfigure(cfg);

    std::ostringstream header;
    header << "# modfermat " << kVersion << "\n";
    header << "# command: " << sub;
    for (const auto& p : args.positional) header << " " << p;
    for (const auto& [k, v] : args.options) header << " --" << k << " " << v;
    for (const auto& sw : args.switches) header << " --" << sw;
    header << "\n";
    header << "# config: " << config_echo(session.config()) << "\n";

    int exit_code = 0;
    std::string body = it->second(session, args, exit_code);
    for (const auto& w : session.phi().drain_warnings())
      header << "# warning: " << w << "\n";
    for (const auto& w : session.hd().drain_warnings())
      header << "# warning: " << w << "\n";
    result.exit_code = exit_code;
    result.output = header.str() + body;
    return result;
  } catch (const UsageError& e) {
    result.exit_code = 1;
    result.output = std::string("usage error: ") + e.what() + "\n\n" + usage_text();
    return result;
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.output = std::string("error: ") + e.what() + "\n";
    return result;
  }
}

}  // namespace modfermat
