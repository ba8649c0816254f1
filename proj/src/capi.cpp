#include "modfermat.h"

#include <cstring>
#include <string>

#include "modfermat/cli.hpp"
#include "modfermat/multipoly.hpp"
#include "modfermat/multiplicative.hpp"
#include "modfermat/rational_roots.hpp"
#include "modfermat/special_geometry.hpp"

using namespace modfermat;

struct mf_buf {
  std::string data;
};

struct mf_session {
  Session session;
  std::string last_error;
  mf_session() : session(default_config()) {}
};

namespace {

mf_buf* make_buf(std::string s) { return new mf_buf{std::move(s)}; }

int fail(mf_session* s, int code, const char* what) {
  if (s) s->last_error = what;
  return code;
}

template <typename Fn>
int guarded(mf_session* s, Fn&& fn) {
  if (!s) return MF_EINVAL;
  try {
    s->last_error.clear();
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(s, MF_EINVAL, e.what());
  } catch (const std::exception& e) {
    return fail(s, MF_ECOMPUTE, e.what());
  }
}

}  // namespace

extern "C" {

mf_session* mf_session_new(void) {
  try {
    return new mf_session();
  } catch (...) {
    return nullptr;
  }
}

void mf_session_free(mf_session* s) { delete s; }

int mf_session_set(mf_session* s, const char* key, const char* value) {
  return guarded(s, [&]() {
    if (!key || !value) throw std::invalid_argument("null key or value");
    Config cfg = s->session.config();
    config_apply(cfg, key, value);
    s->session.reconfigure(std::move(cfg));
    return MF_OK;
  });
}

const char* mf_session_last_error(const mf_session* s) {
  return s ? s->last_error.c_str() : "null session";
}

const char* mf_version(void) { return kVersion; }

const char* mf_buf_data(const mf_buf* b) { return b ? b->data.c_str() : ""; }

size_t mf_buf_size(const mf_buf* b) { return b ? b->data.size() : 0; }

void mf_buf_free(mf_buf* b) { delete b; }

int mf_dispatch(mf_session* s, int argc, const char* const* argv, mf_buf** out) {
  if (!s || !out) return MF_EINVAL;
  *out = nullptr;
  try {
    s->last_error.clear();
    std::vector<std::string> args;
    for (int i = 0; i < argc; ++i) args.emplace_back(argv[i] ? argv[i] : "");
    DispatchResult r = dispatch(s->session, args);
    *out = make_buf(std::move(r.output));
    if (r.exit_code != 0) s->last_error = "dispatch exit code " + std::to_string(r.exit_code);
    return r.exit_code;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return MF_ECOMPUTE;
  }
}

int mf_modular_polynomial(mf_session* s, unsigned level, mf_buf** out) {
  return guarded(s, [&]() {
    if (!out) throw std::invalid_argument("null output");
    const ModularPolynomial& phi = s->session.phi().get(level);
    *out = make_buf(poly_to_text(MultiPoly::from_bipoly(phi.poly, "X", "Y")));
    return MF_OK;
  });
}

int mf_hilbert_class_polynomial(mf_session* s, long discriminant, mf_buf** out) {
  return guarded(s, [&]() {
    if (!out) throw std::invalid_argument("null output");
    long D = discriminant > 0 ? -discriminant : discriminant;
    const ClassPolynomial& hd = s->session.hd().get(D);
    *out = make_buf(poly_to_text(MultiPoly::from_upoly(hd.poly, "X")));
    return MF_OK;
  });
}

int mf_class_number(mf_session* s, long discriminant, unsigned long* h) {
  return guarded(s, [&]() {
    if (!h) throw std::invalid_argument("null output");
    long D = discriminant > 0 ? -discriminant : discriminant;
    *h = class_number(D);
    return MF_OK;
  });
}

int mf_is_special(mf_session* s, const char* x, long dbound, int* found,
                  long* disc) {
  return guarded(s, [&]() {
    if (!x || !found) throw std::invalid_argument("null argument");
    auto D = is_special(parse_rational(x), dbound);
    *found = D ? 1 : 0;
    if (disc) *disc = D ? *D : 0;
    return MF_OK;
  });
}

int mf_hecke_level(mf_session* s, const char* x, const char* y, unsigned nmax,
                   int* found, unsigned* level) {
  return guarded(s, [&]() {
    if (!x || !y || !found) throw std::invalid_argument("null argument");
    auto N = hecke_related(s->session.phi(), parse_rational(x), parse_rational(y),
                           nmax);
    *found = N ? 1 : 0;
    if (level) *level = N ? *N : 0;
    return MF_OK;
  });
}

int mf_rational_roots(mf_session* s, const char* poly_text, mf_buf** out) {
  return guarded(s, [&]() {
    if (!poly_text || !out) throw std::invalid_argument("null argument");
    UPoly p = poly_from_text(poly_text).to_upoly();
    std::string body;
    for (const auto& [r, mult] : rational_roots(p))
      body += to_string(r) + " " + std::to_string(mult) + "\n";
    *out = make_buf(std::move(body));
    return MF_OK;
  });
}

int mf_abc_quality(mf_session* s, const char* a, const char* b, double* quality,
                   mf_buf** radical) {
  return guarded(s, [&]() {
    if (!a || !b || !quality) throw std::invalid_argument("null argument");
    AbcTriple t = abc_quality(parse_integer(a), parse_integer(b));
    *quality = t.quality;
    if (radical) *radical = make_buf(t.radical.get_str());
    return MF_OK;
  });
}

int mf_risman_bound(mf_session* s, unsigned long n, unsigned long* h_min,
                    unsigned long* t, unsigned long* ell) {
  return guarded(s, [&]() {
    if (!h_min) throw std::invalid_argument("null output");
    RismanBound b = risman_order_bound(n);
    *h_min = b.h_min;
    if (t) *t = b.t;
    if (ell) *ell = b.ell;
    return MF_OK;
  });
}

int mf_pure_equation_reducible(mf_session* s, const char* c, unsigned long n,
                               int* reducible, mf_buf** reason) {
  return guarded(s, [&]() {
    if (!c || !reducible) throw std::invalid_argument("null argument");
    Reducibility r = pure_equation_reducible(parse_rational(c), n);
    *reducible = r.reducible ? 1 : 0;
    if (reason) *reason = make_buf(r.reason);
    return MF_OK;
  });
}

}  // extern "C"
