// Exercises the extern-C surface as an out-of-tree consumer would: only
// modfermat.h, opaque handles, and error codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <modfermat.h>

#include <filesystem>
#include <string>

namespace {

struct SessionGuard {
  mf_session* s = mf_session_new();
  ~SessionGuard() { mf_session_free(s); }
};

std::string take(mf_buf* b) {
  std::string out(mf_buf_data(b), mf_buf_size(b));
  mf_buf_free(b);
  return out;
}

}  // namespace

TEST_CASE("session lifecycle and configuration") {
  SessionGuard g;
  REQUIRE(g.s != nullptr);
  CHECK(std::string(mf_version()) == "1.0.0");
  auto dir = std::filesystem::temp_directory_path() / "modfermat_test_capi";
  CHECK(mf_session_set(g.s, "cache_dir", dir.string().c_str()) == MF_OK);
  CHECK(mf_session_set(g.s, "phi_max_level", "55") == MF_OK);
  CHECK(mf_session_set(g.s, "no_such_key", "1") == MF_EINVAL);
  CHECK(std::string(mf_session_last_error(g.s)).find("unknown config key") !=
        std::string::npos);
  CHECK(mf_session_set(g.s, "tolerance", "-1") == MF_EINVAL);
}

TEST_CASE("modular polynomial and class polynomial buffers") {
  SessionGuard g;
  auto dir = std::filesystem::temp_directory_path() / "modfermat_test_capi";
  mf_session_set(g.s, "cache_dir", dir.string().c_str());

  mf_buf* out = nullptr;
  REQUIRE(mf_modular_polynomial(g.s, 1, &out) == MF_OK);
  CHECK(take(out) == "POLY X,Y 2\n0 1 -1\n1 0 1\n");

  CHECK(mf_modular_polynomial(g.s, 0, &out) == MF_EINVAL);
  CHECK(mf_modular_polynomial(g.s, 1000, &out) == MF_EINVAL);

  REQUIRE(mf_hilbert_class_polynomial(g.s, -7, &out) == MF_OK);
  CHECK(take(out) == "POLY X 2\n0 3375\n1 1\n");
  // positive argument means |D|
  REQUIRE(mf_hilbert_class_polynomial(g.s, 4, &out) == MF_OK);
  CHECK(take(out) == "POLY X 2\n0 -1728\n1 1\n");

  unsigned long h = 0;
  REQUIRE(mf_class_number(g.s, -23, &h) == MF_OK);
  CHECK(h == 3);
  CHECK(mf_class_number(g.s, -5, &h) == MF_EINVAL);
}

TEST_CASE("typed queries") {
  SessionGuard g;
  auto dir = std::filesystem::temp_directory_path() / "modfermat_test_capi";
  mf_session_set(g.s, "cache_dir", dir.string().c_str());

  int found = 0;
  long disc = 0;
  REQUIRE(mf_is_special(g.s, "1728", 200, &found, &disc) == MF_OK);
  CHECK(found == 1);
  CHECK(disc == -4);
  REQUIRE(mf_is_special(g.s, "5", 200, &found, &disc) == MF_OK);
  CHECK(found == 0);
  CHECK(mf_is_special(g.s, "junk", 200, &found, &disc) == MF_EINVAL);

  unsigned level = 0;
  REQUIRE(mf_hecke_level(g.s, "0", "54000", 3, &found, &level) == MF_OK);
  CHECK(found == 1);
  CHECK(level == 2);

  mf_buf* roots = nullptr;
  REQUIRE(mf_rational_roots(g.s, "POLY U 3\n0 1\n1 -3\n2 2\n", &roots) == MF_OK);
  CHECK(take(roots) == "1 1\n1/2 1\n");  // ordered by (height, num, den)

  double q = 0;
  mf_buf* rad = nullptr;
  REQUIRE(mf_abc_quality(g.s, "2", "6436341", &q, &rad) == MF_OK);
  CHECK(take(rad) == "15042");
  CHECK(q == doctest::Approx(1.6299).epsilon(1e-3));
  CHECK(mf_abc_quality(g.s, "2", "4", &q, &rad) == MF_EINVAL);

  unsigned long hmin = 0, t = 0, ell = 0;
  REQUIRE(mf_risman_bound(g.s, 12, &hmin, &t, &ell) == MF_OK);
  CHECK(hmin == 2);
  CHECK(t == 6);
  CHECK(ell == 2);

  int red = 0;
  mf_buf* reason = nullptr;
  REQUIRE(mf_pure_equation_reducible(g.s, "-4", 4, &red, &reason) == MF_OK);
  CHECK(red == 1);
  CHECK(take(reason).find("-c/4") != std::string::npos);
}

TEST_CASE("dispatch through the C boundary") {
  SessionGuard g;
  auto dir = std::filesystem::temp_directory_path() / "modfermat_test_capi";
  mf_session_set(g.s, "cache_dir", dir.string().c_str());

  const char* argv1[] = {"risman", "12"};
  mf_buf* out = nullptr;
  CHECK(mf_dispatch(g.s, 2, argv1, &out) == 0);
  std::string text = take(out);
  CHECK(text.find("h_min") != std::string::npos);
  CHECK(text.find("# command: risman 12") != std::string::npos);

  const char* argv2[] = {"phi"};
  CHECK(mf_dispatch(g.s, 1, argv2, &out) == 1);
  take(out);

  const char* argv3[] = {"abc", "2", "4"};
  CHECK(mf_dispatch(g.s, 3, argv3, &out) == 2);
  take(out);

  // byte determinism across separate dispatches
  const char* argv4[] = {"fermat-search", "2", "2", "3"};
  mf_buf* a = nullptr;
  mf_buf* b = nullptr;
  CHECK(mf_dispatch(g.s, 4, argv4, &a) == 0);
  CHECK(mf_dispatch(g.s, 4, argv4, &b) == 0);
  CHECK(take(a) == take(b));
}
