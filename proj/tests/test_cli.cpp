#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "modfermat/cli.hpp"

using namespace modfermat;

namespace {

std::filesystem::path test_dir() {
  auto dir = std::filesystem::temp_directory_path() / "modfermat_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

Session make_session() {
  Config cfg = default_config();
  cfg.cache_dir = (test_dir() / "cache").string();
  return Session(cfg);
}

DispatchResult run(Session& s, std::initializer_list<std::string> args) {
  return dispatch(s, std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("phi 1 emits the linear polynomial with a header") {
  Session s = make_session();
  DispatchResult r = run(s, {"phi", "1"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("# modfermat " + std::string(kVersion)) == 0);
  CHECK(r.output.find("# command: phi 1\n") != std::string::npos);
  CHECK(r.output.find("# config: cache_dir=") != std::string::npos);
  CHECK(r.output.find("POLY X,Y 2\n0 1 -1\n1 0 1\n") != std::string::npos);
}

TEST_CASE("exit codes: usage and computation errors") {
  Session s = make_session();
  CHECK(run(s, {}).exit_code == 1);
  CHECK(run(s, {"no-such-command"}).exit_code == 1);
  CHECK(run(s, {"phi"}).exit_code == 1);          // missing argument
  CHECK(run(s, {"phi", "x"}).exit_code == 1);     // bad integer
  CHECK(run(s, {"phi", "0"}).exit_code == 1);     // below range
  CHECK(run(s, {"phi", "99"}).exit_code == 2);    // beyond configured maximum
  CHECK(run(s, {"risman", "12"}).exit_code == 0);
  CHECK(run(s, {"abc", "2", "4"}).exit_code == 2);     // not coprime
  CHECK(run(s, {"sgh-probe", "1728", "5"}).exit_code == 2);  // special x rejected
  CHECK(run(s, {"classnum", "-5"}).exit_code == 1);    // invalid discriminant
  CHECK(run(s, {"hilbert", "-20000"}).exit_code == 2); // beyond hilbert_max_disc
  // empty result set is success
  DispatchResult empty = run(s, {"fml-search", "--nmin", "4", "--exp-max", "4",
                                 "--height", "2", "--sunit-exp", "1"});
  CHECK(empty.exit_code == 0);
  CHECK(empty.output.find("total 0") != std::string::npos);
}

TEST_CASE("byte determinism of repeated invocations") {
  Session s = make_session();
  DispatchResult a = run(s, {"fermat-search", "2", "2", "3"});
  DispatchResult b = run(s, {"fermat-search", "2", "2", "3"});
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  Session s2 = make_session();  // fresh session, warm disk cache
  DispatchResult c = run(s2, {"fermat-search", "2", "2", "3"});
  CHECK(a.output == c.output);
}

TEST_CASE("formats: table, records, csv") {
  Session s = make_session();
  DispatchResult table = run(s, {"risman", "12"});
  CHECK(table.output.find("n   h_min") != std::string::npos);

  DispatchResult records = run(s, {"--format", "records", "risman", "12"});
  CHECK(records.output.find("record type=risman n=12 h_min=2 t=6 ell=2") !=
        std::string::npos);

  DispatchResult csv = run(s, {"--format=csv", "risman", "12"});
  CHECK(csv.output.find("n,h_min,t,ell,sqrt_n\n12,2,6,2,3.464") != std::string::npos);
}

TEST_CASE("config file plus flag precedence") {
  Session s = make_session();
  auto cfgfile = test_dir() / "t.cfg";
  {
    std::ofstream f(cfgfile, std::ios::trunc);
    f << "# comment\n";
    f << "tolerance=1e-6\n";
    f << "phi_max_level = 30\n";
  }
  DispatchResult r =
      run(s, {"--config", cfgfile.string(), "--tol", "1e-7", "phi", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("tolerance=1e-07") != std::string::npos);  // flag wins
  CHECK(r.output.find("phi_max_level=30") != std::string::npos);

  DispatchResult bad = run(s, {"--config", "/nonexistent/file.cfg", "phi", "2"});
  CHECK(bad.exit_code == 1);
}

TEST_CASE("negative numbers are positional, not flags") {
  Session s = make_session();
  DispatchResult r = run(s, {"classnum", "-23"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("-23  3") != std::string::npos);
  CHECK(r.output.find("(1,1,6) (2,1,3) (2,-1,3)") != std::string::npos);
}

TEST_CASE("special: single value and list") {
  Session s = make_session();
  DispatchResult r = run(s, {"special", "1728", "--dbound", "200"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("yes") != std::string::npos);
  CHECK(r.output.find("-4") != std::string::npos);

  DispatchResult l = run(s, {"special", "--list", "--dbound", "200"});
  CHECK(l.exit_code == 0);
  CHECK(l.output.find("-163") != std::string::npos);
  CHECK(l.output.find("-262537412640768000") != std::string::npos);
}

TEST_CASE("classify and atypical round trip through a file") {
  Session s = make_session();
  DispatchResult c = run(s, {"classify", "0,54000,7", "--nmax", "2", "--dbound", "12"});
  CHECK(c.exit_code == 0);
  CHECK(c.output.find("dimension 1") != std::string::npos);
  CHECK(c.output.find("complexity 12") != std::string::npos);

  // extract the STRUCT block into a file
  auto start = c.output.find("STRUCT v1");
  auto end = c.output.find("END\n");
  REQUIRE(start != std::string::npos);
  REQUIRE(end != std::string::npos);
  auto structfile = test_dir() / "t.struct";
  {
    std::ofstream f(structfile, std::ios::trunc);
    f << c.output.substr(start, end + 4 - start);
  }
  DispatchResult a = run(s, {"atypical", "0", "1", structfile.string(), "3"});
  CHECK(a.exit_code == 0);
  CHECK(a.output.find("yes") != std::string::npos);  // 0 > 1 + 1 - 3

  DispatchResult bad = run(s, {"atypical", "2", "1", structfile.string(), "3"});
  CHECK(bad.exit_code == 2);  // inconsistent dimensions
}

TEST_CASE("gen-search through a polynomial file") {
  Session s = make_session();
  auto polyfile = test_dir() / "v.poly";
  {
    std::ofstream f(polyfile, std::ios::trunc);
    f << "POLY u1,u2 3\n0 0 -1\n0 1 1\n1 0 1\n";  // u1 + u2 - 1
  }
  DispatchResult r = run(s, {"gen-search", polyfile.string(), "2", "1", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("total") != std::string::npos);
  DispatchResult miss = run(s, {"gen-search", "/nope.poly", "2", "1", "2"});
  CHECK(miss.exit_code == 1);
}

TEST_CASE("uhp subcommands") {
  Session s = make_session();
  DispatchResult red = run(s, {"uhp", "reduce", "5.0", "1.0"});
  CHECK(red.exit_code == 0);
  CHECK(red.output.find("gamma 1 -5 0 1") != std::string::npos);

  DispatchResult jv = run(s, {"uhp", "jval", "0.0", "1.0"});
  CHECK(jv.exit_code == 0);
  CHECK(jv.output.find("j 1728") != std::string::npos);

  DispatchResult ji = run(s, {"uhp", "jinv", "1728"});
  CHECK(ji.exit_code == 0);
  CHECK(ji.output.find("tau ") != std::string::npos);

  CHECK(run(s, {"uhp", "bogus", "1", "1"}).exit_code == 1);
  CHECK(run(s, {"uhp", "jval", "0.0", "-1.0"}).exit_code == 1);
}

TEST_CASE("count-exp") {
  Session s = make_session();
  DispatchResult r = run(s, {"count-exp", "2", "2"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("height histogram:") != std::string::npos);
  CHECK(r.output.find("max residual") != std::string::npos);
  // special x rejected without the override
  CHECK(run(s, {"count-exp", "0", "2"}).exit_code == 2);
}

TEST_CASE("fermat-curve, hilbert and sgh-probe through dispatch") {
  Session s = make_session();
  DispatchResult c = run(s, {"fermat-curve", "1", "1"});
  CHECK(c.exit_code == 0);
  CHECK(c.output.find("POLY x,y 3\n0 0 -1\n0 1 1\n1 0 1\n") != std::string::npos);

  DispatchResult h = run(s, {"hilbert", "-7"});
  CHECK(h.exit_code == 0);
  CHECK(h.output.find("POLY X 2\n0 3375\n1 1\n") != std::string::npos);

  DispatchResult p = run(s, {"sgh-probe", "2", "5"});
  CHECK(p.exit_code == 0);
  CHECK(p.output.find("pattern p=") != std::string::npos);
  CHECK(p.output.find("najman") != std::string::npos);

  // the probe accepts specials only with the override
  DispatchResult ov = run(s, {"sgh-probe", "54000", "2", "--allow-special"});
  CHECK(ov.exit_code == 0);
  CHECK(ov.output.find("yes") != std::string::npos);  // has a rational root (0)
}

TEST_CASE("environment variable seeds the default cache_dir") {
  setenv("MODFERMAT_CACHE_DIR", "/tmp/modfermat_env_cache", 1);
  Config cfg = default_config();
  CHECK(cfg.cache_dir == "/tmp/modfermat_env_cache");
  unsetenv("MODFERMAT_CACHE_DIR");
  Config plain = default_config();
  CHECK(plain.cache_dir == ".modfermat-cache");
}

TEST_CASE("phi-verify and kuhne") {
  Session s = make_session();
  DispatchResult v = run(s, {"phi-verify", "2", "--trials", "3"});
  CHECK(v.exit_code == 0);
  CHECK(v.output.find("symmetry") != std::string::npos);
  CHECK(v.output.find("FAIL") == std::string::npos);

  DispatchResult k = run(s, {"kuhne", "20"});
  CHECK(k.exit_code == 0);
  CHECK(k.output.find("PASS") != std::string::npos);
}
