/// Command-line surface: argument parsing, subcommand routing, and report
/// emission. Exit codes: 0 success (including empty result sets), 1 usage
/// error, 2 computation error.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "modfermat/class_invariants.hpp"
#include "modfermat/config.hpp"
#include "modfermat/modular_poly.hpp"

namespace modfermat {

/// Holds the configuration and the warm polynomial caches across calls.
class Session {
 public:
  explicit Session(Config cfg);
  void reconfigure(Config cfg);

  const Config& config() const { return cfg_; }
  PhiCache& phi() { return *phi_; }
  HdCache& hd() { return *hd_; }

 private:
  Config cfg_;
  std::unique_ptr<PhiCache> phi_;
  std::unique_ptr<HdCache> hd_;
};

struct DispatchResult {
  int exit_code = 0;
  std::string output;
};

/// Full command processing: global flags (--config, --cache-dir, --format,
/// --phi-max, --hilbert-max, --prec, --tol, --threads), then the subcommand.
/// The report begins with a header echoing version, configuration and the
/// command line; identical invocations produce byte-identical output.
DispatchResult dispatch(Session& session, const std::vector<std::string>& argv);

std::string usage_text();

extern const char* const kVersion;

}  // namespace modfermat
