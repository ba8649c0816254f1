/// Classical modular polynomials Phi_N: exact series computation, defining
/// identity checks, and the on-disk cache.
#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "modfermat/bipoly.hpp"

namespace modfermat {

struct ModularPolynomial {
  unsigned level = 0;
  BiPoly poly;            // monic in X, symmetric for level >= 2
  unsigned long psi = 0;  // degree in X
};

/// psi(N) = N * prod_{p | N} (1 + 1/p); the number of coset triples (a,b,d).
unsigned long psi_of(unsigned N);

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Computes Phi_N over exact integers: per coset family (a, d | ad = N) the
/// power sums of the conjugate j-values are read off as decimations of the
/// powers of the j-expansion, Newton's identities give the elementary
/// symmetric functions, and the assembled coefficients are rewritten as
/// polynomials in j by descending-pole elimination. The residual tail is
/// checked to vanish; on failure the guard precision is doubled once and
/// then a hard PrecisionError is raised.
ModularPolynomial compute_modular_polynomial(unsigned N, unsigned guard = 16);

struct PhiCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct PhiVerifyReport {
  unsigned level = 0;
  std::vector<PhiCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Defining-identity checks for a computed Phi_N: symmetry (N >= 2), monic
/// in X, the Kronecker congruence for prime N, and |Phi_N(j(tau), j(N tau))|
/// at random fundamental-domain points relative to the coefficient scale.
/// Check failures are report entries, never exceptions.
PhiVerifyReport verify_phi(const ModularPolynomial& phi, unsigned trials,
                           double tolerance, long precision_bits,
                           uint64_t seed = 20150820);

/// Whether Phi_p - (X^p - Y)(X - Y^p) has every coefficient divisible by p.
bool kronecker_congruence_holds(const ModularPolynomial& phi);

/// Disk-backed cache, layout <dir>/phi/<N>.poly, checksum-validated, atomic
/// write-then-rename, single in-process writer per level.
class PhiCache {
 public:
  explicit PhiCache(std::filesystem::path cache_dir, unsigned max_level);

  /// Loads from memory/disk or computes and stores. Throws
  /// std::invalid_argument when N is 0 or exceeds the configured maximum.
  const ModularPolynomial& get(unsigned N);

  unsigned max_level() const { return max_level_; }
  const std::filesystem::path& directory() const { return dir_; }

  /// Warnings accumulated (corrupt cache entries that were recomputed).
  std::vector<std::string> drain_warnings();

 private:
  std::optional<ModularPolynomial> load_from_disk(unsigned N);
  void store_to_disk(const ModularPolynomial& phi);

  std::filesystem::path dir_;
  unsigned max_level_;
  std::mutex mu_;
  std::map<unsigned, std::unique_ptr<ModularPolynomial>> mem_;
  std::vector<std::string> warnings_;
};

/// FNV-1a checksum of a string, as 16 hex digits (cache integrity check).
std::string fnv1a_hex(const std::string& data);

}  // namespace modfermat
