/// Run configuration: defaults, key=value file parsing, flag overrides,
/// and the deterministic one-line echo placed in every report header.
#pragma once

#include <string>

namespace modfermat {

struct Config {
  std::string cache_dir;  // default from MODFERMAT_CACHE_DIR, else .modfermat-cache
  unsigned phi_max_level = 50;
  long hilbert_max_disc = 10000;
  long float_precision_bits = 256;
  double tolerance = 1e-9;
  unsigned thread_count = 0;  // 0 = auto (hardware concurrency)
  std::string format = "table";  // table | records | csv
};

Config default_config();

/// Applies one key=value pair; throws std::invalid_argument on unknown keys
/// or malformed values. Keys match the field names.
void config_apply(Config& cfg, const std::string& key, const std::string& value);

/// Reads a key=value file ('#' comments allowed) over the given base.
Config config_from_file(const std::string& path, Config base);

std::string config_echo(const Config& cfg);

unsigned effective_threads(const Config& cfg);

}  // namespace modfermat
