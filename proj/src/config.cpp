#include "modfermat/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace modfermat {

Config default_config() {
  Config cfg;
  const char* env = std::getenv("MODFERMAT_CACHE_DIR");
  cfg.cache_dir = env && *env ? env : ".modfermat-cache";
  return cfg;
}

namespace {

long parse_long(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    long out = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
  }
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
  }
}

}  // namespace

void config_apply(Config& cfg, const std::string& key, const std::string& value) {
  if (key == "cache_dir") {
    if (value.empty()) throw std::invalid_argument("cache_dir must be nonempty");
    cfg.cache_dir = value;
  } else if (key == "phi_max_level") {
    long v = parse_long(value, key);
    if (v < 1) throw std::invalid_argument("phi_max_level must be >= 1");
    cfg.phi_max_level = static_cast<unsigned>(v);
  } else if (key == "hilbert_max_disc") {
    long v = parse_long(value, key);
    if (v < 3) throw std::invalid_argument("hilbert_max_disc must be >= 3");
    cfg.hilbert_max_disc = v;
  } else if (key == "float_precision_bits") {
    long v = parse_long(value, key);
    if (v < 53) throw std::invalid_argument("float_precision_bits must be >= 53");
    cfg.float_precision_bits = v;
  } else if (key == "tolerance") {
    double v = parse_double(value, key);
    if (!(v > 0)) throw std::invalid_argument("tolerance must be positive");
    cfg.tolerance = v;
  } else if (key == "thread_count") {
    if (value == "auto") {
      cfg.thread_count = 0;
    } else {
      long v = parse_long(value, key);
      if (v < 1) throw std::invalid_argument("thread_count must be >= 1 or auto");
      cfg.thread_count = static_cast<unsigned>(v);
    }
  } else if (key == "format") {
    if (value != "table" && value != "records" && value != "csv")
      throw std::invalid_argument("format must be table, records or csv");
    cfg.format = value;
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

Config config_from_file(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config file " + path + ":" +
                                  std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(0, 1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.pop_back();
    };
    trim(key);
    trim(value);
    config_apply(base, key, value);
  }
  return base;
}

std::string config_echo(const Config& cfg) {
  std::ostringstream os;
  os << "cache_dir=" << cfg.cache_dir;
  os << " phi_max_level=" << cfg.phi_max_level;
  os << " hilbert_max_disc=" << cfg.hilbert_max_disc;
  os << " float_precision_bits=" << cfg.float_precision_bits;
  char tol[64];
  std::snprintf(tol, sizeof tol, "%g", cfg.tolerance);
  os << " tolerance=" << tol;
  os << " thread_count=";
  if (cfg.thread_count == 0)
    os << "auto";
  else
    os << cfg.thread_count;
  os << " format=" << cfg.format;
  return os.str();
}

unsigned effective_threads(const Config& cfg) {
  if (cfg.thread_count > 0) return cfg.thread_count;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace modfermat
