#pragma once

#include <cstdlib>
#include <string>

#include <dadecheck/tabledsl.hpp>

namespace testing {

inline std::string data_dir() {
  if (const char* env = std::getenv("DADE_DATA_DIR"); env && *env) return env;
  return DADE_DATA_DIR_DEFAULT;
}

inline const dc::Model& model() {
  static const dc::Model m = dc::load_model(data_dir());
  return m;
}

// q^2 = 2^(2n+1) as a plain integer.
inline unsigned long long qq(unsigned n) { return 1ull << (2 * n + 1); }

}  // namespace testing
