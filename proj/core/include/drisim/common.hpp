#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace drisim {

inline constexpr const char* kToolName = "drisim";
inline constexpr const char* kToolVersion = "0.1.0";

/// Raised on malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace drisim
