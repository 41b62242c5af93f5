#pragma once

#include <stdexcept>
#include <string>

namespace c2mabv {

// Exit-code mapping in the CLI: ConfigError -> 2, SizeGuardError -> 3, IoError -> 4.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SizeGuardError : std::runtime_error {
  explicit SizeGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace c2mabv
