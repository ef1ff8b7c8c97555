#pragma once

#include <stdexcept>
#include <string>

namespace nhc {

/// Raised for every contract violation surfaced by the library. The message
/// is meant to be shown to a CLI user verbatim.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nhc
