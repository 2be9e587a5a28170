#pragma once

#include <stdexcept>

namespace operahedra {

// Structural expectations the algorithms rely on; a failure means either a
// malformed input slipped past validation or a checked identity broke.
inline void require(bool cond, const char* msg) {
  if (!cond) throw std::logic_error(msg);
}

/// Raised when a request exceeds a configured size cap.
class SizeCapError : public std::runtime_error {
 public:
  explicit SizeCapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace operahedra
