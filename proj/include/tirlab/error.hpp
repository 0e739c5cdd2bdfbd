#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tirlab {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  no_convergence,
  io,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, Errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace tirlab
