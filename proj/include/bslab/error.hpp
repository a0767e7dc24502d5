#pragma once

#include <stdexcept>
#include <string>

namespace bslab {

// Violated input contract: bad ids, wrong sizes, malformed files, config
// typos. The CLI maps this to exit code 1.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver hit its iteration cap. Carries the last residual so
// callers can decide whether the partial answer is usable. Exit code 2.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

namespace detail {
inline void require(bool ok, const char* message) {
  if (!ok) throw PreconditionError(message);
}
inline void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}
}  // namespace detail

}  // namespace bslab
