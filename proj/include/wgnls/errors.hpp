#pragma once

#include <stdexcept>
#include <string>

namespace wgnls {

// Invalid parameters or configuration (CLI exit code 2).
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure during time stepping: non-finite values or a mass jump
// beyond tolerance in a single step (CLI exit code 3).
class blowup_error : public std::runtime_error {
 public:
  blowup_error(const std::string& what, double t)
      : std::runtime_error(what + " (t=" + std::to_string(t) + ")"), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

// Mass has leaked into the boundary strip of the truncated direction beyond
// the configured threshold (CLI exit code 3).
class contamination_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation was not met by the caller (e.g. a space-time
// norm requested before the time cutoff was applied).
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input that is syntactically valid but meaningless for the computation
// (e.g. a zero norm at an iteration-bound window endpoint).
class degenerate_input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wgnls
