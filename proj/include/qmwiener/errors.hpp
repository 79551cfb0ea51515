#pragma once

#include <stdexcept>
#include <string>

namespace qmw {

// Invalid argument for an operation: precondition or type invariant violated.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative solver failed to reach its tolerance within the iteration cap.
// This signals a solver bug or a broken bracket, not bad user input.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File or stream handling failure.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The truncated potential is identically 1 at the requested radius, so the
// power-law formula does not apply there.
class saturated_potential : public domain_error {
 public:
  using domain_error::domain_error;
};

inline void require_domain(bool cond, const std::string& msg) {
  if (!cond) throw domain_error(msg);
}

}  // namespace qmw
