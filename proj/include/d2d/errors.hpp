#pragma once

#include <stdexcept>
#include <string>

namespace d2d {

// Invalid or inconsistent configuration: bad units, unknown keys, violated
// type invariants. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to meet its contract (lost root bracket,
// oracle non-convergence, inconsistent closed-form support search).
// The CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature could not reach the requested tolerance. Carries the
// offending subinterval.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double a, double b)
      : std::runtime_error(what + " on subinterval [" + std::to_string(a) +
                           ", " + std::to_string(b) + "]"),
        a_(a),
        b_(b) {}
  double interval_begin() const { return a_; }
  double interval_end() const { return b_; }

 private:
  double a_;
  double b_;
};

}  // namespace d2d
