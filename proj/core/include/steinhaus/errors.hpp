#pragma once

#include <stdexcept>
#include <string>

namespace steinhaus {

// Exit-code categories shared with the CLI.
enum class ErrorKind { Parameter = 3, Budget = 4, Indeterminate = 2, Verification = 1 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& w) : Error(ErrorKind::Parameter, w) {}
};

struct SizeError : Error {
  explicit SizeError(const std::string& w) : Error(ErrorKind::Budget, w) {}
};

// Quadrature did not converge inside the node budget. `estimate` is the last value seen.
struct QuadratureError : Error {
  QuadratureError(const std::string& w, double est) : Error(ErrorKind::Budget, w), estimate(est) {}
  double estimate;
};

}  // namespace steinhaus
