#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circinv {

enum class ErrorKind {
  Parameter,
  Domain,
  Embedding,
  DegenerateCurve,
  Convergence,
  Topology,
  Consistency,
  Geometry,
  NearSingular,
  NonConvergence,
  Io,
};

std::string_view error_kind_name(ErrorKind kind);

/// Library error. Carries a machine-readable kind and the name of the
/// operation that raised it ("module::operation"), which the CLI forwards
/// into its error JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string operation, const std::string& message)
      : std::runtime_error(message), kind_(kind), operation_(std::move(operation)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  ErrorKind kind_;
  std::string operation_;
};

}  // namespace circinv
