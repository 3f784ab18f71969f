#pragma once

#include <stdexcept>
#include <string>

namespace jtberry {

// Every error carries a stable machine-readable code; the CLI maps
// codes onto its exit-code contract.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct ModelNotFoundError : Error {
  explicit ModelNotFoundError(const std::string& msg)
      : Error("model-not-found", msg) {}
};

struct InvalidParameterError : Error {
  explicit InvalidParameterError(const std::string& msg)
      : Error("invalid-parameter", msg) {}
};

struct InvalidGeometryError : Error {
  explicit InvalidGeometryError(const std::string& msg)
      : Error("invalid-geometry", msg) {}
};

struct InvalidRotationError : Error {
  explicit InvalidRotationError(const std::string& msg)
      : Error("invalid-rotation", msg) {}
};

struct DegenerateTroughError : Error {
  explicit DegenerateTroughError(const std::string& msg)
      : Error("degenerate-trough", msg) {}
};

struct VacuousInputError : Error {
  explicit VacuousInputError(const std::string& msg)
      : Error("vacuous-input", msg) {}
};

struct ResolutionError : Error {
  explicit ResolutionError(const std::string& msg)
      : Error("resolution", msg) {}
};

struct DegeneracyOnPathError : Error {
  explicit DegeneracyOnPathError(const std::string& msg)
      : Error("degeneracy-on-path", msg) {}
};

struct DegeneracyError : Error {
  explicit DegeneracyError(const std::string& msg)
      : Error("degeneracy", msg) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& msg) : Error("capacity", msg) {}
};

struct SolverError : Error {
  explicit SolverError(const std::string& msg) : Error("solver", msg) {}
};

struct UnsupportedModelError : Error {
  explicit UnsupportedModelError(const std::string& msg)
      : Error("unsupported-model", msg) {}
};

struct InvalidPerturbationError : Error {
  explicit InvalidPerturbationError(const std::string& msg)
      : Error("invalid-perturbation", msg) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error("config", msg) {}
};

}  // namespace jtberry
