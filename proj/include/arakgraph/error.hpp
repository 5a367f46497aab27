#pragma once

#include <stdexcept>
#include <string>

namespace arakgraph {

enum class ErrorKind {
  // graph construction
  DisconnectedGraph,
  NonPositiveLength,
  DanglingEndpoint,
  DuplicateId,
  // points and polarizations
  UnknownPoint,
  InvalidPolarization,
  // degenerations
  NonSemistable,
  GenusZero,
  MissingSection,
  CoincidentSections,
  // documents
  ParseError,
  // internal consistency; never expected
  IdentityViolation,
};

inline const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::InvalidPolarization: return "InvalidPolarization";
    case ErrorKind::NonSemistable: return "NonSemistable";
    case ErrorKind::GenusZero: return "GenusZero";
    case ErrorKind::MissingSection: return "MissingSection";
    case ErrorKind::CoincidentSections: return "CoincidentSections";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace arakgraph
