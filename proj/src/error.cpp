#include "circinv/error.hpp"

namespace circinv {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parameter: return "ParameterError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Embedding: return "EmbeddingError";
    case ErrorKind::DegenerateCurve: return "DegenerateCurveError";
    case ErrorKind::Convergence: return "ConvergenceError";
    case ErrorKind::Topology: return "TopologyError";
    case ErrorKind::Consistency: return "ConsistencyError";
    case ErrorKind::Geometry: return "GeometryError";
    case ErrorKind::NearSingular: return "NearSingularError";
    case ErrorKind::NonConvergence: return "NonConvergenceError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

}  // namespace circinv
