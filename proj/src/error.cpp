#include "minbudget/error.hpp"

namespace minbudget {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::DuplicateJob: return "DuplicateJob";
    case ErrorKind::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorKind::UnknownJob: return "UnknownJob";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::CoverageMismatch: return "CoverageMismatch";
    case ErrorKind::MissingCost: return "MissingCost";
    case ErrorKind::NotAnInterval: return "NotAnInterval";
    case ErrorKind::PartitionInvalid: return "PartitionInvalid";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotFeasibleInput: return "NotFeasibleInput";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::NotSeriesParallel: return "NotSeriesParallel";
    case ErrorKind::JobOverlap: return "JobOverlap";
    case ErrorKind::TreeMismatch: return "TreeMismatch";
    case ErrorKind::NotBipartite: return "NotBipartite";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::EmptyNegativeSet: return "EmptyNegativeSet";
    case ErrorKind::InfeasibleInput: return "InfeasibleInput";
    case ErrorKind::NonIntegerWeights: return "NonIntegerWeights";
    case ErrorKind::NegativeThreshold: return "NegativeThreshold";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsolvableAtScale: return "UnsolvableAtScale";
    case ErrorKind::BadParameters: return "BadParameters";
  }
  return "Unknown";
}

}  // namespace minbudget
