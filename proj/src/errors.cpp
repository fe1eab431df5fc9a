#include "uavsim/errors.hpp"

namespace uavsim {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParse: return "parse";
    case ErrorCategory::kValidation: return "validation";
    case ErrorCategory::kNoData: return "no_data";
    case ErrorCategory::kDimension: return "dimension";
    case ErrorCategory::kSingular: return "singular";
    case ErrorCategory::kLowOverlap: return "low_overlap";
    case ErrorCategory::kIo: return "io";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kParse: return 2;
    case ErrorCategory::kValidation: return 3;
    case ErrorCategory::kNoData: return 4;
    case ErrorCategory::kDimension: return 5;
    case ErrorCategory::kSingular: return 6;
    case ErrorCategory::kLowOverlap: return 7;
    case ErrorCategory::kIo: return 8;
  }
  return 1;
}

}  // namespace uavsim
