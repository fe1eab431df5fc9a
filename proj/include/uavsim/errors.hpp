#pragma once

#include <stdexcept>
#include <string>

namespace uavsim {

enum class ErrorCategory {
  kParse,        // malformed input document
  kValidation,   // well-formed but inconsistent input
  kNoData,       // query over an empty stream/window
  kDimension,    // image/matrix dimension mismatch
  kSingular,     // degenerate numerical system
  kLowOverlap,   // scan match below usable score
  kIo,           // filesystem failure
};

const char* to_string(ErrorCategory category);

// Stable CLI exit code for each category (0 is reserved for success).
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void throw_error(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

}  // namespace uavsim
