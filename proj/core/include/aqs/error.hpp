#pragma once

#include <stdexcept>
#include <string>

namespace aqs {

/// Error families double as CLI exit codes.
enum class ErrorFamily : int {
  Parse = 2,         ///< malformed input: bad file, bad scalar, Jacobi violation
  Precondition = 3,  ///< input does not satisfy an operation's hypotheses
  Internal = 4,      ///< a step that cannot fail on valid input failed; indicates a defect
};

const char* to_string(ErrorFamily family);

class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, std::string code, const std::string& message)
      : std::runtime_error(message), family_(family), code_(std::move(code)) {}

  ErrorFamily family() const noexcept { return family_; }
  /// Stable machine-readable code, e.g. "NotNilpotent".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorFamily family_;
  std::string code_;
};

inline Error parse_error(const std::string& code, const std::string& message) {
  return Error(ErrorFamily::Parse, code, message);
}
inline Error precondition_error(const std::string& code, const std::string& message) {
  return Error(ErrorFamily::Precondition, code, message);
}
inline Error internal_error(const std::string& code, const std::string& message) {
  return Error(ErrorFamily::Internal, code, message);
}

}  // namespace aqs
