#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nifield {

enum class ErrorCode {
  NoRoot,
  Tolerance,
  Superluminal,
  AtSource,
  NotFound,
  DegenerateInput,
  TooCloseToSource,
  DegenerateResidual,
  OnSurface,
  ConfigInvalid,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the scenario runner in particular) can map it to a failed check.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::Tolerance: return "Tolerance";
    case ErrorCode::Superluminal: return "Superluminal";
    case ErrorCode::AtSource: return "AtSource";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::TooCloseToSource: return "TooCloseToSource";
    case ErrorCode::DegenerateResidual: return "DegenerateResidual";
    case ErrorCode::OnSurface: return "OnSurface";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace nifield
