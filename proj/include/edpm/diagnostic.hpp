// Diagnostics shared by every precompiler phase.
//
// Phases never throw on bad input; they collect Diagnostic values so a
// single run reports every problem in the file. Environment failures in the
// runner (missing compiler, unreadable file) are the exception and use
// edpm::Error.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace edpm {

enum class DiagCode {
  // reader
  UnknownAction,
  MissingRegionName,
  MalformedClause,
  TrailingGarbage,
  // catalog / normalize
  UnknownType,
  UnknownCounter,
  UnsupportedCounter,
  // validation
  DuplicateInit,
  MissingInit,
  DuplicateDeinit,
  MissingDeinit,
  DuplicateRegionName,
  RegionNameCollision,
  DuplicateCounterSpec,
  UnmatchedStop,
  UnclosedRegion,
  DirectiveOutsideInitSpan,
  // codegen
  PositionCollision,
};

std::string_view to_string(DiagCode code);

struct Diagnostic {
  DiagCode code;
  int line = 0;  // 0 when the problem has no single source line
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Renders `file:line: error: Code: message` (the line part is dropped when
/// line is 0).
std::string format(const Diagnostic& diag, std::string_view file = "");

using Diagnostics = std::vector<Diagnostic>;

/// Either a value or the diagnostic explaining why there is none.
template <typename T>
class Expected {
 public:
  Expected(T value) : state_(std::move(value)) {}
  Expected(Diagnostic diag) : state_(std::move(diag)) {}

  bool has_value() const { return state_.index() == 0; }
  explicit operator bool() const { return has_value(); }

  const T& value() const& { return std::get<0>(state_); }
  T&& value() && { return std::get<0>(std::move(state_)); }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Diagnostic& error() const { return std::get<1>(state_); }

 private:
  std::variant<T, Diagnostic> state_;
};

/// Runner-level failures. Maps onto the CLI's exit codes.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    Diagnostics,       // exit 1
    CompilerNotFound,  // exit 2
    BackendMissing,    // exit 2, e.g. no PAPI installation
    CompileFailed,     // exit 1
    ExecFailed,        // exit 1
    CollectFailed,     // exit 1
    Io,                // exit 2
  };

  Error(Kind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  Kind kind() const { return kind_; }
  int exit_code() const;

 private:
  Kind kind_;
};

}  // namespace edpm
