#include "edpm/diagnostic.hpp"

#include <string>

namespace edpm {

std::string_view to_string(DiagCode code) {
  switch (code) {
    case DiagCode::UnknownAction: return "UnknownAction";
    case DiagCode::MissingRegionName: return "MissingRegionName";
    case DiagCode::MalformedClause: return "MalformedClause";
    case DiagCode::TrailingGarbage: return "TrailingGarbage";
    case DiagCode::UnknownType: return "UnknownType";
    case DiagCode::UnknownCounter: return "UnknownCounter";
    case DiagCode::UnsupportedCounter: return "UnsupportedCounter";
    case DiagCode::DuplicateInit: return "DuplicateInit";
    case DiagCode::MissingInit: return "MissingInit";
    case DiagCode::DuplicateDeinit: return "DuplicateDeinit";
    case DiagCode::MissingDeinit: return "MissingDeinit";
    case DiagCode::DuplicateRegionName: return "DuplicateRegionName";
    case DiagCode::RegionNameCollision: return "RegionNameCollision";
    case DiagCode::DuplicateCounterSpec: return "DuplicateCounterSpec";
    case DiagCode::UnmatchedStop: return "UnmatchedStop";
    case DiagCode::UnclosedRegion: return "UnclosedRegion";
    case DiagCode::DirectiveOutsideInitSpan: return "DirectiveOutsideInitSpan";
    case DiagCode::PositionCollision: return "PositionCollision";
  }
  return "Unknown";
}

std::string format(const Diagnostic& diag, std::string_view file) {
  std::string out;
  if (!file.empty()) {
    out += file;
    out += ':';
  }
  if (diag.line > 0) {
    out += std::to_string(diag.line);
    out += ':';
  }
  if (!out.empty()) out += ' ';
  out += "error: ";
  out += to_string(diag.code);
  if (!diag.message.empty()) {
    out += ": ";
    out += diag.message;
  }
  return out;
}

int Error::exit_code() const {
  switch (kind_) {
    case Kind::CompilerNotFound:
    case Kind::BackendMissing:
    case Kind::Io:
      return 2;
    default:
      return 1;
  }
}

}  // namespace edpm
