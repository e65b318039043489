// Reader: extracts `#pragma edpm` lines from C source and parses them.
//
// Grammar (whitespace between tokens is insignificant):
//
//   directive    := "#pragma" "edpm" action
//   action       := "init" | "deinit"
//                 | "start" region-name [ clause-list ]
//                 | "stop"  region-name
//   clause-list  := clause { "," clause }
//   clause       := type-name [ "(" [ counter-list ] ")" ]
//   counter-list := counter-name { "," counter-name }
//   ident        := letter { letter | digit | "-" | "_" }
//
// The reader knows nothing about C. Every other line is ignored, including
// pragmas of other tools.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "edpm/diagnostic.hpp"

namespace edpm {

struct SourcePosition {
  int line = 1;  // 1-based

  friend auto operator<=>(const SourcePosition&, const SourcePosition&) = default;
};

enum class DirectiveKind { Init, Deinit, Start, Stop };

std::string_view to_string(DirectiveKind kind);

struct Clause {
  std::string counter_type;
  // Empty means every counter of the type.
  std::vector<std::string> counters;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Directive {
  DirectiveKind kind = DirectiveKind::Init;
  std::string region_name;  // empty unless Start/Stop
  std::vector<Clause> clauses;  // empty unless Start
  SourcePosition position;

  friend bool operator==(const Directive&, const Directive&) = default;
};

struct ScanResult {
  std::vector<Directive> directives;
  Diagnostics errors;
};

/// True when the line's first tokens are `#pragma edpm`.
bool is_edpm_pragma(std::string_view line);

/// Parses one pragma line. Precondition: is_edpm_pragma(line_text).
Expected<Directive> parse_directive(std::string_view line_text, int line_number);

/// Scans a whole file. Continues past malformed pragmas and reports all of them.
ScanResult scan(std::string_view source_text);

/// Canonical pragma text for a directive, e.g.
/// `#pragma edpm start r1 cpu(cycles), memory`.
std::string render_directive(const Directive& directive);

bool is_identifier(std::string_view token);

/// Splits text into lines on '\n'. A trailing newline does not produce an
/// extra empty line; '\r' is kept as part of the line.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace edpm
