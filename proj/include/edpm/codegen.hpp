// Code generation: lowers analysis IR into C for a backend and splices it
// into the original source in place of the pragma lines.
//
// A precompilation yields three files:
//   <stem>.edpm.h      reserved bindings, backend declarations and helpers
//   <stem>.edpm.c      the original source, pragma lines replaced
//   <stem>.edpm.build  key=value compile recipe handed to the runner
//
// The instrumented source starts with `#include "<stem>.edpm.h"` followed by
// `#line 1 "<source>"`, and every multi-line fragment is followed by a
// `#line` marker, so compiler diagnostics keep pointing at the user's file.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "edpm/analyzer.hpp"
#include "edpm/catalog.hpp"
#include "edpm/diagnostic.hpp"

namespace edpm {

struct GenConfig {
  Backend backend = Backend::Soft;
  std::string json_output_path = "edpm.json";
  // false: flush after every record; true: leave records in the stdio buffer.
  bool keep_region_records_buffered = false;
  // Name of the annotated input, used for output names and #line markers.
  std::string source_name = "input.c";
};

struct CodeFragment {
  SourcePosition position;
  std::string text;  // statements, one per line, no trailing newline

  friend bool operator==(const CodeFragment&, const CodeFragment&) = default;
};

enum class FileRole { Header, Source, BuildArtifact };

std::string_view to_string(FileRole role);

struct FileSpec {
  FileRole role = FileRole::Source;
  std::string path;     // relative to the output directory
  std::string content;  // for BuildArtifact, the manifest text

  friend bool operator==(const FileSpec&, const FileSpec&) = default;
};

/// Backend statements for one IR action.
Expected<CodeFragment> lower(const IrDirective& ir, const AnalysisResult& analysis,
                             const GenConfig& config);

/// Replaces each fragment's line with its text, indented like the line it
/// replaces. Every other line is copied unchanged. `source_name` feeds the
/// #line markers emitted after multi-line fragments.
Expected<std::string> render(std::string_view original_source,
                             const std::vector<CodeFragment>& fragments,
                             std::string_view source_name);

/// Header, instrumented source and build manifest, in that order.
/// Precondition: analysis.ok().
Expected<std::vector<FileSpec>> generate(const AnalysisResult& analysis,
                                         std::string_view original_source,
                                         const GenConfig& config);

/// `matmul.c` -> `matmul`.
std::string output_stem(std::string_view source_name);

/// Parsed build manifest. Keys: backend, source, header, include_dirs,
/// link, output, json.
using BuildManifest = std::map<std::string, std::string>;

std::string render_manifest(const BuildManifest& manifest);
BuildManifest parse_manifest(std::string_view text);

/// The soft-backend runtime ABI. Generated headers embed these prototypes;
/// runtime/edpm_soft.h declares the same functions for shim implementers.
std::string_view soft_runtime_prototypes();

}  // namespace edpm
