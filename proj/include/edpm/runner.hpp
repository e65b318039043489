// Runner: drives the precompiler, the system C compiler and the instrumented
// program, and turns the program's JSON records into reports.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edpm/analyzer.hpp"
#include "edpm/codegen.hpp"

namespace edpm {

struct RunConfig {
  std::filesystem::path input_path;
  Backend backend = Backend::Soft;
  bool emit_only = false;
  std::filesystem::path output_dir = "edpm-out";
  std::filesystem::path json_path = "edpm.json";
  std::string compiler_command;  // empty: $CC, then "cc"
  std::string cflags = "-O2";
  int repetitions = 1;
  // Soft-backend runtime: a C source or a static archive implementing
  // runtime/edpm_soft.h. Empty: $EDPM_SHIM.
  std::filesystem::path shim;
  bool keep_region_records_buffered = false;
};

struct RegionRecord {
  std::string name;
  std::int64_t temporal_id = 0;
  std::map<std::string, std::int64_t> counters;

  friend bool operator==(const RegionRecord&, const RegionRecord&) = default;
};

using RegionTotals = std::map<std::string, std::map<std::string, std::int64_t>>;

struct RunReport {
  std::vector<RegionRecord> records;  // from the last repetition
  RegionTotals per_region_totals;
  std::vector<double> wall_times_ms;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;  // stdout and stderr interleaved
};

/// Runs a shell command, capturing its output.
CommandResult run_command(const std::string& command);
std::string shell_quote(std::string_view text);

std::string resolve_compiler(const RunConfig& config);

/// Reads the input, analyzes it and writes the generated files under
/// output_dir. Throws Error(Diagnostics) listing every diagnostic as
/// `file:line: error: ...`.
std::vector<FileSpec> precompile(const RunConfig& config);

/// Same pipeline without touching the filesystem beyond reading the input.
std::vector<FileSpec> precompile_text(std::string_view source, const std::string& source_name,
                                      const RunConfig& config);

/// Compiles the generated files per their manifest. Returns the executable.
/// Throws Error(CompilerNotFound) or Error(CompileFailed).
std::filesystem::path build(const std::vector<FileSpec>& files, const RunConfig& config);

/// Runs the executable `repetitions` times with EDPM_OUTPUT pointing at
/// json_path and parses the records after every run.
/// Throws Error(ExecFailed) or Error(CollectFailed).
RunReport run_and_collect(const std::filesystem::path& executable, const RunConfig& config);

/// Parses a record file. Throws Error(CollectFailed) on malformed content.
std::vector<RegionRecord> parse_records(std::string_view json_text);

RegionTotals aggregate(const std::vector<RegionRecord>& records);

struct LocReport {
  int annotation_loc = 0;       // #pragma edpm lines
  int original_loc = 0;         // non-blank lines of the annotated file
  int generated_loc = 0;        // non-blank lines of generated header + source
  int instrumentation_loc = 0;  // generated_loc minus the application lines
  std::optional<double> generated_per_annotation;
  std::optional<double> generated_per_original;
  std::optional<double> instrumentation_per_annotation;
};

int count_nonblank_lines(std::string_view text);
int count_pragma_lines(std::string_view text);

LocReport loc_report(std::string_view original_source, const std::vector<FileSpec>& generated);
LocReport loc_report_file(const std::filesystem::path& original_path,
                          const std::vector<FileSpec>& generated);

/// One corpus configuration (E1..E4) within a sample set.
struct CorpusEntry {
  std::string set;     // "static" or "dynamic"
  std::string config;  // "e1".."e4"
  LocReport edpm;
  int app_loc = 0;                         // original_loc - annotation_loc
  std::optional<int> papi_low_level_loc;   // instrumentation lines
  std::optional<int> papi_high_level_loc;  // instrumentation lines
  std::optional<double> papi_low_level_per_edpm;
};

struct CorpusLocReport {
  std::vector<CorpusEntry> entries;
  // Per set: mean generated/annotation and PAPI-low-level/EDPM ratios.
  std::map<std::string, double> mean_instrumentation_per_annotation;
  std::map<std::string, double> mean_papi_low_level_per_edpm;
  bool annotation_loc_identical = false;
  std::vector<std::string> mismatches;
};

/// Expects <corpus>/{static,dynamic}/e{1..4}.c with PAPI comparison programs
/// in <corpus>/papi-ll/<set>/ and <corpus>/papi-hl/<set>/.
CorpusLocReport corpus_loc_report(const std::filesystem::path& corpus_dir, Backend backend);

std::string to_json(const LocReport& report);
std::string to_json(const CorpusLocReport& report);
std::string to_json(const RunReport& report);
std::string to_table(const CorpusLocReport& report);
std::string to_table(const RunReport& report);

/// Blanks every `#pragma edpm` line, keeping line numbers.
std::string strip_pragmas(std::string_view source);

struct TransparencyResult {
  std::filesystem::path annotated_binary;
  std::filesystem::path stripped_binary;
  std::uintmax_t annotated_size = 0;
  std::uintmax_t stripped_size = 0;
  bool identical_bytes = false;
};

/// Compiles the annotated file and its pragma-stripped twin with the plain
/// system compiler. Throws Error(CompileFailed) if either fails.
TransparencyResult check_transparency(const std::filesystem::path& source,
                                      const std::filesystem::path& work_dir,
                                      const RunConfig& config);

struct BenchReport {
  std::vector<double> instrumented_ms;
  std::vector<double> baseline_ms;
  double instrumented_mean_ms = 0;
  double baseline_mean_ms = 0;
  double overhead = 0;  // instrumented / baseline - 1
};

/// Builds the instrumented program (soft backend) and the uninstrumented
/// original with the same flags and times both.
BenchReport bench(const RunConfig& config);
std::string to_json(const BenchReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace edpm
