// edpm: precompile, build and run programs annotated with `#pragma edpm`.
//
//   edpm precompile matmul.c --backend papi -o out/
//   edpm build matmul.c --shim edpm_soft.c
//   edpm run matmul.c --shim edpm_soft.c --reps 3
//   edpm report --corpus corpus/
//   edpm bench corpus/bench/matmul256.c --shim edpm_soft.c --reps 10
//
// Exit codes: 0 success, 1 diagnostics or failed build/run, 2 environment
// failure (compiler or PAPI missing, unreadable files).

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <unistd.h>

#include "edpm/analyzer.hpp"
#include "edpm/catalog.hpp"
#include "edpm/codegen.hpp"
#include "edpm/reader.hpp"
#include "edpm/runner.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string input;
  std::string backend = "soft";
  bool emit_only = false;
  std::string output_dir;
  std::string json = "edpm.json";
  std::string cc;
  std::string cflags = "-O2";
  int reps = 1;
  std::string shim;
  bool keep_generated = false;
  bool buffered = false;
  bool dump_ir = false;
  std::string format = "table";
  std::string corpus;
  std::string records;
  bool transparency = false;
};

edpm::RunConfig to_config(const Options& o) {
  edpm::RunConfig c;
  c.input_path = o.input;
  auto backend = edpm::parse_backend(o.backend);
  if (!backend) throw CLI::ValidationError("--backend", "expected papi or soft");
  c.backend = *backend;
  c.emit_only = o.emit_only;
  c.output_dir = o.output_dir.empty() ? fs::path("edpm-out") : fs::path(o.output_dir);
  c.json_path = o.json;
  c.compiler_command = o.cc;
  c.cflags = o.cflags;
  c.repetitions = o.reps;
  c.shim = o.shim;
  c.keep_region_records_buffered = o.buffered;
  return c;
}

// Generated files go to a scratch directory unless -o or --keep-generated.
class OutputDir {
 public:
  OutputDir(edpm::RunConfig& config, const Options& o) {
    if (!o.output_dir.empty() || o.keep_generated) return;
    std::string pattern = (fs::temp_directory_path() / "edpm-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) {
      throw edpm::Error(edpm::Error::Kind::Io, "cannot create a temporary directory");
    }
    scratch_ = pattern;
    config.output_dir = scratch_;
  }
  ~OutputDir() {
    std::error_code ignored;
    if (!scratch_.empty()) fs::remove_all(scratch_, ignored);
  }
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

 private:
  fs::path scratch_;
};

void add_common(CLI::App* cmd, Options& o, bool needs_input = true) {
  if (needs_input) cmd->add_option("input", o.input, "Annotated C source")->required();
  cmd->add_option("--backend", o.backend, "Counter backend")
      ->check(CLI::IsMember({"papi", "soft"}));
  cmd->add_option("-o,--output-dir", o.output_dir, "Directory for generated files");
  cmd->add_option("--json", o.json, "Record file written by the instrumented program");
  cmd->add_flag("--buffered", o.buffered, "Buffer records instead of flushing each one");
}

void add_build(CLI::App* cmd, Options& o) {
  cmd->add_flag("--emit-only", o.emit_only, "Generate code without compiling");
  cmd->add_option("--cc", o.cc, "C compiler command (default: $CC, then cc)");
  cmd->add_option("--cflags", o.cflags, "Compiler flags");
  cmd->add_option("--shim", o.shim, "Soft-backend runtime (.c or .a); default $EDPM_SHIM");
  cmd->add_flag("--keep-generated", o.keep_generated, "Keep generated files in ./edpm-out");
}

int cmd_precompile(const Options& o) {
  auto config = to_config(o);
  if (o.dump_ir) {
    auto source = edpm::read_file(config.input_path);
    auto scanned = edpm::scan(source);
    auto analysis = edpm::analyze(scanned.directives);
    for (const auto& e : scanned.errors) std::cout << edpm::format(e, o.input) << '\n';
    std::cout << edpm::dump(analysis);
    return scanned.errors.empty() && analysis.ok() ? 0 : 1;
  }
  auto files = edpm::precompile(config);
  for (const auto& file : files) {
    std::cout << edpm::to_string(file.role) << ' ' << (config.output_dir / file.path).string() << '\n';
  }
  return 0;
}

int cmd_build(const Options& o) {
  auto config = to_config(o);
  auto files = edpm::precompile(config);
  if (config.emit_only) return 0;
  std::cout << edpm::build(files, config).string() << '\n';
  return 0;
}

int cmd_run(const Options& o) {
  auto config = to_config(o);
  OutputDir scratch(config, o);
  auto files = edpm::precompile(config);
  if (config.emit_only) return 0;
  auto exe = edpm::build(files, config);
  auto report = edpm::run_and_collect(exe, config);
  std::cout << (o.format == "json" ? edpm::to_json(report) + "\n" : edpm::to_table(report));
  return 0;
}

int cmd_report(const Options& o) {
  auto config = to_config(o);
  if (!o.corpus.empty()) {
    auto report = edpm::corpus_loc_report(o.corpus, config.backend);
    std::cout << (o.format == "json" ? edpm::to_json(report) + "\n" : edpm::to_table(report));
    return report.annotation_loc_identical ? 0 : 1;
  }
  if (!o.records.empty()) {
    edpm::RunReport report;
    report.records = edpm::parse_records(edpm::read_file(o.records));
    report.per_region_totals = edpm::aggregate(report.records);
    std::cout << (o.format == "json" ? edpm::to_json(report) + "\n" : edpm::to_table(report));
    return 0;
  }
  if (o.input.empty()) throw CLI::ValidationError("report", "give an input file, --corpus or --records");
  if (o.transparency) {
    std::string pattern = (fs::temp_directory_path() / "edpm-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) {
      throw edpm::Error(edpm::Error::Kind::Io, "cannot create a temporary directory");
    }
    auto result = edpm::check_transparency(o.input, pattern, config);
    std::error_code ignored;
    fs::remove_all(pattern, ignored);
    const bool same = result.annotated_size == result.stripped_size;
    std::cout << "annotated " << result.annotated_size << " bytes, stripped "
              << result.stripped_size << " bytes: " << (same ? "same size" : "SIZE DIFFERS")
              << (result.identical_bytes ? ", identical bytes" : "") << '\n';
    return same ? 0 : 1;
  }
  auto source = edpm::read_file(o.input);
  auto files = edpm::precompile_text(source, fs::path(o.input).filename().string(), config);
  auto report = edpm::loc_report(source, files);
  std::cout << edpm::to_json(report) << '\n';
  return 0;
}

int cmd_bench(const Options& o) {
  auto config = to_config(o);
  OutputDir scratch(config, o);
  auto report = edpm::bench(config);
  if (o.format == "json") {
    std::cout << edpm::to_json(report) << '\n';
  } else {
    std::cout << "instrumented mean " << report.instrumented_mean_ms << " ms, baseline mean "
              << report.baseline_mean_ms << " ms, overhead " << report.overhead * 100 << "% over "
              << report.instrumented_ms.size() << " runs\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edpm: pragma-driven performance monitoring precompiler"};
  app.require_subcommand(1);
  Options o;

  auto* precompile = app.add_subcommand("precompile", "Generate instrumented sources");
  add_common(precompile, o);
  precompile->add_flag("--emit-only", o.emit_only, "Accepted for symmetry; precompile never compiles");
  precompile->add_flag("--dump-ir", o.dump_ir, "Print blocks, regions and IR instead of writing files");

  auto* build = app.add_subcommand("build", "Precompile and compile");
  add_common(build, o);
  add_build(build, o);

  auto* run = app.add_subcommand("run", "Precompile, compile, execute and collect records");
  add_common(run, o);
  add_build(run, o);
  run->add_option("--reps", o.reps, "Repetitions")->check(CLI::PositiveNumber);
  run->add_option("--format", o.format)->check(CLI::IsMember({"table", "json"}));

  auto* report = app.add_subcommand("report", "LOC, record and transparency reports");
  add_common(report, o, false);
  report->add_option("input", o.input, "Annotated C source");
  report->add_option("--corpus", o.corpus, "Corpus directory with static/ and dynamic/ sets");
  report->add_option("--records", o.records, "Aggregate an existing record file");
  report->add_flag("--transparency", o.transparency,
                   "Compare binary size against the pragma-stripped source");
  report->add_option("--cc", o.cc, "C compiler command");
  report->add_option("--cflags", o.cflags, "Compiler flags");
  report->add_option("--format", o.format)->check(CLI::IsMember({"table", "json"}));

  auto* bench = app.add_subcommand("bench", "Time instrumented vs uninstrumented program");
  add_common(bench, o);
  add_build(bench, o);
  bench->add_option("--reps", o.reps, "Repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--format", o.format)->check(CLI::IsMember({"table", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (precompile->parsed()) return cmd_precompile(o);
    if (build->parsed()) return cmd_build(o);
    if (run->parsed()) return cmd_run(o);
    if (report->parsed()) return cmd_report(o);
    if (bench->parsed()) return cmd_bench(o);
  } catch (const edpm::Error& e) {
    std::cerr << e.what();
    if (std::string_view(e.what()).back() != '\n') std::cerr << '\n';
    return e.exit_code();
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "edpm: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
