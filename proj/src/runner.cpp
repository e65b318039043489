#include "edpm/runner.hpp"

#include <fmt/format.h>
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <sstream>

#include "edpm/reader.hpp"

namespace edpm {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::optional<double> ratio(int num, int den) {
  if (den <= 0) return std::nullopt;
  return static_cast<double>(num) / den;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::string first_word(const std::string& command) {
  auto begin = command.find_first_not_of(" \t");
  if (begin == std::string::npos) return {};
  auto end = command.find_first_of(" \t", begin);
  return command.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
}

void require_compiler(const std::string& compiler) {
  auto word = first_word(compiler);
  if (word.empty() ||
      run_command("command -v " + shell_quote(word) + " >/dev/null 2>&1").exit_code != 0) {
    throw Error(Error::Kind::CompilerNotFound, "C compiler '" + compiler + "' not found");
  }
}

fs::path resolve_shim(const RunConfig& config) {
  if (!config.shim.empty()) return config.shim;
  if (const char* env = std::getenv("EDPM_SHIM"); env && *env) return env;
  return {};
}

std::string format_diagnostics(const Diagnostics& diags, std::string_view file) {
  std::string out;
  for (const auto& d : diags) {
    out += format(d, file);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string shell_quote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += '\'';
  return out;
}

CommandResult run_command(const std::string& command) {
  CommandResult result;
  std::string full = command + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) {
    result.exit_code = -1;
    result.output = "popen failed";
    return result;
  }
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  int status = pclose(pipe);
  if (status == -1) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  }
  return result;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::Io, "cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Error::Kind::Io, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string resolve_compiler(const RunConfig& config) {
  if (!config.compiler_command.empty()) return config.compiler_command;
  if (const char* env = std::getenv("CC"); env && *env) return env;
  return "cc";
}

std::vector<FileSpec> precompile_text(std::string_view source, const std::string& source_name,
                                      const RunConfig& config) {
  auto scanned = scan(source);
  auto analysis = analyze(scanned.directives);
  Diagnostics all = scanned.errors;
  all.insert(all.end(), analysis.diagnostics.begin(), analysis.diagnostics.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  if (!all.empty()) {
    throw Error(Error::Kind::Diagnostics, format_diagnostics(all, source_name));
  }

  GenConfig gen;
  gen.backend = config.backend;
  gen.json_output_path = config.json_path.string();
  gen.keep_region_records_buffered = config.keep_region_records_buffered;
  gen.source_name = source_name;
  auto files = generate(analysis, source, gen);
  if (!files) {
    throw Error(Error::Kind::Diagnostics, format_diagnostics({files.error()}, source_name));
  }
  return *files;
}

std::vector<FileSpec> precompile(const RunConfig& config) {
  auto source = read_file(config.input_path);
  auto files = precompile_text(source, config.input_path.filename().string(), config);
  for (const auto& file : files) write_file(config.output_dir / file.path, file.content);
  return files;
}

fs::path build(const std::vector<FileSpec>& files, const RunConfig& config) {
  const FileSpec* manifest_file = nullptr;
  for (const auto& file : files) {
    if (file.role == FileRole::BuildArtifact) manifest_file = &file;
    if (!fs::exists(config.output_dir / file.path)) {
      write_file(config.output_dir / file.path, file.content);
    }
  }
  if (manifest_file == nullptr) {
    throw Error(Error::Kind::CompileFailed, "no build manifest among the generated files");
  }
  auto manifest = parse_manifest(manifest_file->content);

  const auto compiler = resolve_compiler(config);
  require_compiler(compiler);

  const fs::path dir = config.output_dir;
  const fs::path executable = fs::absolute(dir / manifest["output"]);
  std::string command = compiler + " " + config.cflags;
  command += " -I" + shell_quote((dir / manifest["include_dirs"]).string());
  command += " -o " + shell_quote(executable.string());
  command += " " + shell_quote((dir / manifest["source"]).string());

  if (manifest["link"] == "edpm_soft") {
    auto shim = resolve_shim(config);
    if (shim.empty() || !fs::exists(shim)) {
      throw Error(Error::Kind::CompileFailed,
                  "missing soft-backend runtime (edpm_soft shim) '" + shim.string() +
                      "'; pass --shim <edpm_soft.c|libedpm_soft.a> or set EDPM_SHIM");
    }
    command += " " + shell_quote(fs::absolute(shim).string());
  } else if (manifest["link"] == "papi") {
    auto probe = run_command("echo '#include <papi.h>' | " + compiler + " -E -x c - >/dev/null");
    if (probe.exit_code != 0) {
      throw Error(Error::Kind::BackendMissing,
                  "the papi backend needs a PAPI installation (papi.h not found); "
                  "use --emit-only to generate code without building");
    }
    command += " -lpapi";
  } else if (!manifest["link"].empty()) {
    command += " -l" + manifest["link"];
  }

  auto result = run_command(command);
  if (result.exit_code != 0) {
    throw Error(Error::Kind::CompileFailed,
                "compilation failed (" + command + "):\n" + result.output);
  }
  return executable;
}

std::vector<RegionRecord> parse_records(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(Error::Kind::CollectFailed, std::string("record file is not JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(Error::Kind::CollectFailed, "record file is not a JSON array");

  std::vector<RegionRecord> records;
  records.reserve(doc.size());
  for (const auto& item : doc) {
    auto bad = [&](const std::string& why) {
      return Error(Error::Kind::CollectFailed, "malformed record " + item.dump() + ": " + why);
    };
    if (!item.is_object() || item.size() != 3 || !item.contains("name") ||
        !item.contains("temporal-id") || !item.contains("counters")) {
      throw bad("expected exactly the keys name, temporal-id, counters");
    }
    const auto& name = item["name"];
    const auto& tid = item["temporal-id"];
    const auto& counters = item["counters"];
    if (!name.is_string()) throw bad("name is not a string");
    if (!tid.is_number_integer() || tid.get<std::int64_t>() < 0) {
      throw bad("temporal-id is not a non-negative integer");
    }
    if (!counters.is_object()) throw bad("counters is not an object");
    RegionRecord record{name.get<std::string>(), tid.get<std::int64_t>(), {}};
    for (const auto& [key, value] : counters.items()) {
      if (!value.is_number_integer()) throw bad("counter '" + key + "' is not an integer");
      record.counters[key] = value.get<std::int64_t>();
    }
    records.push_back(std::move(record));
  }
  return records;
}

RegionTotals aggregate(const std::vector<RegionRecord>& records) {
  RegionTotals totals;
  for (const auto& record : records) {
    auto& region = totals[record.name];
    for (const auto& [counter, value] : record.counters) region[counter] += value;
  }
  return totals;
}

RunReport run_and_collect(const fs::path& executable, const RunConfig& config) {
  RunReport report;
  const auto json_path = fs::absolute(config.json_path);
  const int reps = std::max(1, config.repetitions);
  for (int rep = 0; rep < reps; ++rep) {
    std::error_code ignored;
    fs::remove(json_path, ignored);
    const auto command =
        "EDPM_OUTPUT=" + shell_quote(json_path.string()) + " " + shell_quote(executable.string());
    const auto begin = std::chrono::steady_clock::now();
    auto result = run_command(command);
    const auto end = std::chrono::steady_clock::now();
    if (result.exit_code != 0) {
      throw Error(Error::Kind::ExecFailed, fmt::format("'{}' exited with code {}:\n{}",
                                                       executable.string(), result.exit_code,
                                                       result.output));
    }
    report.wall_times_ms.push_back(std::chrono::duration<double, std::milli>(end - begin).count());
    if (!fs::exists(json_path)) {
      throw Error(Error::Kind::CollectFailed,
                  "program produced no record file at '" + json_path.string() + "'");
    }
    report.records = parse_records(read_file(json_path));
  }
  report.per_region_totals = aggregate(report.records);
  return report;
}

int count_nonblank_lines(std::string_view text) {
  int n = 0;
  for (auto line : split_lines(text)) {
    if (line.find_first_not_of(" \t\r\v\f") != std::string_view::npos) ++n;
  }
  return n;
}

int count_pragma_lines(std::string_view text) {
  int n = 0;
  for (auto line : split_lines(text)) {
    if (is_edpm_pragma(line)) ++n;
  }
  return n;
}

LocReport loc_report(std::string_view original_source, const std::vector<FileSpec>& generated) {
  LocReport report;
  report.annotation_loc = count_pragma_lines(original_source);
  report.original_loc = count_nonblank_lines(original_source);
  for (const auto& file : generated) {
    if (file.role != FileRole::BuildArtifact) report.generated_loc += count_nonblank_lines(file.content);
  }
  const int app_loc = report.original_loc - report.annotation_loc;
  report.instrumentation_loc = report.generated_loc - app_loc;
  report.generated_per_annotation = ratio(report.generated_loc, report.annotation_loc);
  report.generated_per_original = ratio(report.generated_loc, report.original_loc);
  report.instrumentation_per_annotation = ratio(report.instrumentation_loc, report.annotation_loc);
  return report;
}

LocReport loc_report_file(const fs::path& original_path, const std::vector<FileSpec>& generated) {
  return loc_report(read_file(original_path), generated);
}

CorpusLocReport corpus_loc_report(const fs::path& corpus_dir, Backend backend) {
  CorpusLocReport report;
  RunConfig config;
  config.backend = backend;

  std::map<std::string, std::vector<double>> instr_ratios;
  std::map<std::string, std::vector<double>> papi_ratios;
  std::map<std::string, int> static_annotation;

  for (const std::string set : {"static", "dynamic"}) {
    for (const std::string cfg : {"e1", "e2", "e3", "e4"}) {
      const auto path = corpus_dir / set / (cfg + ".c");
      const auto source = read_file(path);
      CorpusEntry entry;
      entry.set = set;
      entry.config = cfg;
      entry.edpm = loc_report(source, precompile_text(source, path.filename().string(), config));
      entry.app_loc = entry.edpm.original_loc - entry.edpm.annotation_loc;

      const auto ll = corpus_dir / "papi-ll" / set / (cfg + ".c");
      if (fs::exists(ll)) {
        entry.papi_low_level_loc = count_nonblank_lines(read_file(ll)) - entry.app_loc;
        entry.papi_low_level_per_edpm =
            ratio(*entry.papi_low_level_loc, entry.edpm.annotation_loc);
        if (entry.papi_low_level_per_edpm) papi_ratios[set].push_back(*entry.papi_low_level_per_edpm);
      }
      const auto hl = corpus_dir / "papi-hl" / set / (cfg + ".c");
      if (fs::exists(hl)) entry.papi_high_level_loc = count_nonblank_lines(read_file(hl)) - entry.app_loc;

      if (entry.edpm.instrumentation_per_annotation) {
        instr_ratios[set].push_back(*entry.edpm.instrumentation_per_annotation);
      }
      if (set == "static") {
        static_annotation[cfg] = entry.edpm.annotation_loc;
      } else if (static_annotation[cfg] != entry.edpm.annotation_loc) {
        report.mismatches.push_back(fmt::format("{}: static {} vs dynamic {} annotation lines", cfg,
                                                static_annotation[cfg],
                                                entry.edpm.annotation_loc));
      }
      report.entries.push_back(std::move(entry));
    }
  }
  for (const auto& [set, values] : instr_ratios) report.mean_instrumentation_per_annotation[set] = mean(values);
  for (const auto& [set, values] : papi_ratios) report.mean_papi_low_level_per_edpm[set] = mean(values);
  report.annotation_loc_identical = report.mismatches.empty();
  return report;
}

std::string to_json(const LocReport& r) {
  json j;
  j["annotation_loc"] = r.annotation_loc;
  j["original_loc"] = r.original_loc;
  j["generated_loc"] = r.generated_loc;
  j["instrumentation_loc"] = r.instrumentation_loc;
  j["generated_per_annotation"] = optional_json(r.generated_per_annotation);
  j["generated_per_original"] = optional_json(r.generated_per_original);
  j["instrumentation_per_annotation"] = optional_json(r.instrumentation_per_annotation);
  return j.dump(2);
}

std::string to_json(const CorpusLocReport& r) {
  json j;
  j["entries"] = json::array();
  for (const auto& e : r.entries) {
    json entry;
    entry["set"] = e.set;
    entry["config"] = e.config;
    entry["edpm"] = json::parse(to_json(e.edpm));
    entry["app_loc"] = e.app_loc;
    entry["papi_low_level_loc"] = e.papi_low_level_loc ? json(*e.papi_low_level_loc) : json(nullptr);
    entry["papi_high_level_loc"] = e.papi_high_level_loc ? json(*e.papi_high_level_loc) : json(nullptr);
    entry["papi_low_level_per_edpm"] = optional_json(e.papi_low_level_per_edpm);
    j["entries"].push_back(std::move(entry));
  }
  j["mean_instrumentation_per_annotation"] = r.mean_instrumentation_per_annotation;
  j["mean_papi_low_level_per_edpm"] = r.mean_papi_low_level_per_edpm;
  j["annotation_loc_identical"] = r.annotation_loc_identical;
  j["mismatches"] = r.mismatches;
  j["reference"] = {{"generated_per_annotation", {{"static", 12.69}, {"dynamic", 13.15}}},
                    {"papi_low_level_per_edpm", {3.3, 4.3}},
                    {"note", "reference ratios are informational; they depend on the "
                             "generator's output style and on hand-written comparison code"}};
  return j.dump(2);
}

std::string to_json(const RunReport& r) {
  json j;
  j["records"] = json::array();
  for (const auto& rec : r.records) {
    j["records"].push_back({{"name", rec.name}, {"temporal-id", rec.temporal_id}, {"counters", rec.counters}});
  }
  j["per_region_totals"] = r.per_region_totals;
  j["wall_times_ms"] = r.wall_times_ms;
  return j.dump(2);
}

std::string to_json(const BenchReport& r) {
  json j;
  j["instrumented_ms"] = r.instrumented_ms;
  j["baseline_ms"] = r.baseline_ms;
  j["instrumented_mean_ms"] = r.instrumented_mean_ms;
  j["baseline_mean_ms"] = r.baseline_mean_ms;
  j["overhead"] = r.overhead;
  return j.dump(2);
}

std::string to_table(const CorpusLocReport& r) {
  auto fmt_ratio = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.2f}", *v) : std::string("-");
  };
  auto fmt_int = [](const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  std::string out = fmt::format("{:<8} {:<6} {:>6} {:>6} {:>9} {:>7} {:>9} {:>8} {:>8} {:>7}\n",
                                "set", "config", "edpm", "app", "generated", "instr",
                                "instr/ann", "papi-ll", "papi-hl", "ll/edpm");
  for (const auto& e : r.entries) {
    out += fmt::format("{:<8} {:<6} {:>6} {:>6} {:>9} {:>7} {:>9} {:>8} {:>8} {:>7}\n", e.set,
                       e.config, e.edpm.annotation_loc, e.app_loc, e.edpm.generated_loc,
                       e.edpm.instrumentation_loc, fmt_ratio(e.edpm.instrumentation_per_annotation),
                       fmt_int(e.papi_low_level_loc), fmt_int(e.papi_high_level_loc),
                       fmt_ratio(e.papi_low_level_per_edpm));
  }
  out += "\n";
  for (const auto& [set, value] : r.mean_instrumentation_per_annotation) {
    out += fmt::format("mean instrumentation/annotation ({}): {:.2f}  (reference: {})\n", set, value,
                       set == "static" ? "12.69" : "13.15");
  }
  for (const auto& [set, value] : r.mean_papi_low_level_per_edpm) {
    out += fmt::format("mean papi-low-level/edpm ({}): {:.2f}  (reference: 3.3-4.3)\n", set, value);
  }
  out += fmt::format("annotation LOC identical across static and dynamic sets: {}\n",
                     r.annotation_loc_identical ? "yes" : "no");
  for (const auto& m : r.mismatches) out += "  mismatch: " + m + "\n";
  out += "Reference ratios are context only: they depend on generator output style and on\n"
         "the hand-written comparison programs, so no tolerance is applied.\n";
  return out;
}

std::string to_table(const RunReport& r) {
  std::string out = fmt::format("{:<24} {:<32} {:>14}\n", "region", "counter", "total");
  for (const auto& [region, counters] : r.per_region_totals) {
    for (const auto& [counter, value] : counters) {
      out += fmt::format("{:<24} {:<32} {:>14}\n", region, counter, value);
    }
  }
  out += fmt::format("{} records; wall time mean {:.3f} ms over {} run(s)\n", r.records.size(),
                     mean(r.wall_times_ms), r.wall_times_ms.size());
  return out;
}

std::string strip_pragmas(std::string_view source) {
  std::string out;
  out.reserve(source.size());
  auto lines = split_lines(source);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_edpm_pragma(lines[i])) out += lines[i];
    if (i + 1 < lines.size()) out += '\n';
  }
  if (!source.empty() && source.back() == '\n') out += '\n';
  return out;
}

TransparencyResult check_transparency(const fs::path& source, const fs::path& work_dir,
                                      const RunConfig& config) {
  const auto compiler = resolve_compiler(config);
  require_compiler(compiler);
  const auto text = read_file(source);
  const auto name = source.filename();
  const auto stem = source.stem().string();

  // Same basename in both directories so embedded file names match.
  const auto annotated_src = work_dir / "annotated" / name;
  const auto stripped_src = work_dir / "stripped" / name;
  write_file(annotated_src, text);
  write_file(stripped_src, strip_pragmas(text));

  TransparencyResult result;
  result.annotated_binary = work_dir / "annotated" / stem;
  result.stripped_binary = work_dir / "stripped" / stem;
  for (const auto& [src, bin] : {std::pair{annotated_src, result.annotated_binary},
                                 std::pair{stripped_src, result.stripped_binary}}) {
    // Relative paths from inside each directory keep both command lines identical.
    const auto command = "cd " + shell_quote(src.parent_path().string()) + " && " + compiler +
                         " " + config.cflags + " -o " + shell_quote(stem) + " " +
                         shell_quote(name.string());
    auto r = run_command(command);
    if (r.exit_code != 0) {
      throw Error(Error::Kind::CompileFailed, "compilation failed (" + command + "):\n" + r.output);
    }
  }
  result.annotated_size = fs::file_size(result.annotated_binary);
  result.stripped_size = fs::file_size(result.stripped_binary);
  result.identical_bytes =
      read_file(result.annotated_binary) == read_file(result.stripped_binary);
  return result;
}

BenchReport bench(const RunConfig& config) {
  RunConfig instrumented = config;
  instrumented.backend = Backend::Soft;
  instrumented.emit_only = false;
  auto files = precompile(instrumented);
  auto exe = build(files, instrumented);

  const auto compiler = resolve_compiler(config);
  const auto baseline = fs::absolute(config.output_dir / (config.input_path.stem().string() + ".baseline"));
  auto compile = run_command(compiler + " " + config.cflags + " -o " + shell_quote(baseline.string()) +
                             " " + shell_quote(config.input_path.string()));
  if (compile.exit_code != 0) {
    throw Error(Error::Kind::CompileFailed, "baseline compilation failed:\n" + compile.output);
  }

  BenchReport report;
  const int reps = std::max(1, config.repetitions);
  const auto json_path = fs::absolute(config.json_path);
  // One untimed run of each warms the page cache. Then interleave the two
  // programs, alternating which goes first, so drift in machine load hits
  // both equally.
  for (const auto& exe_path : {exe, baseline}) {
    auto warm = run_command("EDPM_OUTPUT=" + shell_quote(json_path.string()) + " " +
                            shell_quote(exe_path.string()));
    if (warm.exit_code != 0) {
      throw Error(Error::Kind::ExecFailed, "benchmark program failed:\n" + warm.output);
    }
  }
  for (int rep = 0; rep < reps; ++rep) {
    const bool edpm_first = rep % 2 == 0;
    for (bool with_edpm : {edpm_first, !edpm_first}) {
      const auto command = "EDPM_OUTPUT=" + shell_quote(json_path.string()) + " " +
                           shell_quote((with_edpm ? exe : baseline).string());
      const auto begin = std::chrono::steady_clock::now();
      auto result = run_command(command);
      const auto end = std::chrono::steady_clock::now();
      if (result.exit_code != 0) {
        throw Error(Error::Kind::ExecFailed, "benchmark program failed:\n" + result.output);
      }
      const double ms = std::chrono::duration<double, std::milli>(end - begin).count();
      (with_edpm ? report.instrumented_ms : report.baseline_ms).push_back(ms);
    }
  }
  report.instrumented_mean_ms = mean(report.instrumented_ms);
  report.baseline_mean_ms = mean(report.baseline_ms);
  report.overhead = report.baseline_mean_ms > 0
                        ? report.instrumented_mean_ms / report.baseline_mean_ms - 1.0
                        : 0.0;
  return report;
}

}  // namespace edpm
