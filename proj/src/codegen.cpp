#include "edpm/codegen.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>

namespace edpm {
namespace {

constexpr std::string_view kSoftPrototypes =
    R"(void edpm_soft_init(const char *path, int buffered);
void edpm_soft_finalize(void);
int edpm_soft_create_eventset(const char *const *events, int count);
void edpm_soft_destroy_eventset(int eventset);
void edpm_soft_start(int eventset);
void edpm_soft_stop(int eventset);
void edpm_soft_pause(int eventset);
void edpm_soft_resume(int eventset);
void edpm_soft_read(int eventset, long long *values);
void edpm_soft_tick(const char *counter, long long amount);
void edpm_soft_emit(const char *region, long long temporal_id,
                    const char *const *counters, const long long *values, int count);
)";

// JSON record writer for the papi backend. The soft backend delegates the
// same job to the runtime shim.
constexpr std::string_view kPapiHelpers =
    R"(static FILE *__edpm_out;
static long long __edpm_records;

static inline void __edpm_fail(const char *call, int code)
{
    fprintf(stderr, "edpm: %s failed: %s\n", call, PAPI_strerror(code));
    exit(EXIT_FAILURE);
}

static inline void __edpm_check(int code, const char *call)
{
    if (code != PAPI_OK)
        __edpm_fail(call, code);
}

static inline void __edpm_open(const char *path)
{
    const char *override_path = getenv("EDPM_OUTPUT");
    if (override_path != NULL && override_path[0] != '\0')
        path = override_path;
    __edpm_out = fopen(path, "w");
    if (__edpm_out == NULL) {
        fprintf(stderr, "edpm: cannot open output '%s'\n", path);
        exit(EXIT_FAILURE);
    }
    fputs("[", __edpm_out);
}

static inline void __edpm_emit(const char *region, long long temporal_id,
                               const char *const *counters, const long long *values,
                               int count, int buffered)
{
    int i;
    if (__edpm_out == NULL)
        return;
    fprintf(__edpm_out, "%s{\"name\":\"%s\",\"temporal-id\":%lld,\"counters\":{",
            __edpm_records++ ? ",\n" : "", region, temporal_id);
    for (i = 0; i < count; ++i)
        fprintf(__edpm_out, "%s\"%s\":%lld", i ? "," : "", counters[i], values[i]);
    fputs("}}", __edpm_out);
    if (!buffered)
        fflush(__edpm_out);
}

static inline void __edpm_close(void)
{
    if (__edpm_out == NULL)
        return;
    fputs("]\n", __edpm_out);
    fclose(__edpm_out);
    __edpm_out = NULL;
}
)";

std::string c_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string region_names_binding(const std::string& region) {
  return "__edpm_rn_" + sanitize_region_name(region);
}
std::string block_events_binding(int block) { return "__edpm_ev_" + std::to_string(block); }
std::string block_scratch_binding(int block) { return "__edpm_sv_" + std::to_string(block); }

class Lines {
 public:
  template <typename... Args>
  void add(fmt::format_string<Args...> f, Args&&... args) {
    if (!text_.empty()) text_ += '\n';
    text_ += fmt::format(f, std::forward<Args>(args)...);
  }
  std::string take() { return std::move(text_); }

 private:
  std::string text_;
};

std::string leading_whitespace(std::string_view line) {
  std::size_t n = 0;
  while (n < line.size() && (line[n] == ' ' || line[n] == '\t')) ++n;
  return std::string(line.substr(0, n));
}

std::string guard_for(std::string_view stem) {
  std::string out = "EDPM_GENERATED_";
  for (char c : stem) {
    out += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c)) : '_';
  }
  return out + "_H";
}

std::string dotted_list(const CounterSet& counters) {
  std::string out;
  for (std::size_t i = 0; i < counters.size(); ++i) {
    if (i) out += ", ";
    out += c_string(counters[i].dotted());
  }
  return out;
}

std::string header_text(const AnalysisResult& analysis, const GenConfig& config,
                        std::string_view stem) {
  const bool papi = config.backend == Backend::Papi;
  std::string guard = guard_for(stem);
  std::string out;
  out += fmt::format("/* Generated by edpm from {} ({} backend). Do not edit. */\n",
                     config.source_name, to_string(config.backend));
  out += fmt::format("#ifndef {0}\n#define {0}\n\n", guard);
  out += "#include <stdio.h>\n#include <stdlib.h>\n#include <string.h>\n";
  if (papi) {
    out += "#include <papi.h>\n\n";
    out += kPapiHelpers;
  } else {
    out += "\n#define EDPM_SOFT_BACKEND 1\n";
    out += "#define EDPM_TICK(counter, amount) edpm_soft_tick((counter), (amount))\n\n";
    out += kSoftPrototypes;
  }

  for (const auto& block : analysis.blocks) {
    const auto n = block.counters.size();
    out += fmt::format("\n/* block {}: lines {}-{} */\n", block.ordinal, block.span.start.line,
                       block.span.stop.line);
    out += fmt::format("static int {}{};\n", block.eventset_binding, papi ? " = PAPI_NULL" : "");
    out += fmt::format("static long long {}[{}];\n", block.values_binding, n);
    if (papi) out += fmt::format("static long long {}[{}];\n", block_scratch_binding(block.ordinal), n);
    // Event names per block are only needed by the soft backend's eventset
    // constructor; papi adds events one call at a time.
    if (!papi) {
      out += fmt::format("static const char *const {}[{}] = {{{}}};\n",
                         block_events_binding(block.ordinal), n, dotted_list(block.counters));
    }
  }

  for (const auto* region : analysis.regions_in_source_order()) {
    const auto n = region->counters.size();
    out += fmt::format("\n/* region {}: lines {}-{}, block {} */\n", region->name,
                       region->span.start.line, region->span.stop.line,
                       region->block_index.block_ordinal);
    out += fmt::format("static long long {}[{}];\n", region->values_binding, n);
    out += fmt::format("static const char *const {}[{}] = {{{}}};\n",
                       region_names_binding(region->name), n, dotted_list(region->counters));
    out += fmt::format("static long long {};\n", region->temporal_binding);
  }

  out += fmt::format("\n#endif /* {} */\n", guard);
  return out;
}

}  // namespace

std::string_view to_string(FileRole role) {
  switch (role) {
    case FileRole::Header: return "header";
    case FileRole::Source: return "source";
    case FileRole::BuildArtifact: return "build-artifact";
  }
  return "?";
}

std::string_view soft_runtime_prototypes() { return kSoftPrototypes; }

std::string output_stem(std::string_view source_name) {
  auto slash = source_name.find_last_of('/');
  if (slash != std::string_view::npos) source_name.remove_prefix(slash + 1);
  auto dot = source_name.find_last_of('.');
  if (dot != std::string_view::npos && dot > 0) source_name = source_name.substr(0, dot);
  return std::string(source_name);
}

Expected<CodeFragment> lower(const IrDirective& ir, const AnalysisResult& analysis,
                             const GenConfig& config) {
  const bool papi = config.backend == Backend::Papi;
  Lines lines;

  const Block* block = ir.block ? &analysis.blocks.at(static_cast<std::size_t>(*ir.block)) : nullptr;
  const RegionInfo* region = ir.region.empty() ? nullptr : &analysis.region_table.at(ir.region);

  switch (ir.action) {
    case IrAction::LibInit:
      if (papi) {
        lines.add("if (PAPI_library_init(PAPI_VER_CURRENT) != PAPI_VER_CURRENT)");
        lines.add("    __edpm_fail(\"PAPI_library_init\", PAPI_EINVAL);");
        for (const auto& b : analysis.blocks) {
          lines.add("__edpm_check(PAPI_create_eventset(&{}), \"PAPI_create_eventset\");",
                    b.eventset_binding);
          for (auto id : b.counters) {
            auto event = backend_event(Backend::Papi, id);
            if (!event) {
              auto error = event.error();
              error.line = b.span.start.line;
              return error;
            }
            lines.add("__edpm_check(PAPI_add_named_event({}, {}), \"PAPI_add_named_event\");",
                      b.eventset_binding, c_string(*event));
          }
        }
        lines.add("__edpm_open({});", c_string(config.json_output_path));
      } else {
        lines.add("edpm_soft_init({}, {});", c_string(config.json_output_path),
                  config.keep_region_records_buffered ? 1 : 0);
        for (const auto& b : analysis.blocks) {
          lines.add("{} = edpm_soft_create_eventset({}, {});", b.eventset_binding,
                    block_events_binding(b.ordinal), b.counters.size());
        }
      }
      break;

    case IrAction::LibDeinit:
      for (const auto& b : analysis.blocks) {
        if (papi) {
          lines.add("__edpm_check(PAPI_cleanup_eventset({}), \"PAPI_cleanup_eventset\");",
                    b.eventset_binding);
          lines.add("__edpm_check(PAPI_destroy_eventset(&{}), \"PAPI_destroy_eventset\");",
                    b.eventset_binding);
        } else {
          lines.add("edpm_soft_destroy_eventset({});", b.eventset_binding);
        }
      }
      if (papi) {
        lines.add("PAPI_shutdown();");
        lines.add("__edpm_close();");
      } else {
        lines.add("edpm_soft_finalize();");
      }
      break;

    case IrAction::BlockCreate:
      lines.add("memset({0}, 0, sizeof {0});", block->values_binding);
      break;

    case IrAction::BlockStart:
    case IrAction::BlockResume:
      if (papi) {
        lines.add("__edpm_check(PAPI_start({}), \"PAPI_start\");", block->eventset_binding);
      } else if (ir.action == IrAction::BlockStart) {
        lines.add("edpm_soft_start({});", block->eventset_binding);
      } else {
        lines.add("edpm_soft_resume({});", block->eventset_binding);
      }
      break;

    case IrAction::BlockAccumulate:
      if (papi) {
        lines.add("__edpm_check(PAPI_accum({}, {}), \"PAPI_accum\");", block->eventset_binding,
                  block->values_binding);
      } else {
        lines.add("edpm_soft_read({}, {});", block->eventset_binding, block->values_binding);
      }
      break;

    case IrAction::BlockPause:
      if (papi) {
        lines.add("__edpm_check(PAPI_stop({}, {}), \"PAPI_stop\");", block->eventset_binding,
                  block_scratch_binding(block->ordinal));
      } else {
        lines.add("edpm_soft_pause({});", block->eventset_binding);
      }
      break;

    case IrAction::BlockStopDestroy:
      if (papi) {
        const auto scratch = block_scratch_binding(block->ordinal);
        lines.add("__edpm_check(PAPI_stop({}, {}), \"PAPI_stop\");", block->eventset_binding,
                  scratch);
        for (std::size_t i = 0; i < block->counters.size(); ++i) {
          lines.add("{0}[{1}] += {2}[{1}];", block->values_binding, i, scratch);
        }
      } else {
        lines.add("edpm_soft_read({}, {});", block->eventset_binding, block->values_binding);
        lines.add("edpm_soft_stop({});", block->eventset_binding);
      }
      break;

    case IrAction::RegionCopyStart: {
      const auto& indices = region->block_index.indices;
      for (std::size_t k = 0; k < indices.size(); ++k) {
        lines.add("{}[{}] = {}[{}];", region->values_binding, k, block->values_binding,
                  indices[k]);
      }
      break;
    }

    case IrAction::RegionComputeEmit: {
      const auto& indices = region->block_index.indices;
      for (std::size_t k = 0; k < indices.size(); ++k) {
        lines.add("{0}[{1}] = {2}[{3}] - {0}[{1}];", region->values_binding, k,
                  block->values_binding, indices[k]);
      }
      if (papi) {
        lines.add("__edpm_emit({}, {}, {}, {}, {}, {});", c_string(region->name),
                  region->temporal_binding, region_names_binding(region->name),
                  region->values_binding, indices.size(),
                  config.keep_region_records_buffered ? 1 : 0);
      } else {
        lines.add("edpm_soft_emit({}, {}, {}, {}, {});", c_string(region->name),
                  region->temporal_binding, region_names_binding(region->name),
                  region->values_binding, indices.size());
      }
      break;
    }

    case IrAction::RegionBumpTemporal:
      lines.add("++{};", region->temporal_binding);
      break;
  }
  return CodeFragment{ir.position, lines.take()};
}

Expected<std::string> render(std::string_view original_source,
                             const std::vector<CodeFragment>& fragments,
                             std::string_view source_name) {
  std::map<int, const CodeFragment*> by_line;
  for (const auto& fragment : fragments) {
    auto [it, inserted] = by_line.emplace(fragment.position.line, &fragment);
    if (!inserted) {
      return Diagnostic{DiagCode::PositionCollision, fragment.position.line,
                        "two fragments target the same line"};
    }
  }

  const auto lines = split_lines(original_source);
  if (!by_line.empty() && by_line.rbegin()->first > static_cast<int>(lines.size())) {
    return Diagnostic{DiagCode::PositionCollision, by_line.rbegin()->first,
                      "fragment targets a line past the end of the source"};
  }

  std::string out;
  out.reserve(original_source.size() * 2);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line_number = static_cast<int>(i) + 1;
    auto it = by_line.find(line_number);
    if (it == by_line.end()) {
      out += lines[i];
    } else {
      const auto indent = leading_whitespace(lines[i]);
      auto text_lines = split_lines(it->second->text);
      for (std::size_t k = 0; k < text_lines.size(); ++k) {
        if (k) out += '\n';
        out += indent;
        out += text_lines[k];
      }
      if (text_lines.size() > 1 && i + 1 < lines.size()) {
        out += fmt::format("\n#line {} {}", line_number + 1, c_string(source_name));
      }
    }
    if (i + 1 < lines.size()) out += '\n';
  }
  if (!original_source.empty() && original_source.back() == '\n') out += '\n';
  return out;
}

std::string render_manifest(const BuildManifest& manifest) {
  std::string out = "# edpm build manifest\n";
  for (const auto& [key, value] : manifest) out += key + "=" + value + "\n";
  return out;
}

BuildManifest parse_manifest(std::string_view text) {
  BuildManifest manifest;
  for (auto line : split_lines(text)) {
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    manifest[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
  }
  return manifest;
}

Expected<std::vector<FileSpec>> generate(const AnalysisResult& analysis,
                                         std::string_view original_source,
                                         const GenConfig& config) {
  const auto stem = output_stem(config.source_name);
  const auto header_name = stem + ".edpm.h";
  const auto source_name = stem + ".edpm.c";

  // One merged fragment per pragma line, statements in IR order.
  std::vector<CodeFragment> fragments;
  for (const auto& ir : analysis.ir) {
    auto lowered = lower(ir, analysis, config);
    if (!lowered) return lowered.error();
    if (!fragments.empty() && fragments.back().position == ir.position) {
      auto& text = fragments.back().text;
      if (!text.empty() && !lowered->text.empty()) text += '\n';
      text += lowered->text;
    } else {
      fragments.push_back(*lowered);
    }
  }

  auto body = render(original_source, fragments, config.source_name);
  if (!body) return body.error();

  std::string source = fmt::format("#include {}\n#line 1 {}\n", c_string(header_name),
                                   c_string(config.source_name));
  source += *body;

  BuildManifest manifest{
      {"backend", std::string(to_string(config.backend))},
      {"source", source_name},
      {"header", header_name},
      {"include_dirs", "."},
      {"link", config.backend == Backend::Papi ? "papi" : "edpm_soft"},
      {"output", stem + ".edpm"},
      {"json", config.json_output_path},
  };

  std::vector<FileSpec> files;
  files.push_back(FileSpec{FileRole::Header, header_name, header_text(analysis, config, stem)});
  files.push_back(FileSpec{FileRole::Source, source_name, std::move(source)});
  files.push_back(FileSpec{FileRole::BuildArtifact, stem + ".edpm.build", render_manifest(manifest)});
  return files;
}

}  // namespace edpm
