#include "edpm/analyzer.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <utility>

namespace edpm {
namespace {

Diagnostic diag(DiagCode code, int line, std::string message) {
  return Diagnostic{code, line, std::move(message)};
}

std::string line_ref(int line) { return "line " + std::to_string(line); }

void check_counter_specs(const Directive& d, Diagnostics& out) {
  std::set<std::string> types;
  for (const auto& clause : d.clauses) {
    if (!types.insert(clause.counter_type).second) {
      out.push_back(diag(DiagCode::DuplicateCounterSpec, d.position.line,
                         "region '" + d.region_name + "' lists type '" + clause.counter_type +
                             "' more than once"));
      continue;
    }
    std::set<std::string> counters;
    for (const auto& counter : clause.counters) {
      if (!counters.insert(counter).second) {
        out.push_back(diag(DiagCode::DuplicateCounterSpec, d.position.line,
                           "region '" + d.region_name + "' lists counter '" +
                               clause.counter_type + "." + counter + "' more than once"));
      }
    }
  }
}

// Positions of `wanted` inside `block`; both sorted canonically.
std::vector<std::size_t> indices_into(const CounterSet& block, const CounterSet& wanted) {
  std::vector<std::size_t> out;
  out.reserve(wanted.size());
  std::size_t b = 0;
  for (auto id : wanted) {
    while (b < block.size() && block[b] < id) ++b;
    out.push_back(b);
  }
  return out;
}

}  // namespace

std::string_view to_string(IrAction action) {
  switch (action) {
    case IrAction::LibInit: return "lib-init";
    case IrAction::LibDeinit: return "lib-deinit";
    case IrAction::BlockCreate: return "block-create";
    case IrAction::BlockStart: return "block-start";
    case IrAction::BlockAccumulate: return "block-accumulate";
    case IrAction::BlockPause: return "block-pause";
    case IrAction::BlockResume: return "block-resume";
    case IrAction::BlockStopDestroy: return "block-stop-destroy";
    case IrAction::RegionCopyStart: return "region-copy-start";
    case IrAction::RegionComputeEmit: return "region-compute-emit";
    case IrAction::RegionBumpTemporal: return "region-bump-temporal";
  }
  return "?";
}

std::string sanitize_region_name(const std::string& name) {
  std::string out = name;
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

std::string eventset_binding(int block_ordinal) {
  return "__edpm_es_" + std::to_string(block_ordinal);
}
std::string block_values_binding(int block_ordinal) {
  return "__edpm_bv_" + std::to_string(block_ordinal);
}
std::string region_values_binding(const std::string& region) {
  return "__edpm_rv_" + sanitize_region_name(region);
}
std::string temporal_binding(const std::string& region) {
  return "__edpm_tid_" + sanitize_region_name(region);
}

Diagnostics validate(const std::vector<Directive>& directives) {
  Diagnostics out;
  if (directives.empty()) return out;

  std::optional<int> init_line;
  std::optional<int> deinit_line;
  for (const auto& d : directives) {
    if (d.kind == DirectiveKind::Init) {
      if (init_line) {
        out.push_back(diag(DiagCode::DuplicateInit, d.position.line,
                           "init already given at " + line_ref(*init_line)));
      } else {
        init_line = d.position.line;
      }
    } else if (d.kind == DirectiveKind::Deinit) {
      if (deinit_line) {
        out.push_back(diag(DiagCode::DuplicateDeinit, d.position.line,
                           "deinit already given at " + line_ref(*deinit_line)));
      } else {
        deinit_line = d.position.line;
      }
    }
  }
  if (!init_line) out.push_back(diag(DiagCode::MissingInit, 0, "no '#pragma edpm init'"));
  if (!deinit_line) out.push_back(diag(DiagCode::MissingDeinit, 0, "no '#pragma edpm deinit'"));
  if (init_line && deinit_line && *deinit_line < *init_line) {
    out.push_back(diag(DiagCode::DirectiveOutsideInitSpan, *deinit_line,
                       "deinit precedes init at " + line_ref(*init_line)));
  }

  std::map<std::string, int> first_start;
  std::map<std::string, std::string> sanitized_owner;
  std::map<std::string, std::vector<int>> open;  // name -> start lines still open

  for (const auto& d : directives) {
    if (d.kind == DirectiveKind::Init || d.kind == DirectiveKind::Deinit) continue;
    const int line = d.position.line;
    if ((init_line && line < *init_line) || (deinit_line && line > *deinit_line)) {
      out.push_back(diag(DiagCode::DirectiveOutsideInitSpan, line,
                         std::string(to_string(d.kind)) + " '" + d.region_name +
                             "' is outside the init/deinit span"));
    }

    if (d.kind == DirectiveKind::Start) {
      if (auto it = first_start.find(d.region_name); it != first_start.end()) {
        out.push_back(diag(DiagCode::DuplicateRegionName, line,
                           "region '" + d.region_name + "' already started at " +
                               line_ref(it->second)));
      } else {
        first_start.emplace(d.region_name, line);
        auto key = sanitize_region_name(d.region_name);
        auto [owner, inserted] = sanitized_owner.emplace(key, d.region_name);
        if (!inserted) {
          out.push_back(diag(DiagCode::RegionNameCollision, line,
                             "region '" + d.region_name + "' and region '" + owner->second +
                                 "' map to the same C identifier"));
        }
      }
      check_counter_specs(d, out);
      open[d.region_name].push_back(line);
    } else {
      auto it = open.find(d.region_name);
      if (it == open.end() || it->second.empty()) {
        out.push_back(diag(DiagCode::UnmatchedStop, line,
                           "stop '" + d.region_name + "' has no open start"));
      } else {
        it->second.pop_back();
      }
    }
  }

  std::vector<std::pair<int, std::string>> unclosed;
  for (const auto& [name, lines] : open) {
    for (int line : lines) unclosed.emplace_back(line, name);
  }
  std::sort(unclosed.begin(), unclosed.end());
  for (const auto& [line, name] : unclosed) {
    out.push_back(diag(DiagCode::UnclosedRegion, line, "region '" + name + "' is never stopped"));
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  return out;
}

NormalizeResult normalize(const std::vector<Directive>& directives) {
  NormalizeResult result;
  result.directives.reserve(directives.size());
  for (const auto& d : directives) {
    ExpandedDirective e{d.kind, d.region_name, {}, d.position};
    if (d.kind == DirectiveKind::Start) {
      if (d.clauses.empty()) e.counters = expand_all();
      for (const auto& clause : d.clauses) {
        auto resolved = resolve_clause(clause);
        if (!resolved) {
          auto error = resolved.error();
          error.line = d.position.line;
          result.errors.push_back(std::move(error));
          continue;
        }
        e.counters = set_union(e.counters, *resolved);
      }
    }
    result.directives.push_back(std::move(e));
  }
  return result;
}

std::vector<Block> collect_blocks(const std::vector<ExpandedDirective>& expanded) {
  std::vector<Block> blocks;
  std::set<std::string> active;
  Block current;
  for (const auto& d : expanded) {
    if (d.kind == DirectiveKind::Start) {
      if (active.empty()) {
        current = Block{};
        current.ordinal = static_cast<int>(blocks.size());
        current.span.start = d.position;
      }
      active.insert(d.region_name);
      current.counters = set_union(current.counters, d.counters);
    } else if (d.kind == DirectiveKind::Stop) {
      active.erase(d.region_name);
      if (active.empty()) {
        current.span.stop = d.position;
        current.eventset_binding = eventset_binding(current.ordinal);
        current.values_binding = block_values_binding(current.ordinal);
        blocks.push_back(std::move(current));
        current = Block{};
      }
    }
  }
  return blocks;
}

RegionCollection collect_regions(const std::vector<ExpandedDirective>& expanded,
                                 const std::vector<Block>& blocks) {
  RegionCollection out;
  std::set<std::string> active;
  std::size_t block_cursor = 0;

  auto emit = [&](IrAction action, std::optional<int> block, std::string region,
                  SourcePosition pos) {
    out.ir.push_back(IrDirective{action, block, std::move(region), pos});
  };

  for (const auto& d : expanded) {
    const auto pos = d.position;
    switch (d.kind) {
      case DirectiveKind::Init:
        emit(IrAction::LibInit, std::nullopt, {}, pos);
        break;
      case DirectiveKind::Deinit:
        emit(IrAction::LibDeinit, std::nullopt, {}, pos);
        break;
      case DirectiveKind::Start: {
        const Block& block = blocks.at(block_cursor);
        RegionInfo info;
        info.name = d.region_name;
        info.span.start = pos;
        info.counters = d.counters;
        info.block_index = BlockIndex{block.ordinal, indices_into(block.counters, d.counters)};
        info.values_binding = region_values_binding(d.region_name);
        info.temporal_binding = temporal_binding(d.region_name);
        out.region_table.emplace(d.region_name, std::move(info));

        if (active.empty()) {
          emit(IrAction::BlockCreate, block.ordinal, {}, pos);
          emit(IrAction::BlockStart, block.ordinal, {}, pos);
          emit(IrAction::RegionCopyStart, block.ordinal, d.region_name, pos);
        } else {
          emit(IrAction::BlockAccumulate, block.ordinal, {}, pos);
          emit(IrAction::BlockPause, block.ordinal, {}, pos);
          emit(IrAction::RegionCopyStart, block.ordinal, d.region_name, pos);
          emit(IrAction::BlockResume, block.ordinal, {}, pos);
        }
        active.insert(d.region_name);
        break;
      }
      case DirectiveKind::Stop: {
        const Block& block = blocks.at(block_cursor);
        out.region_table.at(d.region_name).span.stop = pos;
        active.erase(d.region_name);
        if (active.empty()) {
          emit(IrAction::BlockStopDestroy, block.ordinal, {}, pos);
          emit(IrAction::RegionComputeEmit, block.ordinal, d.region_name, pos);
          emit(IrAction::RegionBumpTemporal, block.ordinal, d.region_name, pos);
          ++block_cursor;
        } else {
          emit(IrAction::BlockAccumulate, block.ordinal, {}, pos);
          emit(IrAction::BlockPause, block.ordinal, {}, pos);
          emit(IrAction::RegionComputeEmit, block.ordinal, d.region_name, pos);
          emit(IrAction::RegionBumpTemporal, block.ordinal, d.region_name, pos);
          emit(IrAction::BlockResume, block.ordinal, {}, pos);
        }
        break;
      }
    }
  }
  return out;
}

AnalysisResult analyze(const std::vector<Directive>& directives) {
  AnalysisResult result;
  result.diagnostics = validate(directives);
  auto normalized = normalize(directives);
  for (auto& e : normalized.errors) result.diagnostics.push_back(std::move(e));
  if (!result.diagnostics.empty()) {
    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    return result;
  }
  result.blocks = collect_blocks(normalized.directives);
  auto regions = collect_regions(normalized.directives, result.blocks);
  result.region_table = std::move(regions.region_table);
  result.ir = std::move(regions.ir);
  return result;
}

std::vector<const RegionInfo*> AnalysisResult::regions_in_source_order() const {
  std::vector<const RegionInfo*> out;
  out.reserve(region_table.size());
  for (const auto& [name, info] : region_table) out.push_back(&info);
  std::sort(out.begin(), out.end(), [](const RegionInfo* a, const RegionInfo* b) {
    return a->span.start < b->span.start;
  });
  return out;
}

std::string dump(const AnalysisResult& result) {
  std::ostringstream os;
  auto counters = [&](const CounterSet& set) {
    for (auto id : set) os << ' ' << id.dotted();
  };
  if (!result.diagnostics.empty()) {
    os << "diagnostics " << result.diagnostics.size() << '\n';
    for (const auto& d : result.diagnostics) os << "  " << format(d) << '\n';
    return os.str();
  }
  os << "blocks " << result.blocks.size() << '\n';
  for (const auto& b : result.blocks) {
    os << "  block " << b.ordinal << " lines " << b.span.start.line << '-' << b.span.stop.line
       << " eventset " << b.eventset_binding << " values " << b.values_binding << '['
       << b.counters.size() << "] counters";
    counters(b.counters);
    os << '\n';
  }
  os << "regions " << result.region_table.size() << '\n';
  for (const auto* r : result.regions_in_source_order()) {
    os << "  region " << r->name << " lines " << r->span.start.line << '-' << r->span.stop.line
       << " block " << r->block_index.block_ordinal << " indices [";
    for (std::size_t i = 0; i < r->block_index.indices.size(); ++i) {
      os << (i ? " " : "") << r->block_index.indices[i];
    }
    os << "] values " << r->values_binding << '[' << r->counters.size() << "] temporal "
       << r->temporal_binding << " counters";
    counters(r->counters);
    os << '\n';
  }
  os << "ir " << result.ir.size() << '\n';
  for (const auto& ir : result.ir) {
    os << "  " << ir.position.line << ' ' << to_string(ir.action);
    if (ir.block) os << " block=" << *ir.block;
    if (!ir.region.empty()) os << " region=" << ir.region;
    os << '\n';
  }
  return os.str();
}

}  // namespace edpm
