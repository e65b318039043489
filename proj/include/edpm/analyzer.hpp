// Semantic analysis: validation, clause normalization, block and region
// discovery, and lowering to the instruction-level IR consumed by codegen.
//
// A block is a maximal span during which at least one region is active. Its
// counter set is the union of the counter sets of every region opened inside
// it, and each region reads its counters out of the block's values array
// through a list of indices. Regions may nest or overlap lexically.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edpm/catalog.hpp"
#include "edpm/diagnostic.hpp"
#include "edpm/reader.hpp"

namespace edpm {

struct ExpandedDirective {
  DirectiveKind kind = DirectiveKind::Init;
  std::string region_name;
  CounterSet counters;  // non-empty for Start, empty otherwise
  SourcePosition position;

  friend bool operator==(const ExpandedDirective&, const ExpandedDirective&) = default;
};

struct Span {
  SourcePosition start;
  SourcePosition stop;

  friend bool operator==(const Span&, const Span&) = default;
};

struct Block {
  int ordinal = 0;
  Span span;
  CounterSet counters;
  std::string eventset_binding;
  std::string values_binding;

  friend bool operator==(const Block&, const Block&) = default;
};

struct BlockIndex {
  int block_ordinal = 0;
  std::vector<std::size_t> indices;

  friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

struct RegionInfo {
  std::string name;
  Span span;
  CounterSet counters;
  BlockIndex block_index;
  std::string values_binding;
  std::string temporal_binding;

  friend bool operator==(const RegionInfo&, const RegionInfo&) = default;
};

enum class IrAction {
  LibInit,
  LibDeinit,
  BlockCreate,
  BlockStart,
  BlockAccumulate,
  BlockPause,
  BlockResume,
  BlockStopDestroy,
  RegionCopyStart,
  RegionComputeEmit,
  RegionBumpTemporal,
};

std::string_view to_string(IrAction action);

struct IrDirective {
  IrAction action = IrAction::LibInit;
  std::optional<int> block;  // owning block, absent for lib-init/lib-deinit
  std::string region;        // set for region-* actions and on start/stop lines
  SourcePosition position;

  friend bool operator==(const IrDirective&, const IrDirective&) = default;
};

using RegionTable = std::map<std::string, RegionInfo>;

struct AnalysisResult {
  std::vector<Block> blocks;
  RegionTable region_table;
  std::vector<IrDirective> ir;
  Diagnostics diagnostics;

  bool ok() const { return diagnostics.empty(); }
  /// Regions ordered by start line.
  std::vector<const RegionInfo*> regions_in_source_order() const;

  friend bool operator==(const AnalysisResult&, const AnalysisResult&) = default;
};

/// Structural checks: init/deinit multiplicity and order, region pairing and
/// naming, and per-directive uniqueness of types and counters. Catalog
/// membership is checked by normalize.
Diagnostics validate(const std::vector<Directive>& directives);

struct NormalizeResult {
  std::vector<ExpandedDirective> directives;
  Diagnostics errors;  // UnknownType / UnknownCounter with the directive's line
};

/// Resolves every clause through the catalog. A start without clauses gets
/// the whole catalog.
NormalizeResult normalize(const std::vector<Directive>& directives);

/// Precondition: validated, normalized input.
std::vector<Block> collect_blocks(const std::vector<ExpandedDirective>& expanded);

struct RegionCollection {
  RegionTable region_table;
  std::vector<IrDirective> ir;
};

/// Precondition: blocks came from collect_blocks on the same input.
RegionCollection collect_regions(const std::vector<ExpandedDirective>& expanded,
                                 const std::vector<Block>& blocks);

/// validate -> normalize -> collect_blocks -> collect_regions. When any
/// diagnostic is raised the result carries only the diagnostics.
AnalysisResult analyze(const std::vector<Directive>& directives);

/// Region names may contain '-', which C identifiers cannot.
std::string sanitize_region_name(const std::string& name);

std::string eventset_binding(int block_ordinal);
std::string block_values_binding(int block_ordinal);
std::string region_values_binding(const std::string& region);
std::string temporal_binding(const std::string& region);

/// Text dump of blocks, regions and IR in canonical order, for golden tests
/// and `edpm precompile --dump-ir`.
std::string dump(const AnalysisResult& result);

}  // namespace edpm
