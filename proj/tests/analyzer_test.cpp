#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

#include "edpm/analyzer.hpp"
#include "edpm/runner.hpp"
#include "oracles.hpp"

namespace edpm {
namespace {

// Builds a source text with each directive on its given line.
std::string at_lines(std::vector<std::pair<int, std::string>> lines) {
  std::sort(lines.begin(), lines.end());
  std::string out;
  int current = 1;
  for (const auto& [line, text] : lines) {
    for (; current < line; ++current) out += "x();\n";
    out += "#pragma edpm " + text + "\n";
    ++current;
  }
  return out;
}

std::vector<Directive> directives_of(const std::string& source) {
  auto scanned = scan(source);
  EXPECT_TRUE(scanned.errors.empty());
  return scanned.directives;
}

std::vector<ExpandedDirective> expanded_of(const std::string& source) {
  auto result = normalize(directives_of(source));
  EXPECT_TRUE(result.errors.empty());
  return result.directives;
}

std::vector<std::string> dotted(const CounterSet& set) {
  std::vector<std::string> out;
  for (auto id : set) out.push_back(id.dotted());
  return out;
}

std::vector<std::pair<DiagCode, int>> codes(const Diagnostics& diags) {
  std::vector<std::pair<DiagCode, int>> out;
  for (const auto& d : diags) out.emplace_back(d.code, d.line);
  return out;
}

using Codes = std::vector<std::pair<DiagCode, int>>;

TEST(Validate, WellFormedFileIsClean) {
  EXPECT_TRUE(validate(directives_of(at_lines(
                  {{1, "init"}, {2, "start a cpu"}, {4, "stop a"}, {9, "deinit"}})))
                  .empty());
  EXPECT_TRUE(validate({}).empty());
}

TEST(Validate, DuplicateInit) {
  auto d = validate(directives_of(at_lines({{1, "init"}, {2, "init"}, {3, "deinit"}})));
  EXPECT_EQ(codes(d), (Codes{{DiagCode::DuplicateInit, 2}}));
  EXPECT_NE(d[0].message.find("line 1"), std::string::npos);
}

TEST(Validate, DuplicateDeinit) {
  auto d = validate(directives_of(at_lines({{1, "init"}, {2, "deinit"}, {5, "deinit"}})));
  EXPECT_EQ(codes(d), (Codes{{DiagCode::DuplicateDeinit, 5}}));
}

TEST(Validate, MissingInitAndDeinit) {
  EXPECT_EQ(codes(validate(directives_of(at_lines({{4, "deinit"}})))),
            (Codes{{DiagCode::MissingInit, 0}}));
  EXPECT_EQ(codes(validate(directives_of(at_lines({{4, "init"}})))),
            (Codes{{DiagCode::MissingDeinit, 0}}));
}

TEST(Validate, DeinitBeforeInit) {
  EXPECT_EQ(codes(validate(directives_of(at_lines({{2, "deinit"}, {6, "init"}})))),
            (Codes{{DiagCode::DirectiveOutsideInitSpan, 2}}));
}

TEST(Validate, RegionOutsideInitSpan) {
  auto d = validate(directives_of(
      at_lines({{1, "start a cpu"}, {2, "init"}, {3, "stop a"}, {4, "deinit"}, {5, "start b"},
                {6, "stop b"}})));
  EXPECT_EQ(codes(d), (Codes{{DiagCode::DirectiveOutsideInitSpan, 1},
                             {DiagCode::DirectiveOutsideInitSpan, 5},
                             {DiagCode::DirectiveOutsideInitSpan, 6}}));
}

TEST(Validate, DuplicateRegionName) {
  auto d = validate(directives_of(at_lines({{1, "init"},
                                            {2, "start r1 cpu"},
                                            {3, "stop r1"},
                                            {4, "start r1 memory"},
                                            {5, "stop r1"},
                                            {6, "deinit"}})));
  EXPECT_EQ(codes(d), (Codes{{DiagCode::DuplicateRegionName, 4}}));
  EXPECT_NE(d[0].message.find("r1"), std::string::npos);
}

TEST(Validate, SanitizedNameCollision) {
  auto d = validate(directives_of(at_lines(
      {{1, "init"}, {2, "start a-b cpu"}, {3, "stop a-b"}, {4, "start a_b"}, {5, "stop a_b"},
       {6, "deinit"}})));
  EXPECT_EQ(codes(d), (Codes{{DiagCode::RegionNameCollision, 4}}));
}

TEST(Validate, DuplicateCounterSpec) {
  auto same_counter = validate(directives_of(
      at_lines({{1, "init"}, {2, "start r1 cpu(cycles), cpu(cycles)"}, {3, "stop r1"},
                {4, "deinit"}})));
  EXPECT_EQ(codes(same_counter), (Codes{{DiagCode::DuplicateCounterSpec, 2}}));
  auto same_type = validate(directives_of(at_lines(
      {{1, "init"}, {2, "start r1 cpu(cycles), cpu(instructions)"}, {3, "stop r1"},
       {4, "deinit"}})));
  EXPECT_EQ(codes(same_type), (Codes{{DiagCode::DuplicateCounterSpec, 2}}));
  auto within = validate(directives_of(
      at_lines({{1, "init"}, {2, "start r1 cpu(cycles, cycles)"}, {3, "stop r1"}, {4, "deinit"}})));
  EXPECT_EQ(codes(within), (Codes{{DiagCode::DuplicateCounterSpec, 2}}));
}

TEST(Validate, UnmatchedStopAndUnclosedRegion) {
  auto d = validate(directives_of(at_lines(
      {{1, "init"}, {3, "start open cpu"}, {5, "stop ghost"}, {8, "deinit"}})));
  EXPECT_EQ(codes(d), (Codes{{DiagCode::UnclosedRegion, 3}, {DiagCode::UnmatchedStop, 5}}));
}

TEST(Validate, StopBeforeStartIsUnmatched) {
  auto d = validate(directives_of(
      at_lines({{1, "init"}, {2, "stop a"}, {3, "start a cpu"}, {4, "deinit"}})));
  EXPECT_EQ(codes(d), (Codes{{DiagCode::UnmatchedStop, 2}, {DiagCode::UnclosedRegion, 3}}));
}

TEST(Normalize, Examples) {
  auto result = normalize(directives_of(at_lines(
      {{1, "init"}, {2, "start m memory()"}, {3, "start all"}, {4, "stop all"}, {5, "stop m"},
       {6, "deinit"}})));
  ASSERT_TRUE(result.errors.empty());
  ASSERT_EQ(result.directives.size(), 6u);
  EXPECT_EQ(result.directives[0].kind, DirectiveKind::Init);
  EXPECT_TRUE(result.directives[0].counters.empty());
  EXPECT_EQ(dotted(result.directives[1].counters),
            (std::vector<std::string>{"memory.loads", "memory.stores"}));
  EXPECT_EQ(dotted(result.directives[2].counters), testing::hand_catalog());
  EXPECT_TRUE(result.directives[3].counters.empty());
}

TEST(Normalize, CatalogErrorsCarryTheLine) {
  auto result = normalize(directives_of(at_lines(
      {{1, "init"}, {4, "start a gpu"}, {5, "stop a"}, {7, "start b cache(l9-data)"},
       {8, "stop b"}, {9, "deinit"}})));
  EXPECT_EQ(codes(result.errors),
            (Codes{{DiagCode::UnknownType, 4}, {DiagCode::UnknownCounter, 7}}));
}

TEST(CollectBlocks, ProperNesting) {
  auto blocks = collect_blocks(expanded_of(at_lines({{1, "init"},
                                                     {10, "start A cpu(cycles)"},
                                                     {12, "start B memory(loads)"},
                                                     {14, "stop B"},
                                                     {16, "stop A"},
                                                     {30, "deinit"}})));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].span, (Span{{10}, {16}}));
  EXPECT_EQ(dotted(blocks[0].counters),
            (std::vector<std::string>{"cpu.cycles", "memory.loads"}));
  EXPECT_EQ(blocks[0].eventset_binding, "__edpm_es_0");
  EXPECT_EQ(blocks[0].values_binding, "__edpm_bv_0");
}

TEST(CollectBlocks, Disjoint) {
  auto blocks = collect_blocks(expanded_of(at_lines({{1, "init"},
                                                     {5, "start A cpu"},
                                                     {9, "stop A"},
                                                     {20, "start B branch"},
                                                     {25, "stop B"},
                                                     {30, "deinit"}})));
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].span, (Span{{5}, {9}}));
  EXPECT_EQ(blocks[1].span, (Span{{20}, {25}}));
  EXPECT_EQ(blocks[1].ordinal, 1);
  EXPECT_EQ(blocks[1].counters.size(), 6u);
}

TEST(CollectBlocks, Overlap) {
  auto blocks = collect_blocks(expanded_of(at_lines({{1, "init"},
                                                     {5, "start A cpu(cycles)"},
                                                     {7, "start B cache(l1-data)"},
                                                     {9, "stop A"},
                                                     {11, "stop B"},
                                                     {30, "deinit"}})));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].span, (Span{{5}, {11}}));
  EXPECT_EQ(dotted(blocks[0].counters),
            (std::vector<std::string>{"cpu.cycles", "cache.l1-data"}));
}

TEST(CollectRegions, IndicesFollowCanonicalOrder) {
  auto expanded = expanded_of(at_lines({{1, "init"},
                                        {10, "start A memory(loads), cpu(cycles)"},
                                        {12, "start B memory(loads)"},
                                        {14, "stop B"},
                                        {16, "stop A"},
                                        {30, "deinit"}}));
  auto blocks = collect_blocks(expanded);
  auto regions = collect_regions(expanded, blocks);
  ASSERT_EQ(regions.region_table.size(), 2u);
  EXPECT_EQ(regions.region_table.at("B").block_index, (BlockIndex{0, {1}}));
  EXPECT_EQ(regions.region_table.at("A").block_index, (BlockIndex{0, {0, 1}}));
  EXPECT_EQ(regions.region_table.at("A").values_binding, "__edpm_rv_A");
  EXPECT_EQ(regions.region_table.at("B").temporal_binding, "__edpm_tid_B");
  EXPECT_EQ(regions.region_table.at("B").span, (Span{{12}, {14}}));
}

std::vector<IrAction> actions_at(const std::vector<IrDirective>& ir, int line) {
  std::vector<IrAction> out;
  for (const auto& d : ir) {
    if (d.position.line == line) out.push_back(d.action);
  }
  return out;
}

TEST(CollectRegions, NestedLowering) {
  auto analysis = analyze(directives_of(at_lines({{1, "init"},
                                                  {10, "start outer cpu"},
                                                  {12, "start inner memory"},
                                                  {14, "stop inner"},
                                                  {16, "stop outer"},
                                                  {30, "deinit"}})));
  ASSERT_TRUE(analysis.ok());
  using A = IrAction;
  EXPECT_EQ(actions_at(analysis.ir, 1), (std::vector<A>{A::LibInit}));
  EXPECT_EQ(actions_at(analysis.ir, 10),
            (std::vector<A>{A::BlockCreate, A::BlockStart, A::RegionCopyStart}));
  EXPECT_EQ(actions_at(analysis.ir, 12),
            (std::vector<A>{A::BlockAccumulate, A::BlockPause, A::RegionCopyStart,
                            A::BlockResume}));
  EXPECT_EQ(actions_at(analysis.ir, 14),
            (std::vector<A>{A::BlockAccumulate, A::BlockPause, A::RegionComputeEmit,
                            A::RegionBumpTemporal, A::BlockResume}));
  EXPECT_EQ(actions_at(analysis.ir, 16),
            (std::vector<A>{A::BlockStopDestroy, A::RegionComputeEmit, A::RegionBumpTemporal}));
  EXPECT_EQ(actions_at(analysis.ir, 30), (std::vector<A>{A::LibDeinit}));
  for (const auto& d : analysis.ir) {
    if (d.action == A::LibInit || d.action == A::LibDeinit) {
      EXPECT_FALSE(d.block.has_value());
    } else {
      EXPECT_EQ(d.block, 0);
    }
  }
}

TEST(Analyze, InitDeinitOnly) {
  auto analysis = analyze(directives_of(at_lines({{2, "init"}, {5, "deinit"}})));
  ASSERT_TRUE(analysis.ok());
  EXPECT_TRUE(analysis.blocks.empty());
  EXPECT_TRUE(analysis.region_table.empty());
  ASSERT_EQ(analysis.ir.size(), 2u);
  EXPECT_EQ(analysis.ir[0].action, IrAction::LibInit);
  EXPECT_EQ(analysis.ir[1].action, IrAction::LibDeinit);
}

TEST(Analyze, ErrorsSuppressIr) {
  auto analysis = analyze(directives_of(at_lines(
      {{1, "init"}, {2, "init"}, {3, "start a gpu"}, {4, "stop a"}, {5, "deinit"}})));
  EXPECT_FALSE(analysis.ok());
  EXPECT_TRUE(analysis.ir.empty());
  EXPECT_TRUE(analysis.blocks.empty());
  EXPECT_TRUE(analysis.region_table.empty());
  EXPECT_EQ(codes(analysis.diagnostics),
            (Codes{{DiagCode::DuplicateInit, 2}, {DiagCode::UnknownType, 3}}));
}

TEST(Analyze, Matmul) {
  auto source = read_file(std::string(EDPM_SOURCE_DIR) + "/corpus/matmul.c");
  auto analysis = analyze(scan(source).directives);
  ASSERT_TRUE(analysis.ok());
  ASSERT_EQ(analysis.blocks.size(), 1u);
  ASSERT_EQ(analysis.region_table.size(), 2u);
  const auto& outer = analysis.region_table.at("for-iterated");
  const auto& inner = analysis.region_table.at("multiply-iterated");
  EXPECT_EQ(analysis.blocks[0].counters, set_union(outer.counters, inner.counters));
  EXPECT_LT(outer.span.start, inner.span.start);
  EXPECT_GT(outer.span.stop, inner.span.stop);
  EXPECT_EQ(dotted(inner.counters),
            (std::vector<std::string>{"memory.loads", "cache.l2-stores"}));
  EXPECT_EQ(outer.counters.size(), 6u);
}

TEST(Analyze, E4OverlapsFuse) {
  for (const char* set : {"static", "dynamic"}) {
    auto path = std::string(EDPM_SOURCE_DIR) + "/corpus/" + set + "/e4.c";
    auto source = read_file(path);
    auto analysis = analyze(scan(source).directives);
    ASSERT_TRUE(analysis.ok()) << path;
    // Three functions, each a chain of pairwise-overlapping regions.
    EXPECT_EQ(analysis.blocks.size(), 3u) << path;
    for (const auto& [name, region] : analysis.region_table) {
      for (const auto& [other_name, other] : analysis.region_table) {
        const bool overlap = region.span.start < other.span.start &&
                             other.span.start < region.span.stop &&
                             region.span.stop < other.span.stop;
        if (overlap) {
          EXPECT_EQ(region.block_index.block_ordinal, other.block_index.block_ordinal)
              << name << " / " << other_name;
        }
      }
    }
  }
}

TEST(Analyze, Deterministic) {
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto prog = testing::random_program(rng);
    auto directives = scan(prog.source).directives;
    auto a = analyze(directives);
    auto b = analyze(directives);
    EXPECT_EQ(a, b);
    EXPECT_EQ(dump(a), dump(b));
  }
}

// Randomized comparison against the half-line coverage oracle.
TEST(Analyze, AgreesWithCoverageOracle) {
  std::mt19937 rng(20240601);
  for (int trial = 0; trial < 300; ++trial) {
    auto prog = testing::random_program(rng);
    auto analysis = analyze(scan(prog.source).directives);
    ASSERT_TRUE(analysis.ok()) << prog.source;
    auto expected = testing::coverage_blocks(prog.regions);
    ASSERT_EQ(analysis.blocks.size(), expected.size()) << prog.source;
    for (std::size_t b = 0; b < expected.size(); ++b) {
      EXPECT_EQ(analysis.blocks[b].span.start.line, expected[b].start);
      EXPECT_EQ(analysis.blocks[b].span.stop.line, expected[b].stop);
      EXPECT_EQ(dotted(analysis.blocks[b].counters), expected[b].counters);
      for (const auto& name : expected[b].regions) {
        const auto& region = analysis.region_table.at(name);
        EXPECT_EQ(region.block_index.block_ordinal, static_cast<int>(b));
      }
    }
  }
}

TEST(Sanitize, Bindings) {
  EXPECT_EQ(sanitize_region_name("for-iterated"), "for_iterated");
  EXPECT_EQ(region_values_binding("for-iterated"), "__edpm_rv_for_iterated");
  EXPECT_EQ(temporal_binding("a-b_c"), "__edpm_tid_a_b_c");
  EXPECT_EQ(eventset_binding(3), "__edpm_es_3");
  EXPECT_EQ(block_values_binding(3), "__edpm_bv_3");
}

}  // namespace
}  // namespace edpm
