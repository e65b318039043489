// Test-only oracles. Nothing here calls into the edpm library: each oracle
// recomputes its answer from first principles so it can check the library.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace edpm::testing {

// Counter table typed in by hand, row by row, in print order.
inline const std::vector<std::pair<std::string, std::vector<std::string>>>& hand_table() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> table = {
      {"cpu", {"cycles", "instructions"}},
      {"memory", {"loads", "stores"}},
      {"floating-point",
       {"instructions", "operations", "multiply", "add", "divide", "sqrt", "inverse"}},
      {"vector", {"single-precision", "double-precision"}},
      {"branch",
       {"unconditional", "conditional", "taken", "not-taken", "mispredicted",
        "correctly-predicted"}},
      {"cache",
       {"invalidation", "l1-data", "l2-data", "l3-data", "l1-instructions", "l2-instructions",
        "l3-instructions", "l1-loads", "l2-loads", "l1-stores", "l2-stores"}},
  };
  return table;
}

// Dotted names in print order.
inline const std::vector<std::string>& hand_catalog() {
  static const std::vector<std::string> all = [] {
    std::vector<std::string> out;
    for (const auto& [type, counters] : hand_table()) {
      for (const auto& c : counters) out.push_back(type + "." + c);
    }
    return out;
  }();
  return all;
}

inline std::size_t hand_rank(const std::string& dotted) {
  const auto& all = hand_catalog();
  return static_cast<std::size_t>(std::find(all.begin(), all.end(), dotted) - all.begin());
}

inline std::vector<std::string> sorted_by_rank(std::set<std::string> names) {
  std::vector<std::string> out(names.begin(), names.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return hand_rank(a) < hand_rank(b); });
  return out;
}

// PAPI preset events and their documented descriptions (papi_avail).
inline const std::map<std::string, std::string>& papi_presets() {
  static const std::map<std::string, std::string> presets = {
      {"PAPI_L1_DCM", "Level 1 data cache misses"},
      {"PAPI_L1_ICM", "Level 1 instruction cache misses"},
      {"PAPI_L2_DCM", "Level 2 data cache misses"},
      {"PAPI_L2_ICM", "Level 2 instruction cache misses"},
      {"PAPI_L3_DCM", "Level 3 data cache misses"},
      {"PAPI_L3_ICM", "Level 3 instruction cache misses"},
      {"PAPI_L1_TCM", "Level 1 cache misses"},
      {"PAPI_L2_TCM", "Level 2 cache misses"},
      {"PAPI_L3_TCM", "Level 3 cache misses"},
      {"PAPI_CA_SNP", "Requests for a snoop"},
      {"PAPI_CA_SHR", "Requests for exclusive access to shared cache line"},
      {"PAPI_CA_CLN", "Requests for exclusive access to clean cache line"},
      {"PAPI_CA_INV", "Requests for cache line invalidation"},
      {"PAPI_CA_ITV", "Requests for cache line intervention"},
      {"PAPI_L3_LDM", "Level 3 load misses"},
      {"PAPI_L3_STM", "Level 3 store misses"},
      {"PAPI_TLB_DM", "Data translation lookaside buffer misses"},
      {"PAPI_TLB_IM", "Instruction translation lookaside buffer misses"},
      {"PAPI_L1_LDM", "Level 1 load misses"},
      {"PAPI_L1_STM", "Level 1 store misses"},
      {"PAPI_L2_LDM", "Level 2 load misses"},
      {"PAPI_L2_STM", "Level 2 store misses"},
      {"PAPI_BR_UCN", "Unconditional branch instructions"},
      {"PAPI_BR_CN", "Conditional branch instructions"},
      {"PAPI_BR_TKN", "Conditional branch instructions taken"},
      {"PAPI_BR_NTK", "Conditional branch instructions not taken"},
      {"PAPI_BR_MSP", "Conditional branch instructions mispredicted"},
      {"PAPI_BR_PRC", "Conditional branch instructions correctly predicted"},
      {"PAPI_FMA_INS", "FMA instructions completed"},
      {"PAPI_TOT_INS", "Instructions completed"},
      {"PAPI_INT_INS", "Integer instructions"},
      {"PAPI_FP_INS", "Floating point instructions"},
      {"PAPI_LD_INS", "Load instructions"},
      {"PAPI_SR_INS", "Store instructions"},
      {"PAPI_BR_INS", "Branch instructions"},
      {"PAPI_VEC_INS", "Vector/SIMD instructions (could include integer)"},
      {"PAPI_TOT_CYC", "Total cycles"},
      {"PAPI_FML_INS", "Floating point multiply instructions"},
      {"PAPI_FAD_INS", "Floating point add instructions"},
      {"PAPI_FDV_INS", "Floating point divide instructions"},
      {"PAPI_FSQ_INS", "Floating point square root instructions"},
      {"PAPI_FNV_INS", "Floating point inverse instructions"},
      {"PAPI_FP_OPS", "Floating point operations"},
      {"PAPI_SP_OPS", "Floating point operations; optimized to count scaled single precision vector operations"},
      {"PAPI_DP_OPS", "Floating point operations; optimized to count scaled double precision vector operations"},
      {"PAPI_VEC_SP", "Single precision vector/SIMD instructions"},
      {"PAPI_VEC_DP", "Double precision vector/SIMD instructions"},
      {"PAPI_REF_CYC", "Reference clock cycles"},
  };
  return presets;
}

// One region of a generated directive sequence.
struct RegionTruth {
  std::string name;
  int start = 0;
  int stop = 0;
  std::set<std::string> counters;  // dotted
};

struct GeneratedProgram {
  std::string source;
  int init_line = 0;
  int deinit_line = 0;
  std::vector<RegionTruth> regions;
};

// Random valid annotated program: up to `max_regions` regions whose
// start/stop order is a random interleaving, so proper nesting, overlap and
// disjoint blocks all occur. Filler lines separate directives.
inline GeneratedProgram random_program(std::mt19937& rng, int max_regions = 10) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const auto& table = hand_table();

  GeneratedProgram prog;
  const int region_count = pick(1, max_regions);
  std::vector<std::string> lines;
  auto add = [&](std::string text) {
    lines.push_back(std::move(text));
    return static_cast<int>(lines.size());
  };
  auto filler = [&] {
    for (int n = pick(0, 2); n > 0; --n) add("    work();");
  };

  add("int main(void)");
  add("{");
  prog.init_line = add("#pragma edpm init");

  int started = 0;
  std::vector<std::size_t> open;
  while (started < region_count || !open.empty()) {
    filler();
    const bool do_start =
        started < region_count && (open.empty() || pick(0, 99) < 55);
    if (do_start) {
      RegionTruth r;
      r.name = "r" + std::to_string(started) + (pick(0, 1) ? "-x" : "");
      std::string clauses;
      if (pick(0, 9) == 0) {
        for (const auto& name : hand_catalog()) r.counters.insert(name);
      } else {
        // 1-3 distinct types, each bare, empty-parenthesized, or an explicit subset.
        std::vector<std::size_t> types(table.size());
        for (std::size_t i = 0; i < types.size(); ++i) types[i] = i;
        std::shuffle(types.begin(), types.end(), rng);
        types.resize(static_cast<std::size_t>(pick(1, 3)));
        for (std::size_t t : types) {
          const auto& [type, counters] = table[t];
          if (!clauses.empty()) clauses += pick(0, 1) ? ", " : ",";
          const int style = pick(0, 3);
          if (style == 0 || style == 1) {
            clauses += style == 0 ? type : type + "()";
            for (const auto& c : counters) r.counters.insert(type + "." + c);
          } else {
            std::vector<std::string> subset = counters;
            std::shuffle(subset.begin(), subset.end(), rng);
            subset.resize(static_cast<std::size_t>(pick(1, static_cast<int>(subset.size()))));
            clauses += type + "(";
            for (std::size_t k = 0; k < subset.size(); ++k) {
              clauses += (k ? ", " : "") + subset[k];
              r.counters.insert(type + "." + subset[k]);
            }
            clauses += ")";
          }
        }
      }
      r.start = add("#pragma edpm start " + r.name + (clauses.empty() ? "" : " " + clauses));
      open.push_back(prog.regions.size());
      prog.regions.push_back(std::move(r));
      ++started;
    } else {
      auto at = static_cast<std::size_t>(pick(0, static_cast<int>(open.size()) - 1));
      auto& r = prog.regions[open[at]];
      r.stop = add("#pragma edpm stop " + r.name);
      open.erase(open.begin() + static_cast<std::ptrdiff_t>(at));
    }
  }
  filler();
  prog.deinit_line = add("#pragma edpm deinit");
  add("    return 0;");
  add("}");

  for (const auto& l : lines) prog.source += l + "\n";
  return prog;
}

struct BlockTruth {
  int start = 0;
  int stop = 0;
  std::vector<std::string> counters;  // rank order
  std::vector<std::string> regions;
};

// Marks every half-line position 2*line .. 2*stop covered by some region and
// takes the maximal covered runs. Regions touching only at different lines
// never merge, matching the rule that a block ends when nothing is active.
inline std::vector<BlockTruth> coverage_blocks(const std::vector<RegionTruth>& regions) {
  int max_line = 0;
  for (const auto& r : regions) max_line = std::max(max_line, r.stop);
  std::vector<char> covered(static_cast<std::size_t>(2 * max_line + 2), 0);
  for (const auto& r : regions) {
    for (int p = 2 * r.start; p <= 2 * r.stop; ++p) covered[static_cast<std::size_t>(p)] = 1;
  }
  std::vector<BlockTruth> blocks;
  int p = 0;
  const int end = static_cast<int>(covered.size());
  while (p < end) {
    if (!covered[static_cast<std::size_t>(p)]) {
      ++p;
      continue;
    }
    int q = p;
    while (q + 1 < end && covered[static_cast<std::size_t>(q + 1)]) ++q;
    BlockTruth b{p / 2, q / 2, {}, {}};
    std::set<std::string> counters;
    for (const auto& r : regions) {
      if (r.start >= b.start && r.stop <= b.stop) {
        counters.insert(r.counters.begin(), r.counters.end());
        b.regions.push_back(r.name);
      }
    }
    b.counters = sorted_by_rank(counters);
    blocks.push_back(std::move(b));
    p = q + 1;
  }
  return blocks;
}

// Number of IR actions expected on a start or stop line: a start or stop that
// finds no other region active is a block boundary.
inline int others_active(const std::vector<RegionTruth>& regions, const std::string& self,
                         int line) {
  int n = 0;
  for (const auto& r : regions) {
    if (r.name != self && r.start < line && line < r.stop) ++n;
  }
  return n;
}

inline bool looks_like_edpm_pragma(std::string_view line) {
  auto i = line.find_first_not_of(" \t");
  if (i == std::string_view::npos) return false;
  line.remove_prefix(i);
  return line.rfind("#pragma edpm", 0) == 0;
}

inline std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin < text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  return out;
}

// Lines of `before` that a longest-common-subsequence diff deletes when
// turning `before` into `after` (1-based).
inline std::vector<int> deleted_lines(std::string_view before, std::string_view after) {
  const auto a = lines_of(before);
  const auto b = lines_of(after);
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<int> deleted;
  std::size_t i = 0, j = 0;
  while (i < n) {
    if (j < m && a[i] == b[j]) {
      ++i;
      ++j;
    } else if (j < m && lcs[i][j + 1] >= lcs[i + 1][j]) {
      ++j;
    } else {
      deleted.push_back(static_cast<int>(i) + 1);
      ++i;
    }
  }
  return deleted;
}

}  // namespace edpm::testing
