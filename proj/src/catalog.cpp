#include "edpm/catalog.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>
#include <string>

namespace edpm {
namespace {

#include "counter_map_data.inc"  // kBuiltinCounterMap

constexpr std::array<std::string_view, kTypeCount> kTypes = {
    "cpu", "memory", "floating-point", "vector", "branch", "cache"};

constexpr std::array<std::string_view, 2> kCpu = {"cycles", "instructions"};
constexpr std::array<std::string_view, 2> kMemory = {"loads", "stores"};
constexpr std::array<std::string_view, 7> kFloatingPoint = {
    "instructions", "operations", "multiply", "add", "divide", "sqrt", "inverse"};
constexpr std::array<std::string_view, 2> kVector = {"single-precision", "double-precision"};
constexpr std::array<std::string_view, 6> kBranch = {
    "unconditional", "conditional", "taken", "not-taken", "mispredicted",
    "correctly-predicted"};
constexpr std::array<std::string_view, 11> kCache = {
    "invalidation",    "l1-data",         "l2-data",  "l3-data",  "l1-instructions",
    "l2-instructions", "l3-instructions", "l1-loads", "l2-loads", "l1-stores",
    "l2-stores"};

constexpr std::array<std::span<const std::string_view>, kTypeCount> kCounters = {
    kCpu, kMemory, kFloatingPoint, kVector, kBranch, kCache};

struct Entry {
  std::size_t type;
  std::string_view name;
};

constexpr auto build_entries() {
  std::array<Entry, kCatalogSize> entries{};
  std::size_t n = 0;
  for (std::size_t t = 0; t < kTypeCount; ++t) {
    for (auto name : kCounters[t]) entries[n++] = Entry{t, name};
  }
  return entries;
}

constexpr auto kEntries = build_entries();

constexpr std::size_t count_counters() {
  std::size_t n = 0;
  for (auto counters : kCounters) n += counters.size();
  return n;
}
static_assert(count_counters() == kCatalogSize);

std::optional<std::size_t> type_index(std::string_view type) {
  auto it = std::find(kTypes.begin(), kTypes.end(), type);
  if (it == kTypes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - kTypes.begin());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string_view CounterId::counter_type() const { return kTypes[kEntries[index()].type]; }
std::string_view CounterId::name() const { return kEntries[index()].name; }

std::string CounterId::dotted() const {
  std::string out(counter_type());
  out += '.';
  out += name();
  return out;
}

CounterSet set_union(const CounterSet& a, const CounterSet& b) {
  CounterSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const CounterSet& sub, const CounterSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

std::span<const std::string_view> counter_types() { return kTypes; }

std::span<const std::string_view> counters_of(std::string_view counter_type) {
  auto t = type_index(counter_type);
  if (!t) return {};
  return kCounters[*t];
}

std::optional<CounterId> find_counter(std::string_view counter_type, std::string_view name) {
  for (std::size_t i = 0; i < kCatalogSize; ++i) {
    if (kTypes[kEntries[i].type] == counter_type && kEntries[i].name == name) {
      return CounterId::from_index(i);
    }
  }
  return std::nullopt;
}

std::optional<CounterId> find_counter(std::string_view dotted) {
  // Type names contain '-' but never '.', so the first dot splits.
  auto dot = dotted.find('.');
  if (dot == std::string_view::npos) return std::nullopt;
  return find_counter(dotted.substr(0, dot), dotted.substr(dot + 1));
}

Expected<CounterSet> resolve_clause(const Clause& clause) {
  auto t = type_index(clause.counter_type);
  if (!t) {
    return Diagnostic{DiagCode::UnknownType, 0,
                      "unknown counter type '" + clause.counter_type + "'"};
  }
  CounterSet out;
  if (clause.counters.empty()) {
    for (auto name : kCounters[*t]) out.push_back(*find_counter(kTypes[*t], name));
    return out;
  }
  for (const auto& name : clause.counters) {
    auto id = find_counter(clause.counter_type, name);
    if (!id) {
      return Diagnostic{DiagCode::UnknownCounter, 0,
                        "type '" + clause.counter_type + "' has no counter '" + name + "'"};
    }
    out.push_back(*id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CounterSet expand_all() {
  CounterSet out;
  out.reserve(kCatalogSize);
  for (std::size_t i = 0; i < kCatalogSize; ++i) out.push_back(CounterId::from_index(i));
  return out;
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Papi: return "papi";
    case Backend::Soft: return "soft";
  }
  return "?";
}

std::optional<Backend> parse_backend(std::string_view text) {
  if (text == "papi") return Backend::Papi;
  if (text == "soft") return Backend::Soft;
  return std::nullopt;
}

BackendMap BackendMap::parse(std::string_view text) {
  BackendMap map;
  bool have_header = false;
  int line_number = 0;
  for (auto raw : split_lines(text)) {
    ++line_number;
    auto line = trim(raw);
    std::string note;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      note = std::string(trim(line.substr(hash + 1)));
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;

    auto fields = split_ws(line);
    if (!have_header) {
      if (fields.size() < 2 || fields.front() != "counter") {
        throw std::invalid_argument("counter map line " + std::to_string(line_number) +
                                    ": expected a 'counter <backend>...' header");
      }
      map.columns_.assign(fields.begin() + 1, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != map.columns_.size() + 1) {
      throw std::invalid_argument("counter map line " + std::to_string(line_number) +
                                  ": expected " + std::to_string(map.columns_.size() + 1) +
                                  " fields");
    }
    auto id = find_counter(fields.front());
    if (!id) {
      throw std::invalid_argument("counter map line " + std::to_string(line_number) +
                                  ": unknown counter '" + fields.front() + "'");
    }
    for (const auto& row : map.rows_) {
      if (row.id == *id) {
        throw std::invalid_argument("counter map line " + std::to_string(line_number) +
                                    ": duplicate row for '" + fields.front() + "'");
      }
    }
    map.rows_.push_back(Row{*id, {fields.begin() + 1, fields.end()}, std::move(note)});
  }
  if (!have_header) throw std::invalid_argument("counter map: missing header");
  return map;
}

const BackendMap& BackendMap::builtin() {
  static const BackendMap map = parse(kBuiltinCounterMap);
  return map;
}

Expected<std::string> BackendMap::event(Backend backend, CounterId id) const {
  if (backend == Backend::Soft) return id.dotted();

  auto column = std::find(columns_.begin(), columns_.end(), to_string(backend));
  auto unsupported = Diagnostic{DiagCode::UnsupportedCounter, 0,
                                "backend '" + std::string(to_string(backend)) +
                                    "' has no event for '" + id.dotted() + "'"};
  if (column == columns_.end()) return unsupported;
  auto c = static_cast<std::size_t>(column - columns_.begin());
  for (const auto& row : rows_) {
    if (row.id != id) continue;
    if (row.events[c] == "-") return unsupported;
    return row.events[c];
  }
  return unsupported;
}

}  // namespace edpm
