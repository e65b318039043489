// The counter catalog: which counters a start clause may name, their
// canonical order, and how each one is spelled by every backend.
//
// Canonical order is type order then counter order:
//
//   cpu             cycles, instructions
//   memory          loads, stores
//   floating-point  instructions, operations, multiply, add, divide, sqrt, inverse
//   vector          single-precision, double-precision
//   branch          unconditional, conditional, taken, not-taken, mispredicted,
//                   correctly-predicted
//   cache           invalidation, l1-data, l2-data, l3-data, l1-instructions,
//                   l2-instructions, l3-instructions, l1-loads, l2-loads,
//                   l1-stores, l2-stores
//
// The per-backend event names are data, not code: they live in
// data/counter_map.txt and are compiled into the library.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edpm/diagnostic.hpp"
#include "edpm/reader.hpp"

namespace edpm {

inline constexpr std::size_t kCatalogSize = 30;
inline constexpr std::size_t kTypeCount = 6;

/// One catalog counter, identified by its canonical index.
class CounterId {
 public:
  /// Precondition: index < kCatalogSize.
  static constexpr CounterId from_index(std::size_t index) {
    return CounterId(static_cast<int>(index));
  }

  constexpr std::size_t index() const { return static_cast<std::size_t>(index_); }
  std::string_view counter_type() const;
  std::string_view name() const;
  /// `<type>.<name>`, the external spelling used in JSON and by the soft backend.
  std::string dotted() const;

  friend constexpr auto operator<=>(const CounterId&, const CounterId&) = default;

 private:
  explicit constexpr CounterId(int index) : index_(index) {}
  int index_;
};

/// Counters kept sorted in canonical order without duplicates.
using CounterSet = std::vector<CounterId>;

CounterSet set_union(const CounterSet& a, const CounterSet& b);
bool is_subset(const CounterSet& sub, const CounterSet& super);

/// The six type tokens in canonical order.
std::span<const std::string_view> counter_types();
/// Counter tokens of one type, in canonical order; empty for an unknown type.
std::span<const std::string_view> counters_of(std::string_view counter_type);

std::optional<CounterId> find_counter(std::string_view counter_type, std::string_view name);
/// Accepts the dotted spelling.
std::optional<CounterId> find_counter(std::string_view dotted);

/// Resolves a clause to counters. A clause without counters means every
/// counter of its type. Errors carry UnknownType or UnknownCounter (line 0;
/// callers attach the position).
Expected<CounterSet> resolve_clause(const Clause& clause);

/// Every catalog counter.
CounterSet expand_all();

enum class Backend { Papi, Soft };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view text);

/// Backend event names loaded from the mapping table.
class BackendMap {
 public:
  struct Row {
    CounterId id;
    std::vector<std::string> events;  // one per column; "-" means unmapped
    std::string note;                 // trailing '#' comment
  };

  /// Parses the mapping table format:
  ///
  ///   # comment lines
  ///   counter  papi          <- header naming the backend columns
  ///   cpu.cycles  PAPI_TOT_CYC  # Total cycles
  ///
  /// Throws std::invalid_argument on malformed input.
  static BackendMap parse(std::string_view text);

  /// The table compiled into the library.
  static const BackendMap& builtin();

  std::span<const std::string> columns() const { return columns_; }
  std::span<const Row> rows() const { return rows_; }

  /// Event name for a counter, or UnsupportedCounter. The soft backend is
  /// always the dotted name and never consults the table.
  Expected<std::string> event(Backend backend, CounterId id) const;

 private:
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

inline Expected<std::string> backend_event(Backend backend, CounterId id) {
  return BackendMap::builtin().event(backend, id);
}

}  // namespace edpm
