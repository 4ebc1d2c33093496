#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dbar {

/// One stored entry of a sparse index: 1-based coordinate and its exponent.
struct IndexEntry {
  int coord;
  int exp;
  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

/// Nonnegative integer multi-index with finite support.
///
/// Entries are kept sorted by coordinate and zero exponents are never
/// stored, so equality of values is equality of the stored maps.
/// Ordering is graded lexicographic: first by order, then lexicographically
/// on the zero-padded exponent vectors (k_1, k_2, ...).
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<std::pair<int, int>> entries);

  /// Builds from arbitrary (coord, exp) pairs. Zero exponents are dropped;
  /// repeated coordinates, negative exponents and coordinates < 1 throw.
  static MultiIndex from_pairs(std::vector<std::pair<int, int>> entries);

  /// Single-coordinate index {coord: exp}.
  static MultiIndex unit(int coord, int exp = 1);

  /// Parses `nu1:exp1,nu2:exp2` with strictly increasing coordinates.
  static MultiIndex parse(std::string_view text);
  std::string to_string() const;

  int order() const;
  int support_size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  int exponent(int coord) const;
  /// Largest stored coordinate, 0 for the empty index.
  int max_coord() const { return entries_.empty() ? 0 : entries_.back().coord; }

  /// ln(‖k‖^‖k‖ / ∏ k_ν^k_ν) with the 0⁰ = 1 convention.
  double log_coeff() const;

  std::span<const IndexEntry> entries() const { return entries_; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; throws if any exponent would go negative.
  MultiIndex operator-(const MultiIndex& other) const;
  /// Copy with the exponent of `coord` replaced (0 erases the entry).
  MultiIndex with_exponent(int coord, int exp) const;
  /// Drops every coordinate greater than `max_coord`.
  MultiIndex truncated(int max_coord) const;
  /// True when every coordinate lies in [1, max_coord].
  bool supported_in(int max_coord) const { return max_coord_fits(max_coord); }
  /// Renames coordinates through `perm` (perm[ν-1] is the new label of ν).
  MultiIndex relabeled(std::span<const int> perm) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  bool max_coord_fits(int max_coord) const { return entries_.empty() || entries_.back().coord <= max_coord; }
  std::vector<IndexEntry> entries_;
};

/// All multi-indices supported in {1..dim} with order exactly `grade`,
/// in graded-lex order.
std::vector<MultiIndex> indices_of_order(int dim, int grade);

/// All multi-indices supported in {1..dim} with order ≤ max_grade,
/// in graded-lex order.
std::vector<MultiIndex> indices_up_to(int dim, int max_grade);

}  // namespace dbar
