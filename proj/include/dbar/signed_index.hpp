#pragma once

#include <compare>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dbar/multiindex.hpp"

namespace dbar {

/// Finitely supported k ∈ Z^N; zero entries are never stored.
class SignedIndex {
 public:
  struct Entry {
    int coord;
    int value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SignedIndex() = default;
  SignedIndex(std::initializer_list<std::pair<int, int>> entries);
  static SignedIndex from_pairs(std::vector<std::pair<int, int>> entries);
  /// α − β, the character of z^α z̄^β under the torus action.
  static SignedIndex difference(const MultiIndex& alpha, const MultiIndex& beta);
  static SignedIndex from_multi(const MultiIndex& k);
  static SignedIndex parse(std::string_view text);
  std::string to_string() const;

  int operator[](int coord) const;
  std::span<const Entry> entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  /// True when every entry is positive (k = 0 included).
  bool is_nonnegative() const;
  /// max_ν |k_ν|, 0 for k = 0.
  int max_abs() const;
  int max_coord() const { return entries_.empty() ? 0 : entries_.back().coord; }
  /// The same index as a MultiIndex; throws std::domain_error on a negative entry.
  MultiIndex to_multi() const;

  friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
  friend std::strong_ordering operator<=>(const SignedIndex& a, const SignedIndex& b);

 private:
  std::vector<Entry> entries_;
};

}  // namespace dbar
