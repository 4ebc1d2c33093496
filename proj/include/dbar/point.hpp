#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dbar {

using cplx = std::complex<double>;

/// Finitely supported point of l¹: coordinate ν ↦ z_ν, zeros implied
/// elsewhere. Zero values are never stored.
class Point {
 public:
  struct Entry {
    int coord;
    cplx value;
  };

  Point() = default;
  Point(std::initializer_list<std::pair<int, cplx>> entries);
  static Point from_pairs(std::vector<std::pair<int, cplx>> entries);
  /// Dense vector (z_1, ..., z_N) into sparse form.
  static Point from_dense(std::span<const cplx> values);

  /// Parses `nu1:val1,nu2:val2` with strictly increasing ν and real values.
  static Point parse(std::string_view text);

  cplx operator[](int coord) const;
  int support_size() const { return static_cast<int>(entries_.size()); }
  int max_coord() const { return entries_.empty() ? 0 : entries_.back().coord; }
  double l1_norm() const;
  std::span<const Entry> entries() const { return entries_; }

  /// Dense (z_1, ..., z_dim); throws if the support exceeds dim.
  std::vector<cplx> dense(int dim) const;
  /// Moduli |z_ν| of stored entries, in coordinate order.
  std::vector<double> moduli() const;
  Point scaled(double factor) const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace dbar
