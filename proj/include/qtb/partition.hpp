#pragma once

#include <string>
#include <vector>

#include "qtb/params.hpp"
#include "qtb/scalar.hpp"

namespace qtb {

/// Integer partition, parts weakly decreasing, no trailing zeros.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p);
  Partition(std::initializer_list<int> p) : Partition(std::vector<int>(p)) {}

  int size() const;
  int length() const { return static_cast<int>(parts.size()); }
  int part(int i) const {  // 1-based, 0 beyond the length
    return (i >= 1 && i <= length()) ? parts[i - 1] : 0;
  }
  Partition conjugate() const;

  /// Rows i with a removable cell; the cell is (i, parts[i-1]).
  std::vector<int> removable_rows() const;
  /// Rows i admitting a new cell at (i, part(i) + 1); includes row length()+1.
  std::vector<int> addable_rows() const;

  Partition with_added(int row) const;
  Partition with_removed(int row) const;

  /// All cells as (row, col), both 1-based, row-major.
  std::vector<std::pair<int, int>> cells() const;

  std::string str() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts == b.parts; }
  friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
  /// Graded order: by size, then lexicographically larger part vector first.
  friend bool operator<(const Partition& a, const Partition& b);
};

/// Content of cell (row, col) of a partition anchored at u: q3^(row-1) q1^(col-1) u.
template <class S>
S cell_content(const Params<S>& P, int row, int col, const S& u) {
  using Ops = ScalarOps<S>;
  return Ops::pow_int(P.q3, row - 1) * Ops::pow_int(P.q1, col - 1) * u;
}

template <class S>
std::vector<S> partition_contents(const Params<S>& P, const Partition& la, const S& u) {
  std::vector<S> out;
  for (auto [r, c] : la.cells()) out.push_back(cell_content(P, r, c, u));
  return out;
}

std::vector<Partition> partitions_of(int n);
int partition_count(int n);

/// All k-tuples of partitions with total size n, ordered lexicographically in
/// the graded partition order.
std::vector<std::vector<Partition>> partition_tuples(int k, int n);

}  // namespace qtb
