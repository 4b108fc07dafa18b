#include "qtb/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qtb {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0 || (i > 0 && parts[i] > parts[i - 1]))
      throw size_error("not a partition: parts must be weakly decreasing and positive");
  }
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition Partition::conjugate() const {
  if (parts.empty()) return {};
  std::vector<int> cols(parts[0], 0);
  for (int p : parts)
    for (int j = 0; j < p; ++j) ++cols[j];
  return Partition(cols);
}

std::vector<int> Partition::removable_rows() const {
  std::vector<int> rows;
  for (int i = 1; i <= length(); ++i)
    if (part(i) > part(i + 1)) rows.push_back(i);
  return rows;
}

std::vector<int> Partition::addable_rows() const {
  std::vector<int> rows;
  for (int i = 1; i <= length() + 1; ++i)
    if (i == 1 || part(i - 1) > part(i)) rows.push_back(i);
  return rows;
}

Partition Partition::with_added(int row) const {
  std::vector<int> p = parts;
  if (row == length() + 1)
    p.push_back(1);
  else
    ++p.at(row - 1);
  return Partition(p);
}

Partition Partition::with_removed(int row) const {
  std::vector<int> p = parts;
  --p.at(row - 1);
  return Partition(p);
}

std::vector<std::pair<int, int>> Partition::cells() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= length(); ++i)
    for (int j = 1; j <= part(i); ++j) out.emplace_back(i, j);
  return out;
}

std::string Partition::str() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

bool operator<(const Partition& a, const Partition& b) {
  int sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  return a.parts > b.parts;  // larger first part earlier within a degree
}

static void gen_partitions(int n, int maxpart, std::vector<int>& cur,
                           std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    gen_partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  gen_partitions(n, n, cur, out);
  return out;
}

int partition_count(int n) { return static_cast<int>(partitions_of(n).size()); }

std::vector<std::vector<Partition>> partition_tuples(int k, int n) {
  if (k == 0) {
    if (n == 0) return {{}};
    return {};
  }
  std::vector<std::vector<Partition>> out;
  std::vector<Partition> cur;
  std::function<void(int, int)> rec = [&](int slot, int rest) {
    if (slot == k) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    for (int m = 0; m <= rest; ++m) {
      if (slot == k - 1 && m != rest) continue;
      for (const Partition& la : partitions_of(m)) {
        cur.push_back(la);
        rec(slot + 1, rest - m);
        cur.pop_back();
      }
    }
  };
  rec(0, n);
  return out;
}

}  // namespace qtb
