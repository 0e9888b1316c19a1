#pragma once

#include <cassert>
#include <cstddef>
#include <numeric>
#include <vector>

namespace pglob {

/// Disjoint sets over 0..n-1. The representative of a set is always its
/// least member, which keeps partitions canonical without a final pass.
class UnionFind {
 public:
  UnionFind() = default;
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    assert(x < parent_.size());
    std::size_t root = x;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[x] != root) {
      std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  /// Returns true if the two sets were distinct.
  bool unite(std::size_t a, std::size_t b) {
    std::size_t ra = find(a);
    std::size_t rb = find(b);
    if (ra == rb) {
      return false;
    }
    if (rb < ra) {
      std::swap(ra, rb);
    }
    parent_[rb] = ra;
    return true;
  }

  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

  std::size_t push() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }

  [[nodiscard]] std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace pglob
