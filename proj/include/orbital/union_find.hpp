#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace orbital {

/// Partition of {0, .., n-1}. Each class is represented by its smallest index.
class Equivalence {
 public:
  explicit Equivalence(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t size() const noexcept { return parent_.size(); }

  std::size_t find(std::size_t i) const {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  bool same(std::size_t a, std::size_t b) const { return find(a) == find(b); }

  /// Classes in order of their representatives, members ascending.
  std::vector<std::vector<std::size_t>> classes() const {
    std::vector<std::vector<std::size_t>> by_root(size());
    for (std::size_t i = 0; i < size(); ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& c : by_root) {
      if (!c.empty()) out.push_back(std::move(c));
    }
    return out;
  }

  std::size_t class_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i) n += find(i) == i;
    return n;
  }

 private:
  mutable std::vector<std::size_t> parent_;
};

}  // namespace orbital
