#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbital {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The variable x_i of the enumeration x1, x2, x3, ...
class Var {
 public:
  explicit constexpr Var(std::uint32_t index) : index_(index) {
    if (index == 0) {
      throw Error("variable index must be positive");
    }
  }

  constexpr std::uint32_t index() const noexcept { return index_; }

  friend constexpr auto operator<=>(Var, Var) = default;

  std::string str() const { return "x" + std::to_string(index_); }

 private:
  std::uint32_t index_;
};

inline std::ostream& operator<<(std::ostream& os, Var x) { return os << x.str(); }

/// Parses `x<digits>`.
inline Var parse_var(std::string_view text) {
  if (text.size() < 2 || text.front() != 'x') {
    throw Error("malformed variable '" + std::string(text) + "'");
  }
  std::uint32_t index = 0;
  auto const* first = text.data() + 1;
  auto const* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc() || ptr != last || index == 0) {
    throw Error("malformed variable '" + std::string(text) + "'");
  }
  return Var(index);
}

/// Finite set of variables, kept sorted by index.
class VarSet {
 public:
  using const_iterator = std::vector<Var>::const_iterator;

  VarSet() = default;
  VarSet(std::initializer_list<Var> vars) : vars_(vars) { normalize(); }
  explicit VarSet(std::vector<Var> vars) : vars_(std::move(vars)) { normalize(); }

  /// {x1, ..., xn}
  static VarSet initial_segment(std::uint32_t n) {
    VarSet result;
    result.vars_.reserve(n);
    for (std::uint32_t i = 1; i <= n; ++i) {
      result.vars_.emplace_back(i);
    }
    return result;
  }

  bool contains(Var x) const { return std::binary_search(vars_.begin(), vars_.end(), x); }

  void insert(Var x) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
    if (it == vars_.end() || *it != x) {
      vars_.insert(it, x);
    }
  }

  void erase(Var x) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
    if (it != vars_.end() && *it == x) {
      vars_.erase(it);
    }
  }

  std::size_t size() const noexcept { return vars_.size(); }
  bool empty() const noexcept { return vars_.empty(); }
  const_iterator begin() const noexcept { return vars_.begin(); }
  const_iterator end() const noexcept { return vars_.end(); }
  Var operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Var>& elements() const noexcept { return vars_; }

  /// Position of `x` in the sorted order; size() when absent.
  std::size_t position(Var x) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), x);
    if (it == vars_.end() || *it != x) {
      return vars_.size();
    }
    return static_cast<std::size_t>(it - vars_.begin());
  }

  bool subset_of(const VarSet& other) const {
    return std::includes(other.vars_.begin(), other.vars_.end(), vars_.begin(), vars_.end());
  }

  friend VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.vars_));
    return r;
  }
  friend VarSet set_intersection(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.vars_));
    return r;
  }
  friend VarSet set_difference(const VarSet& a, const VarSet& b) {
    VarSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r.vars_));
    return r;
  }

  friend bool operator==(const VarSet&, const VarSet&) = default;
  friend auto operator<=>(const VarSet& a, const VarSet& b) { return a.vars_ <=> b.vars_; }

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (i != 0) out += ",";
      out += vars_[i].str();
    }
    return out + "}";
  }

 private:
  void normalize() {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  }

  std::vector<Var> vars_;
};

inline std::ostream& operator<<(std::ostream& os, const VarSet& s) { return os << s.str(); }

/// Domain of an element: either a finite variable set or the whole of var.
/// The infinite case only ever describes the bottom element.
class Schema {
 public:
  Schema() = default;
  Schema(VarSet vars) : vars_(std::move(vars)) {}  // NOLINT: implicit on purpose

  static Schema all() {
    Schema s;
    s.all_ = true;
    return s;
  }

  bool is_all() const noexcept { return all_; }
  bool is_finite() const noexcept { return !all_; }

  const VarSet& vars() const {
    if (all_) {
      throw Error("the schema of all variables has no finite listing");
    }
    return vars_;
  }

  bool contains(Var x) const { return all_ || vars_.contains(x); }

  bool subset_of(const Schema& other) const {
    if (other.all_) return true;
    if (all_) return false;
    return vars_.subset_of(other.vars_);
  }

  friend Schema schema_union(const Schema& a, const Schema& b) {
    if (a.all_ || b.all_) return all();
    return Schema(set_union(a.vars_, b.vars_));
  }

  friend bool operator==(const Schema&, const Schema&) = default;
  friend auto operator<=>(const Schema& a, const Schema& b) {
    if (a.all_ != b.all_) {
      return a.all_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.vars_ <=> b.vars_;
  }

  std::string str() const { return all_ ? std::string("ALL") : vars_.str(); }

 private:
  bool all_ = false;
  VarSet vars_;
};

inline std::ostream& operator<<(std::ostream& os, const Schema& s) { return os << s.str(); }

}  // namespace orbital
