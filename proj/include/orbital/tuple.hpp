#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detail/text.hpp"
#include "transform.hpp"
#include "var.hpp"

namespace orbital {

template <class A>
std::string atom_text(const A& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

inline std::string atom_text(const std::string& a) { return a; }

/// Named tuple over a ground set: finite partial map var -> A.
template <class A>
class NamedTuple {
 public:
  using value_type = std::pair<Var, A>;
  using const_iterator = typename std::vector<value_type>::const_iterator;

  NamedTuple() = default;
  NamedTuple(std::initializer_list<value_type> entries)
      : NamedTuple(std::vector<value_type>(entries)) {}

  explicit NamedTuple(std::vector<value_type> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (entries_[i - 1].first == entries_[i].first) {
        throw Error("tuple assigns " + entries_[i].first.str() + " twice");
      }
    }
  }

  /// Builds from entries already sorted by variable without duplicates.
  static NamedTuple from_sorted(std::vector<value_type> entries) {
    NamedTuple t;
    t.entries_ = std::move(entries);
    return t;
  }

  const A* at(Var x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](value_type const& p, Var v) { return p.first < v; });
    if (it != entries_.end() && it->first == x) return &it->second;
    return nullptr;
  }

  bool defined_at(Var x) const { return at(x) != nullptr; }

  /// df
  VarSet domain() const {
    std::vector<Var> d;
    d.reserve(entries_.size());
    for (auto const& e : entries_) d.push_back(e.first);
    return VarSet(std::move(d));
  }

  /// rng, sorted and deduplicated.
  std::vector<A> range() const {
    std::vector<A> r;
    r.reserve(entries_.size());
    for (auto const& e : entries_) r.push_back(e.second);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }

  bool is_injective() const { return range().size() == entries_.size(); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }
  const std::vector<value_type>& entries() const noexcept { return entries_; }

  friend bool operator==(const NamedTuple&, const NamedTuple&) = default;
  friend auto operator<=>(const NamedTuple& a, const NamedTuple& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<value_type> entries_;
};

/// t o lam: defined at y iff lam(y) in df(t).
template <class A>
NamedTuple<A> act(const NamedTuple<A>& t, const Transform& lam) {
  std::vector<typename NamedTuple<A>::value_type> out;
  out.reserve(lam.size());
  for (auto const& [y, x] : lam) {
    if (const A* v = t.at(x)) out.emplace_back(y, *v);
  }
  return NamedTuple<A>::from_sorted(std::move(out));
}

/// t|_Z
template <class A>
NamedTuple<A> restrict(const NamedTuple<A>& t, const VarSet& z) {
  std::vector<typename NamedTuple<A>::value_type> out;
  for (auto const& e : t) {
    if (z.contains(e.first)) out.push_back(e);
  }
  return NamedTuple<A>::from_sorted(std::move(out));
}

/// True iff `tt` extends `t`, i.e. tt o pi_df(t) == t.
template <class A>
bool extends(const NamedTuple<A>& t, const NamedTuple<A>& tt) {
  for (auto const& [x, v] : t) {
    const A* w = tt.at(x);
    if (w == nullptr || !(*w == v)) return false;
  }
  return true;
}

/// t1 (+) t2; nullopt when the tuples disagree on a shared variable.
template <class A>
std::optional<NamedTuple<A>> merge(const NamedTuple<A>& t1, const NamedTuple<A>& t2) {
  std::vector<typename NamedTuple<A>::value_type> out;
  out.reserve(t1.size() + t2.size());
  auto a = t1.begin();
  auto b = t2.begin();
  while (a != t1.end() || b != t2.end()) {
    if (b == t2.end() || (a != t1.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == t1.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      if (!(a->second == b->second)) return std::nullopt;
      out.push_back(*a++);
      ++b;
    }
  }
  return NamedTuple<A>::from_sorted(std::move(out));
}

/// target^{-r} o t: y goes to the first x (by index) with target(x) == t(y).
/// With an injective `target` this is target^{-1} o t.
template <class A>
Transform pullback(const NamedTuple<A>& target, const NamedTuple<A>& t) {
  std::map<A, Var> first;
  for (auto const& [x, v] : target) first.emplace(v, x);
  std::vector<Transform::value_type> pairs;
  pairs.reserve(t.size());
  for (auto const& [y, v] : t) {
    auto it = first.find(v);
    if (it != first.end()) pairs.emplace_back(y, it->second);
  }
  return Transform(std::move(pairs));
}

template <class A>
std::string to_string(const NamedTuple<A>& t) {
  std::string out = "{";
  bool first = true;
  for (auto const& [x, v] : t) {
    if (!first) out += ", ";
    first = false;
    out += x.str() + ":" + atom_text(v);
  }
  return out + "}";
}

template <class A>
std::ostream& operator<<(std::ostream& os, const NamedTuple<A>& t) {
  return os << to_string(t);
}

/// Parses `{x1:a, x2:b}` over string atoms.
inline NamedTuple<std::string> parse_tuple(std::string_view text) {
  detail::Cursor in(text);
  in.expect('{');
  std::vector<NamedTuple<std::string>::value_type> entries;
  if (!in.consume('}')) {
    do {
      Var x = in.var();
      in.expect(':');
      entries.emplace_back(x, in.token());
    } while (in.consume(','));
    in.expect('}');
  }
  in.finish();
  return NamedTuple<std::string>(std::move(entries));
}

}  // namespace orbital
