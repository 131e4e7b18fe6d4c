#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "transform.hpp"
#include "tuple.hpp"
#include "var.hpp"

namespace orbital {

/// Handle to a term interned in a TermStore. Handles from different stores
/// must not be mixed.
struct GroundTerm {
  std::uint32_t id = 0;
  friend auto operator<=>(GroundTerm, GroundTerm) = default;
};

inline std::ostream& operator<<(std::ostream& os, GroundTerm t) { return os << "t" << t.id; }

using TermTuple = NamedTuple<GroundTerm>;

/// Hash-consed ground terms v t1 .. tn over function symbols drawn from an
/// instance's elements. Symbols are numbered in the order they are added.
template <class E>
class TermStore {
 public:
  std::uint32_t add_symbol(const E& v, std::size_t arity) {
    auto [it, fresh] = symbol_index_.emplace(v, static_cast<std::uint32_t>(symbols_.size()));
    if (fresh) {
      symbols_.push_back(v);
      arities_.push_back(arity);
    } else if (arities_[it->second] != arity) {
      throw Error("symbol registered with two arities");
    }
    return it->second;
  }

  std::optional<std::uint32_t> symbol_of(const E& v) const {
    auto it = symbol_index_.find(v);
    if (it == symbol_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t symbol_count() const noexcept { return symbols_.size(); }
  const E& symbol(std::uint32_t s) const { return symbols_.at(s); }
  std::size_t symbol_arity(std::uint32_t s) const { return arities_.at(s); }

  GroundTerm make(std::uint32_t head, std::vector<GroundTerm> children) {
    if (head >= symbols_.size()) throw Error("unknown symbol");
    if (children.size() != arities_[head]) throw Error("wrong number of arguments for symbol " + symbol_name(head));
    std::uint32_t depth = 1;
    for (GroundTerm c : children) {
      if (c.id >= nodes_.size()) throw Error("unknown child term");
      depth = std::max(depth, nodes_[c.id].depth + 1);
    }
    Key key{head, children};
    auto it = index_.find(key);
    if (it != index_.end()) return GroundTerm{it->second};
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{head, std::move(children), depth});
    index_.emplace(std::move(key), id);
    return GroundTerm{id};
  }

  std::optional<GroundTerm> find(std::uint32_t head, const std::vector<GroundTerm>& children) const {
    auto it = index_.find(Key{head, children});
    if (it == index_.end()) return std::nullopt;
    return GroundTerm{it->second};
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  std::uint32_t head_index(GroundTerm t) const { return node(t).head; }
  const E& head(GroundTerm t) const { return symbols_[node(t).head]; }
  const std::vector<GroundTerm>& children(GroundTerm t) const { return node(t).children; }
  std::size_t arity(GroundTerm t) const { return node(t).children.size(); }
  std::size_t depth(GroundTerm t) const { return node(t).depth; }

  /// Depth first, then head symbol number, then children left to right.
  bool less(GroundTerm a, GroundTerm b) const {
    if (a == b) return false;
    const Node& x = node(a);
    const Node& y = node(b);
    if (x.depth != y.depth) return x.depth < y.depth;
    if (x.head != y.head) return x.head < y.head;
    for (std::size_t i = 0; i < x.children.size(); ++i) {
      if (x.children[i] != y.children[i]) return less(x.children[i], y.children[i]);
    }
    return false;
  }

  auto canonical() const {
    return [this](GroundTerm a, GroundTerm b) { return less(a, b); };
  }

  static std::string symbol_name(std::uint32_t s) { return "v" + std::to_string(s); }

  /// Prefix form, e.g. v3(v0,v1).
  std::string str(GroundTerm t) const {
    const Node& n = node(t);
    std::string out = symbol_name(n.head);
    if (n.children.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += ',';
      out += str(n.children[i]);
    }
    return out + ')';
  }

  std::string str(const TermTuple& t) const {
    std::string out = "{";
    bool first = true;
    for (auto const& [x, s] : t) {
      if (!first) out += ", ";
      first = false;
      out += x.str() + ":" + str(s);
    }
    return out + "}";
  }

 private:
  struct Node {
    std::uint32_t head;
    std::vector<GroundTerm> children;
    std::uint32_t depth;
  };
  using Key = std::pair<std::uint32_t, std::vector<GroundTerm>>;

  const Node& node(GroundTerm t) const {
    if (t.id >= nodes_.size()) throw Error("unknown term");
    return nodes_[t.id];
  }

  std::vector<E> symbols_;
  std::vector<std::size_t> arities_;
  std::map<E, std::uint32_t> symbol_index_;
  std::vector<Node> nodes_;
  std::map<Key, std::uint32_t> index_;
};

/// Smallest subterm-closed superset, in canonical order.
template <class E>
std::vector<GroundTerm> subterm_closure(const TermStore<E>& store, const std::vector<GroundTerm>& terms) {
  std::set<GroundTerm> seen;
  std::vector<GroundTerm> stack(terms.begin(), terms.end());
  while (!stack.empty()) {
    GroundTerm t = stack.back();
    stack.pop_back();
    if (!seen.insert(t).second) continue;
    for (GroundTerm c : store.children(t)) stack.push_back(c);
  }
  std::vector<GroundTerm> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), store.canonical());
  return out;
}

template <class E>
bool is_subterm_closed(const TermStore<E>& store, const std::vector<GroundTerm>& terms) {
  std::set<GroundTerm> in(terms.begin(), terms.end());
  for (GroundTerm t : terms) {
    for (GroundTerm c : store.children(t)) {
      if (!in.count(c)) return false;
    }
  }
  return true;
}

template <class E>
bool is_base_tuple(const TermStore<E>& store, const TermTuple& b) {
  return b.is_injective() && is_subterm_closed(store, b.range());
}

/// The closure of rng(t) in canonical order, assigned to x1, x2, ...
template <class E>
TermTuple base_tuple_for(const TermStore<E>& store, const TermTuple& t) {
  auto closure = subterm_closure(store, t.range());
  std::vector<TermTuple::value_type> entries;
  entries.reserve(closure.size());
  for (std::size_t i = 0; i < closure.size(); ++i) entries.emplace_back(Var(i + 1), closure[i]);
  return TermTuple::from_sorted(std::move(entries));
}

/// <x1:t1, .., xn:tn, x(n+1):s> for s = v t1 .. tn.
template <class E>
TermTuple eta(const TermStore<E>& store, GroundTerm s) {
  std::vector<TermTuple::value_type> entries;
  auto const& ch = store.children(s);
  for (std::size_t i = 0; i < ch.size(); ++i) entries.emplace_back(Var(i + 1), ch[i]);
  entries.emplace_back(Var(ch.size() + 1), s);
  return TermTuple::from_sorted(std::move(entries));
}

/// b restricted to the variables whose value lies in `keep`.
inline TermTuple restrict_to_range(const TermTuple& b, const std::vector<GroundTerm>& keep) {
  std::set<GroundTerm> in(keep.begin(), keep.end());
  std::vector<TermTuple::value_type> entries;
  for (auto const& e : b) {
    if (in.count(e.second)) entries.push_back(e);
  }
  return TermTuple::from_sorted(std::move(entries));
}

}  // namespace orbital
