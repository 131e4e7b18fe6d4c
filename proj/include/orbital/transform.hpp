#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detail/text.hpp"
#include "var.hpp"

namespace orbital {

/// Finite partial transformation on the variables: a finite map var -> var.
/// Stored as (source, target) pairs sorted by source.
class Transform {
 public:
  using value_type = std::pair<Var, Var>;
  using const_iterator = std::vector<value_type>::const_iterator;

  Transform() = default;
  Transform(std::initializer_list<value_type> pairs) : Transform(std::vector<value_type>(pairs)) {}

  /// Throws when a source is mapped to two different targets.
  explicit Transform(std::vector<value_type> pairs) : map_(std::move(pairs)) {
    std::sort(map_.begin(), map_.end());
    map_.erase(std::unique(map_.begin(), map_.end()), map_.end());
    for (std::size_t i = 1; i < map_.size(); ++i) {
      if (map_[i - 1].first == map_[i].first) {
        throw Error("transformation maps " + map_[i].first.str() + " twice");
      }
    }
  }

  std::optional<Var> operator()(Var x) const {
    auto it = find(x);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  bool defined_at(Var x) const { return find(x) != map_.end(); }

  /// df
  VarSet domain() const {
    std::vector<Var> d;
    d.reserve(map_.size());
    for (auto const& [src, dst] : map_) d.push_back(src);
    return VarSet(std::move(d));
  }

  /// rng
  VarSet range() const {
    std::vector<Var> r;
    r.reserve(map_.size());
    for (auto const& [src, dst] : map_) r.push_back(dst);
    return VarSet(std::move(r));
  }

  std::size_t size() const noexcept { return map_.size(); }
  bool empty() const noexcept { return map_.empty(); }
  const_iterator begin() const noexcept { return map_.begin(); }
  const_iterator end() const noexcept { return map_.end(); }

  bool is_injective() const { return range().size() == map_.size(); }

  bool is_partial_identity() const {
    return std::all_of(map_.begin(), map_.end(), [](auto const& p) { return p.first == p.second; });
  }

  friend bool operator==(const Transform&, const Transform&) = default;
  friend auto operator<=>(const Transform& a, const Transform& b) { return a.map_ <=> b.map_; }

 private:
  const_iterator find(Var x) const {
    auto it = std::lower_bound(map_.begin(), map_.end(), x,
                               [](value_type const& p, Var v) { return p.first < v; });
    if (it != map_.end() && it->first == x) return it;
    return map_.end();
  }

  std::vector<value_type> map_;
};

/// pi_X
inline Transform partial_identity(const VarSet& xs) {
  std::vector<Transform::value_type> pairs;
  pairs.reserve(xs.size());
  for (Var x : xs) pairs.emplace_back(x, x);
  return Transform(std::move(pairs));
}

/// mu o lam, composed as relations: defined at y iff lam(y) is defined and lies in df(mu).
inline Transform compose(const Transform& mu, const Transform& lam) {
  std::vector<Transform::value_type> pairs;
  pairs.reserve(lam.size());
  for (auto const& [y, z] : lam) {
    if (auto w = mu(z)) pairs.emplace_back(y, *w);
  }
  return Transform(std::move(pairs));
}

/// lam|_Z = lam o pi_Z
inline Transform restrict(const Transform& lam, const VarSet& z) {
  return compose(lam, partial_identity(z));
}

/// lam|^Z = pi_Z o lam
inline Transform astrict(const Transform& lam, const VarSet& z) {
  return compose(partial_identity(z), lam);
}

/// {y in df(lam) | lam(y) in Z}
inline VarSet preimage(const Transform& lam, const VarSet& z) {
  std::vector<Var> out;
  for (auto const& [y, x] : lam) {
    if (z.contains(x)) out.push_back(y);
  }
  return VarSet(std::move(out));
}

/// Preimage of a domain; the preimage of all variables is df(lam).
inline VarSet preimage(const Transform& lam, const Schema& z) {
  return z.is_all() ? lam.domain() : preimage(lam, z.vars());
}

/// f^{-r}: each z in rng(f) goes to the first y (by index) with f(y) = z.
/// Satisfies compose(f, right_inverse(f)) == pi_{rng(f)}.
inline Transform right_inverse(const Transform& f) {
  std::map<Var, Var> first;
  for (auto const& [y, z] : f) first.emplace(z, y);  // sources arrive in index order
  std::vector<Transform::value_type> pairs;
  pairs.reserve(first.size());
  for (auto const& [z, y] : first) pairs.emplace_back(z, y);
  return Transform(std::move(pairs));
}

/// Set-theoretic inverse of an injective transformation.
inline Transform inverse(const Transform& f) {
  if (!f.is_injective()) {
    throw Error("inverse of a non-injective transformation");
  }
  return right_inverse(f);
}

inline bool is_folding(const Transform& f) { return compose(f, f) == f; }

/// Folding criterion through the range: f o pi_rng(f) == pi_rng(f).
inline bool is_folding_by_range(const Transform& f) {
  auto pi = partial_identity(f.range());
  return compose(f, pi) == pi;
}

struct Decomposition {
  Transform delta;  // folding  df(f) ->> B
  Transform sigma;  // bijection B ->> rng(f)
  Transform pi;     // partial identity on rng(f)
};

/// f = pi o sigma o delta with delta = f^{-r} o f, sigma = (f^{-r})^{-1}, pi = pi_rng(f).
inline Decomposition decompose(const Transform& f) {
  Transform r = right_inverse(f);
  return Decomposition{compose(r, f), inverse(r), partial_identity(f.range())};
}

inline std::string to_string(const Transform& f) {
  if (f.is_partial_identity()) {
    return "pi" + f.domain().str();
  }
  std::string out = "{";
  bool first = true;
  for (auto const& [y, z] : f) {
    if (!first) out += ", ";
    first = false;
    out += y.str() + "->" + z.str();
  }
  return out + "}";
}

inline std::ostream& operator<<(std::ostream& os, const Transform& f) { return os << to_string(f); }

namespace detail {

inline Transform read_transform(Cursor& in) {
  if (in.consume_word("pi")) {
    in.expect('{');
    std::vector<Var> xs;
    if (!in.consume('}')) {
      do {
        xs.push_back(in.var());
      } while (in.consume(','));
      in.expect('}');
    }
    return partial_identity(VarSet(std::move(xs)));
  }
  in.expect('{');
  std::vector<Transform::value_type> pairs;
  if (!in.consume('}')) {
    do {
      Var y = in.var();
      in.expect_word("->");
      Var z = in.var();
      pairs.emplace_back(y, z);
    } while (in.consume(','));
    in.expect('}');
  }
  return Transform(std::move(pairs));
}

}  // namespace detail

/// Accepts `{x1->x3, x2->x3}`, `pi{x1,x3}` and `{}`.
inline Transform parse_transform(std::string_view text) {
  detail::Cursor in(text);
  Transform f = detail::read_transform(in);
  in.finish();
  return f;
}

}  // namespace orbital
