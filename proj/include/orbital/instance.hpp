#pragma once

#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "table.hpp"
#include "transform.hpp"
#include "var.hpp"

namespace orbital {

/// Bounds for the checkers. Quantifiers over variables, transformations and
/// elements are cut down to what these allow.
struct SampleConfig {
  std::uint32_t var_window = 3;             // variables x1..xN
  std::size_t element_budget = 4096;        // cap on the exhaustive element set
  std::size_t transform_budget = 64;        // transformations per exhaustive sweep
  std::size_t random_cases = 10000;         // random cases per check
  std::uint64_t seed = 1;
  std::uint32_t exhaustive_schema_vars = 2; // exhaustive elements use schemas inside x1..xK

  void validate() const {
    if (var_window < 2) throw Error("var_window must be at least 2");
    if (element_budget < 1 || transform_budget < 1) throw Error("budgets must be at least 1");
    if (exhaustive_schema_vars > var_window) throw Error("exhaustive_schema_vars exceeds var_window");
  }

  VarSet window() const { return VarSet::initial_segment(var_window); }
};

using Rng = std::mt19937_64;

template <class I>
concept OrbitalInstance = requires(const I& inst, const typename I::element_type& u, const Transform& lam, Var x) {
  typename I::element_type;
  { inst.meet(u, u) } -> std::convertible_to<typename I::element_type>;
  { inst.zero() } -> std::convertible_to<typename I::element_type>;
  { inst.one() } -> std::convertible_to<typename I::element_type>;
  { inst.act(u, lam) } -> std::convertible_to<typename I::element_type>;
  { inst.diag(x, x) } -> std::convertible_to<typename I::element_type>;
  { inst.dom(u) } -> std::convertible_to<Schema>;
  { inst.describe(u) } -> std::convertible_to<std::string>;
  { u == u } -> std::convertible_to<bool>;
};

template <class I>
concept SampleableInstance = OrbitalInstance<I> && requires(const I& inst, const SampleConfig& cfg, Rng& rng) {
  { inst.exhaustive_elements(cfg) } -> std::convertible_to<std::vector<typename I::element_type>>;
  { inst.random_element(cfg, rng) } -> std::convertible_to<typename I::element_type>;
};

/// Instances that can list the elements with a given finite domain.
template <class I>
concept EnumerableInstance = OrbitalInstance<I> && requires(const I& inst, const VarSet& d, std::size_t limit) {
  { inst.elements_with_domain(d, limit) } -> std::convertible_to<std::vector<typename I::element_type>>;
};

/// u <= v, through the instance's own order when it has one.
template <OrbitalInstance I>
bool leq(const I& inst, const typename I::element_type& u, const typename I::element_type& v) {
  if constexpr (requires { { inst.leq(u, v) } -> std::convertible_to<bool>; }) {
    return inst.leq(u, v);
  } else {
    return inst.meet(u, v) == u;
  }
}

/// Tab(G) over a finite nonempty ground set.
template <class A = std::string>
class TableAlgebra {
 public:
  using element_type = Table<A>;
  using atom_type = A;

  explicit TableAlgebra(std::vector<A> ground) : ground_(make_ground(std::move(ground))) {
    if (ground_->empty()) throw Error("the ground set must be nonempty");
  }
  explicit TableAlgebra(GroundPtr<A> ground) : ground_(std::move(ground)) {
    if (!ground_ || ground_->empty()) throw Error("the ground set must be nonempty");
  }

  const GroundPtr<A>& ground() const noexcept { return ground_; }

  Table<A> meet(const Table<A>& u, const Table<A>& v) const { return natural_join(u, v); }
  Table<A> zero() const { return bottom(ground_); }
  Table<A> one() const { return top(ground_); }
  Table<A> act(const Table<A>& u, const Transform& lam) const { return act_table(u, lam); }
  Table<A> diag(Var x, Var y) const { return diagonal(x, y, ground_); }
  Schema dom(const Table<A>& u) const { return u.schema(); }
  bool leq(const Table<A>& u, const Table<A>& v) const { return orbital::leq(u, v); }
  std::string describe(const Table<A>& u) const { return to_string(u); }

  /// Every table whose schema lies inside x1..xK (K = exhaustive_schema_vars),
  /// each exactly once. Throws when that exceeds the element budget.
  std::vector<Table<A>> exhaustive_elements(const SampleConfig& cfg) const {
    std::vector<Table<A>> out{zero()};
    VarSet base = VarSet::initial_segment(cfg.exhaustive_schema_vars);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << base.size()); ++mask) {
      VarSet schema = subset(base, mask);
      std::size_t rows = full_row_count(schema);
      if (rows >= 63) throw Error("exhaustive enumeration too large for schema " + schema.str());
      std::uint64_t count = std::uint64_t{1} << rows;
      if (out.size() + count - 1 > cfg.element_budget) {
        throw Error("exhaustive element set exceeds the element budget");
      }
      for (std::uint64_t pick = 1; pick < count; ++pick) out.push_back(table_from_mask(schema, pick));
    }
    return out;
  }

  /// Nonempty tables with the given schema, in bitmask order, at most `limit`.
  std::vector<Table<A>> elements_with_domain(const VarSet& schema, std::size_t limit) const {
    std::vector<Table<A>> out;
    std::size_t rows = full_row_count(schema);
    if (rows >= 63) throw Error("too many rows over schema " + schema.str());
    std::uint64_t count = std::uint64_t{1} << rows;
    for (std::uint64_t pick = 1; pick < count && out.size() < limit; ++pick) {
      out.push_back(table_from_mask(schema, pick));
    }
    return out;
  }

  /// Number of nonempty tables with the given schema.
  std::uint64_t count_with_domain(const VarSet& schema) const {
    std::size_t rows = full_row_count(schema);
    if (rows >= 63) return UINT64_MAX;
    return (std::uint64_t{1} << rows) - 1;
  }

  /// Schema uniform over subsets of the window, each row kept with probability 1/2.
  /// About one draw in sixteen is the empty table.
  Table<A> random_element(const SampleConfig& cfg, Rng& rng) const {
    if (std::uniform_int_distribution<int>(0, 15)(rng) == 0) return zero();
    VarSet w = cfg.window();
    std::uint64_t mask = std::uniform_int_distribution<std::uint64_t>(0, (std::uint64_t{1} << w.size()) - 1)(rng);
    return random_element_with_schema(subset(w, mask), rng);
  }

  /// Random table with the given schema; may be empty.
  Table<A> random_element_with_schema(const VarSet& schema, Rng& rng) const {
    std::vector<A> cells;
    std::size_t kept = 0;
    for_each_row(schema, [&](const std::vector<A>& row) {
      if (rng() & 1U) {
        cells.insert(cells.end(), row.begin(), row.end());
        ++kept;
      }
    });
    return Table<A>::from_cells(ground_, schema, std::move(cells), kept);
  }

  /// G^X
  Table<A> full(const VarSet& schema) const {
    std::vector<A> cells;
    std::size_t rows = 0;
    for_each_row(schema, [&](const std::vector<A>& row) {
      cells.insert(cells.end(), row.begin(), row.end());
      ++rows;
    });
    return Table<A>::from_cells(ground_, schema, std::move(cells), rows);
  }

 private:
  static VarSet subset(const VarSet& base, std::uint64_t mask) {
    std::vector<Var> picked;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) picked.push_back(base[i]);
    }
    return VarSet(std::move(picked));
  }

  std::size_t full_row_count(const VarSet& schema) const {
    std::size_t rows = 1;
    for (std::size_t i = 0; i < schema.size(); ++i) {
      if (rows > (std::size_t{1} << 62) / ground_->size()) return std::size_t{1} << 62;
      rows *= ground_->size();
    }
    return rows;
  }

  // Rows of G^schema in lexicographic order.
  template <class F>
  void for_each_row(const VarSet& schema, F&& f) const {
    std::size_t k = schema.size();
    std::vector<std::size_t> digit(k, 0);
    std::vector<A> row(k);
    while (true) {
      for (std::size_t c = 0; c < k; ++c) row[c] = (*ground_)[digit[c]];
      f(row);
      std::size_t c = k;
      while (c > 0) {
        --c;
        if (++digit[c] < ground_->size()) break;
        digit[c] = 0;
        if (c == 0) return;
      }
      if (k == 0) return;
    }
  }

  Table<A> table_from_mask(const VarSet& schema, std::uint64_t pick) const {
    std::vector<A> cells;
    std::size_t idx = 0, kept = 0;
    for_each_row(schema, [&](const std::vector<A>& row) {
      if (pick & (std::uint64_t{1} << idx)) {
        cells.insert(cells.end(), row.begin(), row.end());
        ++kept;
      }
      ++idx;
    });
    return Table<A>::from_cells(ground_, schema, std::move(cells), kept);
  }

  GroundPtr<A> ground_;
};

static_assert(SampleableInstance<TableAlgebra<>>);
static_assert(EnumerableInstance<TableAlgebra<>>);

}  // namespace orbital
