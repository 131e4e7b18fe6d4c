#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "transform.hpp"
#include "tuple.hpp"
#include "var.hpp"

namespace orbital {

/// Finite set of atoms, sorted.
template <class A>
class GroundSet {
 public:
  GroundSet() = default;
  GroundSet(std::initializer_list<A> atoms) : GroundSet(std::vector<A>(atoms)) {}
  explicit GroundSet(std::vector<A> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  }

  bool contains(const A& a) const { return std::binary_search(atoms_.begin(), atoms_.end(), a); }
  std::size_t size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  auto begin() const noexcept { return atoms_.begin(); }
  auto end() const noexcept { return atoms_.end(); }
  const A& operator[](std::size_t i) const { return atoms_[i]; }
  const std::vector<A>& atoms() const noexcept { return atoms_; }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i != 0) out += ",";
      out += atom_text(atoms_[i]);
    }
    return out + "}";
  }

 private:
  std::vector<A> atoms_;
};

template <class A>
using GroundPtr = std::shared_ptr<const GroundSet<A>>;

template <class A>
GroundPtr<A> make_ground(std::vector<A> atoms) {
  return std::make_shared<const GroundSet<A>>(std::move(atoms));
}

/// A table over G: a finite set of named tuples sharing one schema.
/// Rows are stored row-major with columns in schema order, sorted and
/// deduplicated, so equality is structural. The empty table has schema ALL.
template <class A>
class Table {
 public:
  using row_type = std::span<const A>;

  /// Empty table (bottom element).
  explicit Table(GroundPtr<A> ground) : ground_(std::move(ground)), schema_(Schema::all()) {
    if (!ground_) throw Error("table without a ground set");
  }

  static Table empty(GroundPtr<A> ground) { return Table(std::move(ground)); }

  /// {<>} (top element).
  static Table unit(GroundPtr<A> ground) {
    Table t(std::move(ground));
    t.schema_ = Schema(VarSet{});
    t.rows_ = 1;
    return t;
  }

  /// Rows given as value vectors aligned with `columns` (sorted schema order).
  /// Validates arity and membership of every value in the ground set.
  static Table from_rows(GroundPtr<A> ground, const VarSet& columns, std::vector<std::vector<A>> rows) {
    Table t(std::move(ground));
    if (rows.empty()) return t;
    std::vector<A> cells;
    cells.reserve(rows.size() * columns.size());
    for (auto& row : rows) {
      if (row.size() != columns.size()) {
        throw Error("row arity " + std::to_string(row.size()) + " does not match schema " + columns.str());
      }
      for (auto& v : row) {
        if (!t.ground_->contains(v)) {
          throw Error("value '" + atom_text(v) + "' is not in the ground set " + t.ground_->str());
        }
        cells.push_back(std::move(v));
      }
    }
    t.assign(columns, std::move(cells), rows.size());
    return t;
  }

  /// All tuples must share one domain of definition.
  static Table from_tuples(GroundPtr<A> ground, const std::vector<NamedTuple<A>>& tuples) {
    if (tuples.empty()) return Table(std::move(ground));
    VarSet columns = tuples.front().domain();
    std::vector<std::vector<A>> rows;
    rows.reserve(tuples.size());
    for (auto const& t : tuples) {
      if (t.domain() != columns) {
        throw Error("tuple " + to_string(t) + " does not have schema " + columns.str());
      }
      std::vector<A> row;
      row.reserve(t.size());
      for (auto const& e : t) row.push_back(e.second);
      rows.push_back(std::move(row));
    }
    return from_rows(std::move(ground), columns, std::move(rows));
  }

  /// Trusted construction used by the algebra operations (no ground validation).
  static Table from_cells(GroundPtr<A> ground, const VarSet& columns, std::vector<A> cells, std::size_t rows) {
    Table t(std::move(ground));
    if (rows == 0) return t;
    t.assign(columns, std::move(cells), rows);
    return t;
  }

  const Schema& schema() const noexcept { return schema_; }
  bool is_empty() const noexcept { return rows_ == 0; }
  std::size_t size() const noexcept { return rows_; }
  std::size_t arity() const { return schema_.is_all() ? 0 : schema_.vars().size(); }
  const GroundPtr<A>& ground() const noexcept { return ground_; }

  row_type row(std::size_t i) const {
    std::size_t k = arity();
    return row_type(cells_.data() + i * k, k);
  }

  NamedTuple<A> tuple(std::size_t i) const {
    auto r = row(i);
    const VarSet& cols = schema_.vars();
    std::vector<typename NamedTuple<A>::value_type> entries;
    entries.reserve(r.size());
    for (std::size_t c = 0; c < r.size(); ++c) entries.emplace_back(cols[c], r[c]);
    return NamedTuple<A>::from_sorted(std::move(entries));
  }

  std::vector<NamedTuple<A>> tuples() const {
    std::vector<NamedTuple<A>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(tuple(i));
    return out;
  }

  bool contains_row(row_type r) const {
    std::size_t lo = 0, hi = rows_;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      auto m = row(mid);
      auto c = std::lexicographical_compare_three_way(m.begin(), m.end(), r.begin(), r.end());
      if (c == 0) return true;
      if (c < 0) lo = mid + 1; else hi = mid;
    }
    return false;
  }

  bool contains(const NamedTuple<A>& t) const {
    if (is_empty() || t.domain() != schema_.vars()) return false;
    std::vector<A> r;
    r.reserve(t.size());
    for (auto const& e : t) r.push_back(e.second);
    return contains_row(r);
  }

  /// Structural equality; the ground set is not compared.
  friend bool operator==(const Table& a, const Table& b) {
    return a.rows_ == b.rows_ && a.schema_ == b.schema_ && a.cells_ == b.cells_;
  }

  friend auto operator<=>(const Table& a, const Table& b) {
    if (auto c = a.schema_ <=> b.schema_; c != 0) return c;
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.cells_.begin(), a.cells_.end(), b.cells_.begin(),
                                                  b.cells_.end());
  }

 private:
  void assign(const VarSet& columns, std::vector<A> cells, std::size_t rows) {
    schema_ = Schema(columns);
    std::size_t k = columns.size();
    if (k == 0) {
      cells_.clear();
      rows_ = 1;
      return;
    }
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto row_at = [&](std::size_t i) { return std::span<const A>(cells.data() + i * k, k); };
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      auto rx = row_at(x);
      auto ry = row_at(y);
      return std::lexicographical_compare(rx.begin(), rx.end(), ry.begin(), ry.end());
    });
    cells_.clear();
    cells_.reserve(cells.size());
    rows_ = 0;
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      auto r = row_at(order[idx]);
      if (idx > 0) {
        auto prev = row_at(order[idx - 1]);
        if (std::equal(r.begin(), r.end(), prev.begin())) continue;
      }
      cells_.insert(cells_.end(), r.begin(), r.end());
      ++rows_;
    }
  }

  GroundPtr<A> ground_;
  Schema schema_;
  std::size_t rows_ = 0;
  std::vector<A> cells_;
};

namespace detail {

template <class A>
void require_same_ground(const Table<A>& a, const Table<A>& b) {
  if (a.ground() != b.ground() && !(*a.ground() == *b.ground())) {
    throw Error("tables over different ground sets " + a.ground()->str() + " and " + b.ground()->str());
  }
}

}  // namespace detail

template <class A>
const Schema& schema_of(const Table<A>& t) {
  return t.schema();
}

template <class A>
Table<A> bottom(GroundPtr<A> ground) {
  return Table<A>::empty(std::move(ground));
}

template <class A>
Table<A> top(GroundPtr<A> ground) {
  return Table<A>::unit(std::move(ground));
}

/// Natural join. Iterates the smaller operand and probes the larger one on
/// its shared columns.
template <class A>
Table<A> natural_join(const Table<A>& t1, const Table<A>& t2) {
  detail::require_same_ground(t1, t2);
  if (t1.is_empty() || t2.is_empty()) return Table<A>::empty(t1.ground());

  const Table<A>& small = t1.size() <= t2.size() ? t1 : t2;
  const Table<A>& large = t1.size() <= t2.size() ? t2 : t1;
  const VarSet& sc = small.schema().vars();
  const VarSet& lc = large.schema().vars();
  VarSet out_cols = set_union(sc, lc);
  VarSet shared = set_intersection(sc, lc);

  std::vector<std::size_t> small_shared, large_shared;
  for (Var x : shared) {
    small_shared.push_back(sc.position(x));
    large_shared.push_back(lc.position(x));
  }
  // For each output column: (from_small, column index).
  std::vector<std::pair<bool, std::size_t>> source;
  source.reserve(out_cols.size());
  for (Var x : out_cols) {
    std::size_t p = sc.position(x);
    if (p != sc.size()) source.emplace_back(true, p);
    else source.emplace_back(false, lc.position(x));
  }

  // Index of the larger table keyed by its shared columns.
  std::vector<std::size_t> index(large.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  auto key_less = [&](std::size_t x, std::size_t y) {
    auto rx = large.row(x);
    auto ry = large.row(y);
    for (std::size_t c : large_shared) {
      if (rx[c] < ry[c]) return true;
      if (ry[c] < rx[c]) return false;
    }
    return false;
  };
  if (!large_shared.empty()) std::sort(index.begin(), index.end(), key_less);

  std::vector<A> cells;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < small.size(); ++i) {
    auto sr = small.row(i);
    // Range of large rows agreeing with sr on the shared columns.
    auto cmp_key = [&](std::size_t li) {
      auto lr = large.row(li);
      for (std::size_t s = 0; s < large_shared.size(); ++s) {
        const A& lv = lr[large_shared[s]];
        const A& sv = sr[small_shared[s]];
        if (lv < sv) return -1;
        if (sv < lv) return 1;
      }
      return 0;
    };
    auto lo = std::partition_point(index.begin(), index.end(), [&](std::size_t li) { return cmp_key(li) < 0; });
    auto hi = std::partition_point(lo, index.end(), [&](std::size_t li) { return cmp_key(li) == 0; });
    for (auto it = lo; it != hi; ++it) {
      auto lr = large.row(*it);
      for (auto const& [from_small, c] : source) cells.push_back(from_small ? sr[c] : lr[c]);
      ++rows;
    }
  }
  return Table<A>::from_cells(t1.ground(), out_cols, std::move(cells), rows);
}

/// T1 <= T2 iff the projection of T1 onto schema(T2) lies in T2.
template <class A>
bool leq(const Table<A>& t1, const Table<A>& t2) {
  detail::require_same_ground(t1, t2);
  if (t1.is_empty()) return true;
  if (t2.is_empty()) return false;
  const VarSet& c1 = t1.schema().vars();
  const VarSet& c2 = t2.schema().vars();
  if (!c2.subset_of(c1)) return false;
  std::vector<std::size_t> cols;
  for (Var x : c2) cols.push_back(c1.position(x));
  std::vector<A> proj(cols.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    auto r = t1.row(i);
    for (std::size_t c = 0; c < cols.size(); ++c) proj[c] = r[cols[c]];
    if (!t2.contains_row(proj)) return false;
  }
  return true;
}

/// T . lam = { t o lam | t in T }
template <class A>
Table<A> act_table(const Table<A>& t, const Transform& lam) {
  if (t.is_empty()) return t;
  const VarSet& cols = t.schema().vars();
  std::vector<Var> out;
  std::vector<std::size_t> from;
  for (auto const& [y, x] : lam) {
    std::size_t p = cols.position(x);
    if (p != cols.size()) {
      out.push_back(y);
      from.push_back(p);
    }
  }
  VarSet out_cols(std::move(out));  // already sorted: lam is sorted by source
  std::vector<A> cells;
  cells.reserve(t.size() * from.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto r = t.row(i);
    for (std::size_t c : from) cells.push_back(r[c]);
  }
  return Table<A>::from_cells(t.ground(), out_cols, std::move(cells), t.size());
}

/// E_xy = { t in G^{x,y} | t(x) = t(y) }; E_xx = G^{x}.
template <class A>
Table<A> diagonal(Var x, Var y, GroundPtr<A> ground) {
  if (ground->empty()) throw Error("diagonal over an empty ground set");
  std::vector<A> cells;
  if (x == y) {
    for (auto const& g : *ground) cells.push_back(g);
  } else {
    for (auto const& g : *ground) {
      cells.push_back(g);
      cells.push_back(g);
    }
  }
  std::size_t rows = ground->size();
  return Table<A>::from_cells(std::move(ground), VarSet{x, y}, std::move(cells), rows);
}

/// Compact single-line form: `[x1,x2]{(a,b),(b,a)}`; the empty table is `[ALL]{}`.
template <class A>
std::string to_string(const Table<A>& t) {
  if (t.is_empty()) return "[ALL]{}";
  const VarSet& cols = t.schema().vars();
  std::string out = "[";
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c != 0) out += ",";
    out += cols[c].str();
  }
  out += "]{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != 0) out += ",";
    out += "(";
    auto r = t.row(i);
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c != 0) out += ",";
      out += atom_text(r[c]);
    }
    out += ")";
  }
  return out + "}";
}

template <class A>
std::ostream& operator<<(std::ostream& os, const Table<A>& t) {
  return os << to_string(t);
}

/// Parses the compact form produced by to_string over string atoms.
inline Table<std::string> parse_table(std::string_view text, GroundPtr<std::string> ground) {
  detail::Cursor in(text);
  in.expect('[');
  if (in.consume_word("ALL")) {
    in.expect(']');
    in.expect('{');
    in.expect('}');
    in.finish();
    return Table<std::string>::empty(std::move(ground));
  }
  std::vector<Var> cols;
  if (!in.consume(']')) {
    do {
      cols.push_back(in.var());
    } while (in.consume(','));
    in.expect(']');
  }
  VarSet columns(cols);
  if (columns.size() != cols.size() || !std::is_sorted(cols.begin(), cols.end())) {
    in.fail("columns must be listed once each in index order");
  }
  in.expect('{');
  std::vector<std::vector<std::string>> rows;
  if (!in.consume('}')) {
    do {
      in.expect('(');
      std::vector<std::string> row;
      if (!in.consume(')')) {
        do {
          row.push_back(in.token());
        } while (in.consume(','));
        in.expect(')');
      }
      rows.push_back(std::move(row));
    } while (in.consume(','));
    in.expect('}');
  }
  in.finish();
  return Table<std::string>::from_rows(std::move(ground), columns, std::move(rows));
}

}  // namespace orbital
