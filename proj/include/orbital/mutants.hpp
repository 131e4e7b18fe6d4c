#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "instance.hpp"

namespace orbital {

struct MutantInfo {
  std::string_view id;
  std::string_view target;  // axiom the mutant is built to break
  std::string_view summary;
};

inline const std::vector<MutantInfo>& mutant_catalog() {
  static const std::vector<MutantInfo> catalog = {
      {"empty-projection-keeps", "A1", "u . {} returns u instead of {<>}"},
      {"zero-act-top", "A2", "0 . lam returns {<>}"},
      {"product-meet-empty", "A3",
       "joining two tables with disjoint nonempty schemas and at least two rows each gives the empty table"},
      {"lossy-projection", "A4",
       "a projection that removes columns and leaves at least two rows drops its last row"},
      {"duplication-complement", "A5",
       "a non-injective lam returns the complement of u . lam within G^schema"},
      {"diag-full", "A6", "d_xy for x != y is all of G^{x,y}"},
      {"act-twice", "A7", "u . lam applies lam twice"},
      {"identity-drops-row", "A8", "u . pi_schema(u) drops the last row when there are at least two"},
      {"diag-empty", "A9", "d_xx is the empty table"},
      {"diag-top", "A10", "d_xy for x != y is {<>}"},
      {"dom-drops-last", "A11", "dom(u) omits its largest variable when it has at least two"},
      {"top-infinite-dom", "A12", "dom({<>}) reports all variables"},
      {"dom-extra-var", "A13", "dom(u) of a nonempty table also contains x1000"},
  };
  return catalog;
}

inline const MutantInfo& mutant_info(std::string_view id) {
  for (auto const& m : mutant_catalog()) {
    if (m.id == id) return m;
  }
  throw Error("unknown mutant '" + std::string(id) + "'");
}

/// Tab(G) with one deliberately broken operation. The order is derived from
/// the (possibly broken) meet.
template <class A = std::string>
class MutantTableAlgebra {
 public:
  using element_type = Table<A>;

  MutantTableAlgebra(TableAlgebra<A> base, std::string_view mutant) : base_(std::move(base)), id_(mutant_info(mutant).id) {}

  std::string_view mutant() const { return id_; }
  const TableAlgebra<A>& base() const { return base_; }
  const GroundPtr<A>& ground() const { return base_.ground(); }

  Table<A> zero() const { return base_.zero(); }
  Table<A> one() const { return base_.one(); }

  Table<A> meet(const Table<A>& u, const Table<A>& v) const {
    if (id_ == "product-meet-empty" && !u.is_empty() && !v.is_empty() && u.arity() > 0 && v.arity() > 0 &&
        set_intersection(u.schema().vars(), v.schema().vars()).empty() && u.size() >= 2 && v.size() >= 2) {
      return zero();
    }
    return base_.meet(u, v);
  }

  Table<A> act(const Table<A>& u, const Transform& lam) const {
    if (id_ == "empty-projection-keeps" && lam.empty()) return u;
    if (id_ == "zero-act-top" && u.is_empty()) return one();
    if (id_ == "act-twice") return base_.act(base_.act(u, lam), lam);
    Table<A> r = base_.act(u, lam);
    if (u.is_empty()) return r;
    const VarSet& cols = u.schema().vars();
    if (id_ == "lossy-projection" && lam.is_partial_identity() && !cols.subset_of(lam.domain()) && r.size() >= 2) {
      return drop_last(r);
    }
    if (id_ == "identity-drops-row" && lam == partial_identity(cols) && r.size() >= 2) return drop_last(r);
    if (id_ == "duplication-complement" && !lam.is_injective()) return complement(r);
    return r;
  }

  Table<A> diag(Var x, Var y) const {
    if (x != y) {
      if (id_ == "diag-full") return base_.full(VarSet{x, y});
      if (id_ == "diag-top") return one();
    } else if (id_ == "diag-empty") {
      return zero();
    }
    return base_.diag(x, y);
  }

  Schema dom(const Table<A>& u) const {
    Schema d = base_.dom(u);
    if (u.is_empty()) return d;
    VarSet vs = d.vars();
    if (id_ == "dom-drops-last" && vs.size() >= 2) vs.erase(vs[vs.size() - 1]);
    if (id_ == "top-infinite-dom" && vs.empty()) return Schema::all();
    if (id_ == "dom-extra-var") vs.insert(Var(1000));
    return Schema(vs);
  }

  std::string describe(const Table<A>& u) const { return base_.describe(u); }

  std::vector<Table<A>> exhaustive_elements(const SampleConfig& cfg) const { return base_.exhaustive_elements(cfg); }
  Table<A> random_element(const SampleConfig& cfg, Rng& rng) const { return base_.random_element(cfg, rng); }
  std::vector<Table<A>> elements_with_domain(const VarSet& d, std::size_t limit) const {
    return base_.elements_with_domain(d, limit);
  }

 private:
  Table<A> drop_last(const Table<A>& t) const {
    std::vector<std::vector<A>> rows;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      auto r = t.row(i);
      rows.emplace_back(r.begin(), r.end());
    }
    return Table<A>::from_rows(t.ground(), t.schema().vars(), std::move(rows));
  }

  Table<A> complement(const Table<A>& t) const {
    Table<A> full = base_.full(t.schema().vars());
    std::vector<std::vector<A>> rows;
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (!t.contains_row(full.row(i))) {
        auto r = full.row(i);
        rows.emplace_back(r.begin(), r.end());
      }
    }
    return Table<A>::from_rows(t.ground(), t.schema().vars(), std::move(rows));
  }

  TableAlgebra<A> base_;
  std::string_view id_;
};

static_assert(SampleableInstance<MutantTableAlgebra<>>);

}  // namespace orbital
