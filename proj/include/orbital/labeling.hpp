#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "check.hpp"
#include "instance.hpp"
#include "sampling.hpp"
#include "table.hpp"
#include "tuple.hpp"
#include "union_find.hpp"

namespace orbital {

/// A map from named tuples over a ground set into an orbital semilattice,
/// given as a pure callback. The target instance is not owned.
template <class A, OrbitalInstance I>
class Labeling {
 public:
  using atom_type = A;
  using instance_type = I;
  using element_type = typename I::element_type;
  using function_type = std::function<element_type(const NamedTuple<A>&)>;

  Labeling(const I& target, GroundPtr<A> ground, function_type fn)
      : target_(&target), ground_(std::move(ground)), fn_(std::move(fn)) {
    if (!ground_ || ground_->empty()) throw Error("a labeling needs a nonempty ground set");
  }

  element_type operator()(const NamedTuple<A>& t) const { return fn_(t); }

  const I& target() const noexcept { return *target_; }
  const GroundPtr<A>& ground() const noexcept { return ground_; }

 private:
  const I* target_;
  GroundPtr<A> ground_;
  function_type fn_;
};

/// t -> {t} into Tab(G).
template <class A>
Labeling<A, TableAlgebra<A>> singleton_labeling(const TableAlgebra<A>& tab) {
  GroundPtr<A> g = tab.ground();
  return Labeling<A, TableAlgebra<A>>(tab, g, [g](const NamedTuple<A>& t) {
    return Table<A>::from_tuples(g, {t});
  });
}

/// t -> c for every t.
template <class A, OrbitalInstance I>
Labeling<A, I> constant_labeling(const I& target, GroundPtr<A> ground, typename I::element_type c) {
  return Labeling<A, I>(target, std::move(ground), [c](const NamedTuple<A>&) { return c; });
}

/// Every tuple over `ground` with domain of definition inside `w`.
template <class A>
std::vector<NamedTuple<A>> all_tuples(const GroundSet<A>& ground, const VarSet& w) {
  std::vector<NamedTuple<A>> out;
  std::vector<std::size_t> digit(w.size(), 0);  // 0 = undefined
  while (true) {
    std::vector<typename NamedTuple<A>::value_type> entries;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (digit[i] != 0) entries.emplace_back(w[i], ground[digit[i] - 1]);
    }
    out.push_back(NamedTuple<A>::from_sorted(std::move(entries)));
    std::size_t i = 0;
    while (i < w.size() && ++digit[i] > ground.size()) digit[i++] = 0;
    if (i == w.size()) break;
  }
  return out;
}

/// G^X in lexicographic order.
template <class A>
std::vector<NamedTuple<A>> total_tuples(const GroundSet<A>& ground, const VarSet& x) {
  std::vector<NamedTuple<A>> out;
  std::vector<std::size_t> digit(x.size(), 0);
  while (true) {
    std::vector<typename NamedTuple<A>::value_type> entries;
    for (std::size_t i = 0; i < x.size(); ++i) entries.emplace_back(x[i], ground[digit[i]]);
    out.push_back(NamedTuple<A>::from_sorted(std::move(entries)));
    std::size_t i = x.size();
    while (i > 0 && ++digit[i - 1] == ground.size()) digit[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

template <class A>
NamedTuple<A> random_tuple(Rng& rng, const GroundSet<A>& ground, const VarSet& pool) {
  std::vector<typename NamedTuple<A>::value_type> entries;
  std::uniform_int_distribution<std::size_t> pick(0, ground.size());
  for (Var x : pool) {
    std::size_t k = pick(rng);
    if (k != 0) entries.emplace_back(x, ground[k - 1]);
  }
  return NamedTuple<A>::from_sorted(std::move(entries));
}

inline std::uint64_t power_or_cap(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::uint64_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

enum class LabelLevel { Quasi, Full };

struct LabelingCaps {
  std::size_t max_ground = 4;       // witness search only below these sizes
  std::size_t max_dom = 4;
  std::size_t tuple_budget = 4096;  // exhaustive tuple set, else sampled
  std::size_t extent_limit = std::size_t{1} << 16;
  bool check_extension = true;      // false leaves L3 out
};

/// ext(u) = { t | alpha(t) <= u, dom(alpha(t)) = dom(u) }, found by scanning G^dom(u)
/// (complete when alpha satisfies L1). The extent of an element with
/// infinite domain is the empty table.
template <class A, class I>
Table<A> extent(const Labeling<A, I>& alpha, const typename I::element_type& u,
                std::size_t limit = LabelingCaps{}.extent_limit) {
  const I& inst = alpha.target();
  Schema d = inst.dom(u);
  if (d.is_all()) return Table<A>::empty(alpha.ground());
  const VarSet& x = d.vars();
  if (power_or_cap(alpha.ground()->size(), x.size(), limit) > limit) {
    throw Error("extent over " + x.str() + " exceeds the enumeration limit");
  }
  std::vector<NamedTuple<A>> keep;
  for (auto const& t : total_tuples(*alpha.ground(), x)) {
    auto l = alpha(t);
    if (inst.dom(l) == d && leq(inst, l, u)) keep.push_back(t);
  }
  return Table<A>::from_tuples(alpha.ground(), keep);
}

namespace detail {

template <class A>
std::vector<NamedTuple<A>> tuple_sample(const GroundSet<A>& ground, const VarSet& w, std::size_t budget, Rng& rng) {
  if (power_or_cap(ground.size() + 1, w.size(), budget) <= budget) return all_tuples(ground, w);
  std::vector<NamedTuple<A>> out;
  for (std::size_t i = 0; i < budget; ++i) out.push_back(random_tuple(rng, ground, w));
  return out;
}

}  // namespace detail

/// L1-L3 (quasi) or L1-L4 (full). L3's witness is searched exhaustively among
/// the extensions of t in G^dom(v); cases beyond the caps are counted and the
/// report is marked capped rather than failed.
template <class A, SampleableInstance I>
std::vector<CheckReport> check_labeling(const Labeling<A, I>& alpha, LabelLevel level, const SampleConfig& cfg,
                                        const LabelingCaps& caps = {}) {
  using E = typename I::element_type;
  const I& inst = alpha.target();
  const GroundSet<A>& g = *alpha.ground();
  const Labeling<A, I>* ap = &alpha;
  Rng rng(cfg.seed ^ 0x5bd1e995ULL);
  VarSet window = cfg.window();
  VarSet wide = VarSet::initial_segment(cfg.var_window + 2);
  auto tuples = detail::tuple_sample(g, window, caps.tuple_budget, rng);
  auto transforms = all_transforms(window);
  if (transforms.size() > cfg.transform_budget) transforms.resize(cfg.transform_budget);
  std::vector<CheckReport> out;

  {
    detail::Runner<I> run(inst, "L1");
    auto f = [ap](bool ex, const NamedTuple<A>& t) {
      return detail::same_schema(ex, ap->target().dom((*ap)(t)), Schema(t.domain()));
    };
    for (auto const& t : tuples) run.test(f, {"t"}, t);
    for (std::size_t i = 0; i < cfg.random_cases && !run.failed(); ++i) {
      run.test(f, {"t"}, random_tuple(rng, g, wide));
    }
    out.push_back(run.finish());
  }
  {
    detail::Runner<I> run(inst, "L2");
    auto f = [ap](bool ex, const NamedTuple<A>& t, const Transform& lam) {
      return detail::same(ap->target(), ex, (*ap)(act(t, lam)), ap->target().act((*ap)(t), lam));
    };
    for (auto const& t : tuples) {
      for (auto const& lam : transforms) run.test(f, {"t", "lam"}, t, lam);
    }
    for (std::size_t i = 0; i < cfg.random_cases && !run.failed(); ++i) {
      run.test(f, {"t", "lam"}, random_tuple(rng, g, wide), random_transform(rng, wide, wide));
    }
    out.push_back(run.finish());
  }
  if (caps.check_extension) {
    detail::Runner<I> run(inst, "L3");
    auto capped = std::make_shared<std::size_t>(0);
    const E zero = inst.zero();
    auto f = [ap, caps, capped, zero](bool ex, const NamedTuple<A>& t, const E& v) {
      const I& in = ap->target();
      Schema dv = in.dom(v);
      if (v == zero || dv.is_all()) return Outcome::skip();
      VarSet dt = t.domain();
      if (!dt.subset_of(dv.vars())) return Outcome::skip();
      if (!leq(in, (*ap)(t), in.act(v, partial_identity(dt)))) return Outcome::skip();
      const GroundSet<A>& gs = *ap->ground();
      if (gs.size() > caps.max_ground || dv.vars().size() > caps.max_dom) {
        ++*capped;
        return Outcome::ok();
      }
      for (auto const& rest : total_tuples(gs, set_difference(dv.vars(), dt))) {
        auto tt = merge(t, rest);
        if (tt && leq(in, (*ap)(*tt), v)) return Outcome::ok();
      }
      return ex ? Outcome::fail(to_string(t) + " has no extension t~ with alpha(t~) <=", in.describe(v))
                : Outcome::fail({}, {});
    };
    auto vs = inst.exhaustive_elements(cfg);
    for (auto const& t : tuples) {
      for (auto const& v : vs) run.test(f, {"t", "v"}, t, v);
    }
    for (std::size_t i = 0; i < cfg.random_cases && !run.failed(); ++i) {
      // Hypothesis built in: t is a restriction of a tuple below v.
      E v = inst.random_element(cfg, rng);
      Schema dv = inst.dom(v);
      if (dv.is_all()) continue;
      auto full = random_tuple(rng, g, dv.vars());
      auto t = restrict(full, random_subset(rng, full.domain()));
      run.test(f, {"t", "v"}, t, v);
    }
    CheckReport r = run.finish();
    if (*capped > 0) {
      r.note = std::to_string(*capped) + " cases beyond the witness-search caps";
      if (r.status != Status::Fail) r.status = Status::Capped;
    }
    out.push_back(std::move(r));
  }
  if (level == LabelLevel::Full) {
    detail::Runner<I> run(inst, "L4");
    auto f = [ap](bool ex, const NamedTuple<A>& t, Var z1, Var z2) {
      const I& in = ap->target();
      if (!leq(in, (*ap)(t), in.diag(z1, z2))) return Outcome::skip();
      const A* a = t.at(z1);
      const A* b = t.at(z2);
      bool equal = (a == nullptr && b == nullptr) || (a != nullptr && b != nullptr && *a == *b);
      if (equal) return Outcome::ok();
      return ex ? Outcome::fail("t(" + z1.str() + ") = " + (a ? atom_text(*a) : std::string("undefined")),
                                "t(" + z2.str() + ") = " + (b ? atom_text(*b) : std::string("undefined")))
                : Outcome::fail({}, {});
    };
    for (auto const& t : tuples) {
      for (Var z1 : window) {
        for (Var z2 : window) run.test(f, {"t", "z1", "z2"}, t, z1, z2);
      }
    }
    for (std::size_t i = 0; i < cfg.random_cases && !run.failed(); ++i) {
      auto t = random_tuple(rng, g, wide);
      run.test(f, {"t", "z1", "z2"}, t, random_var(rng, 1, wide.size()), random_var(rng, 1, wide.size()));
    }
    out.push_back(run.finish());
  }
  return out;
}

namespace detail {

/// ext(u) . lam (= r) must lie inside ext(u . lam) (= l); rows of l outside r
/// are failures unless `must` exempts them.
template <class A, class E, class Must>
bool covers(const Table<A>& l, const Table<A>& r, const Must& must, const E& u, const Transform& lam,
            std::size_t* excluded) {
  if (l == r) return true;
  if (!r.is_empty()) {
    if (l.is_empty() || !(l.schema() == r.schema())) return false;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!l.contains_row(r.row(i))) return false;
    }
  }
  for (auto const& s : l.tuples()) {
    if (r.contains(s)) continue;
    if (!must || must(u, lam, s)) return false;
    if (excluded != nullptr) ++*excluded;
  }
  return true;
}

}  // namespace detail

/// Elements, transformations and variables over which the extent map is checked.
template <class A, class I>
struct EmbeddingScope {
  using E = typename I::element_type;
  std::vector<E> elements;
  std::vector<Transform> transforms;
  VarSet vars;
  /// For s in ext(u . lam): whether s must also lie in ext(u) . lam. Rows for
  /// which this is false are counted as excluded. Empty means always.
  std::function<bool(const E&, const Transform&, const NamedTuple<A>&)> must_cover;
  std::size_t extent_limit = LabelingCaps{}.extent_limit;
};

/// Checks that ext is an injective homomorphism on the scope: meets become
/// joins, the action commutes, diagonals map to E_xy, schema(ext(u)) = dom(u),
/// and 0, 1 map to the empty table and {<>}.
template <class A, class I>
std::vector<CheckReport> check_embedding(const Labeling<A, I>& alpha, const EmbeddingScope<A, I>& scope) {
  using E = typename I::element_type;
  const I& inst = alpha.target();
  const Labeling<A, I>* ap = &alpha;
  const std::size_t limit = scope.extent_limit;
  std::map<E, Table<A>> memo;
  auto ext = [&](const E& u) -> const Table<A>& {
    auto it = memo.find(u);
    if (it == memo.end()) it = memo.emplace(u, extent(alpha, u, limit)).first;
    return it->second;
  };
  auto show = [](const Table<A>& t) { return to_string(t); };
  std::vector<CheckReport> out;

  {
    detail::Runner<I> run(inst, "EXT.injective");
    std::map<Table<A>, E> seen;
    auto f = [ap, limit, show](bool ex, const E& u, const E& v) {
      Table<A> a = extent(*ap, u, limit), b = extent(*ap, v, limit);
      if (u == v || !(a == b)) return Outcome::ok();
      return ex ? Outcome::fail("ext(u) = " + show(a), "ext(v) = " + show(b)) : Outcome::fail({}, {});
    };
    for (auto const& u : scope.elements) {
      auto [it, fresh] = seen.emplace(ext(u), u);
      if (fresh || it->second == u) {
        run.tally(true);
      } else {
        run.test(f, {"u", "v"}, it->second, u);
      }
    }
    out.push_back(run.finish());
  }
  {
    detail::Runner<I> run(inst, "EXT.meet");
    auto f = [ap, limit, show](bool ex, const E& u, const E& v) {
      const I& in = ap->target();
      Table<A> l = extent(*ap, in.meet(u, v), limit);
      Table<A> r = natural_join(extent(*ap, u, limit), extent(*ap, v, limit));
      if (l == r) return Outcome::ok();
      return ex ? Outcome::fail(show(l), show(r)) : Outcome::fail({}, {});
    };
    for (auto const& u : scope.elements) {
      for (auto const& v : scope.elements) {
        if (ext(inst.meet(u, v)) == natural_join(ext(u), ext(v))) {
          run.tally(true);
        } else if (!run.test(f, {"u", "v"}, u, v)) {
          break;
        }
      }
      if (run.failed()) break;
    }
    out.push_back(run.finish());
  }
  {
    detail::Runner<I> run(inst, "EXT.act");
    std::size_t excluded = 0;
    auto must = scope.must_cover;
    auto f = [ap, limit, show, must](bool ex, const E& u, const Transform& lam) {
      const I& in = ap->target();
      Table<A> l = extent(*ap, in.act(u, lam), limit);
      Table<A> r = act_table(extent(*ap, u, limit), lam);
      if (detail::covers(l, r, must, u, lam, nullptr)) return Outcome::ok();
      return ex ? Outcome::fail("ext(u . lam) = " + show(l), "ext(u) . lam = " + show(r)) : Outcome::fail({}, {});
    };
    for (auto const& u : scope.elements) {
      for (auto const& lam : scope.transforms) {
        if (detail::covers(ext(inst.act(u, lam)), act_table(ext(u), lam), must, u, lam, &excluded)) {
          run.tally(true);
        } else if (!run.test(f, {"u", "lam"}, u, lam)) {
          break;
        }
      }
      if (run.failed()) break;
    }
    CheckReport rep = run.finish();
    if (excluded > 0) rep.note = std::to_string(excluded) + " rows beyond the depth frontier not required";
    out.push_back(std::move(rep));
  }
  {
    detail::Runner<I> run(inst, "EXT.diag");
    auto f = [ap, limit, show](bool ex, Var x, Var y) {
      Table<A> l = extent(*ap, ap->target().diag(x, y), limit);
      Table<A> r = diagonal(x, y, ap->ground());
      if (l == r) return Outcome::ok();
      return ex ? Outcome::fail(show(l), show(r)) : Outcome::fail({}, {});
    };
    for (Var x : scope.vars) {
      for (Var y : scope.vars) run.test(f, {"x", "y"}, x, y);
    }
    out.push_back(run.finish());
  }
  {
    detail::Runner<I> run(inst, "EXT.domain");
    auto f = [ap, limit](bool ex, const E& u) {
      return detail::same_schema(ex, extent(*ap, u, limit).schema(), ap->target().dom(u));
    };
    for (auto const& u : scope.elements) {
      if (ext(u).schema() == inst.dom(u)) {
        run.tally(true);
      } else {
        run.test(f, {"u"}, u);
      }
    }
    out.push_back(run.finish());
  }
  {
    detail::Runner<I> run(inst, "EXT.bounds");
    auto f = [ap, limit, show](bool ex, const E& u) {
      const I& in = ap->target();
      Table<A> l = extent(*ap, u, limit);
      Table<A> r = u == in.zero() ? Table<A>::empty(ap->ground()) : Table<A>::unit(ap->ground());
      if (l == r) return Outcome::ok();
      return ex ? Outcome::fail(show(l), show(r)) : Outcome::fail({}, {});
    };
    run.test(f, {"u"}, inst.zero());
    run.test(f, {"u"}, inst.one());
    out.push_back(run.finish());
  }
  return out;
}

/// Result of the quotient construction: the relation ~ on the ground set, the
/// representatives (first member of each class in ground order) and the
/// induced labeling over the representatives.
template <class A, class I>
struct Quotient {
  Equivalence relation;
  GroundPtr<A> representatives;
  std::vector<std::size_t> representative_of;  // ground index -> ground index of its class representative
  std::optional<Labeling<A, I>> alpha_bar;
  std::vector<CheckReport> checks;
};

/// g ~ h iff alpha(<x1:g, x2:h>) <= d_x1x2. Throws when the tested relation is not
/// an equivalence. The reports cover: agreement with its union-find closure, the
/// same test through other variable pairs, and exchange spot checks.
template <class A, class I>
Quotient<A, I> quotient(const Labeling<A, I>& alpha, std::size_t exchange_samples = 2000, std::uint64_t seed = 1) {
  const I& inst = alpha.target();
  const GroundSet<A>& g = *alpha.ground();
  const std::size_t n = g.size();
  Var x1(1), x2(2);
  auto d12 = inst.diag(x1, x2);
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rel[i][j] = leq(inst, alpha(NamedTuple<A>{{x1, g[i]}, {x2, g[j]}}), d12) ? 1 : 0;
    }
  }
  Quotient<A, I> q;
  q.relation = Equivalence(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rel[i][j]) q.relation.unite(i, j);
    }
  }
  {
    CheckReport r{"Q.equivalence", 0, 0, Status::Pass, {}, std::nullopt};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ++r.cases;
        ++r.applicable;
        if (static_cast<bool>(rel[i][j]) != q.relation.same(i, j)) {
          throw Error("the relation from alpha(<x1:g, x2:h>) <= d_x1x2 is not an equivalence: " + atom_text(g[i]) +
                      (rel[i][j] ? " ~ " : " !~ ") + atom_text(g[j]) + " disagrees with its closure");
        }
      }
    }
    q.checks.push_back(std::move(r));
  }
  Rng rng(seed);
  {
    // The same relation through other variable pairs.
    CheckReport r{"Q.variables", 0, 0, Status::Pass, {}, std::nullopt};
    for (std::size_t k = 0; k < exchange_samples && r.status == Status::Pass; ++k) {
      Var z1 = random_var(rng, 1, 8), z2 = random_var(rng, 1, 8);
      if (z1 == z2) continue;
      std::size_t i = rng() % n, j = rng() % n;
      ++r.cases;
      ++r.applicable;
      bool via = leq(inst, alpha(NamedTuple<A>{{z1, g[i]}, {z2, g[j]}}), inst.diag(z1, z2));
      if (via != static_cast<bool>(rel[i][j])) {
        r.status = Status::Fail;
        r.counterexample = Counterexample{{{"g", atom_text(g[i])}, {"h", atom_text(g[j])}, {"z1", z1.str()}, {"z2", z2.str()}},
                                          via ? "related through z1,z2" : "unrelated through z1,z2",
                                          rel[i][j] ? "related through x1,x2" : "unrelated through x1,x2",
                                          {}};
      }
    }
    q.checks.push_back(std::move(r));
  }
  q.representative_of.resize(n);
  std::vector<A> reps;
  for (std::size_t i = 0; i < n; ++i) {
    q.representative_of[i] = q.relation.find(i);
    if (q.relation.find(i) == i) reps.push_back(g[i]);
  }
  {
    // Exchange: tuples related pointwise have the same label.
    CheckReport r{"Q.exchange", 0, 0, Status::Pass, {}, std::nullopt};
    auto classes = q.relation.classes();
    for (std::size_t k = 0; k < exchange_samples && r.status == Status::Pass; ++k) {
      std::size_t len = 1 + rng() % 3;
      std::vector<typename NamedTuple<A>::value_type> s, t;
      std::vector<Var> vars;
      while (vars.size() < len) {
        Var y = random_var(rng, 1, 6);
        if (std::find(vars.begin(), vars.end(), y) == vars.end()) vars.push_back(y);
      }
      for (Var y : vars) {
        auto const& c = classes[rng() % classes.size()];
        s.emplace_back(y, g[c[rng() % c.size()]]);
        t.emplace_back(y, g[c[rng() % c.size()]]);
      }
      NamedTuple<A> ts(std::move(s)), tt(std::move(t));
      ++r.cases;
      ++r.applicable;
      auto ls = alpha(ts), lt = alpha(tt);
      if (!(ls == lt)) {
        r.status = Status::Fail;
        r.counterexample = Counterexample{{{"s", to_string(ts)}, {"t", to_string(tt)}}, inst.describe(ls), inst.describe(lt), {}};
      }
    }
    q.checks.push_back(std::move(r));
  }
  q.representatives = make_ground(std::move(reps));
  // alpha-bar: atoms are first replaced by their representatives.
  std::map<A, A> to_rep;
  for (std::size_t i = 0; i < n; ++i) to_rep.emplace(g[i], g[q.representative_of[i]]);
  Labeling<A, I> base = alpha;
  q.alpha_bar.emplace(inst, q.representatives, [base, to_rep](const NamedTuple<A>& t) {
    std::vector<typename NamedTuple<A>::value_type> entries;
    entries.reserve(t.size());
    for (auto const& [x, a] : t) {
      auto it = to_rep.find(a);
      entries.emplace_back(x, it == to_rep.end() ? a : it->second);
    }
    return base(NamedTuple<A>::from_sorted(std::move(entries)));
  });
  return q;
}

}  // namespace orbital
