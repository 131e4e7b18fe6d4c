#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "check.hpp"
#include "instance.hpp"
#include "labeling.hpp"
#include "sampling.hpp"
#include "terms.hpp"
#include "transform.hpp"
#include "tuple.hpp"

namespace orbital {

/// n when dom(v) = {x1, .., x(n+1)}; nullopt when v is not a function symbol.
template <OrbitalInstance I>
std::optional<std::size_t> arity(const I& inst, const typename I::element_type& v) {
  Schema d = inst.dom(v);
  if (d.is_all() || d.vars().empty()) return std::nullopt;
  const VarSet& x = d.vars();
  if (!(x == VarSet::initial_segment(x.size()))) return std::nullopt;
  return x.size() - 1;
}

struct RepresentationCaps {
  std::size_t symbols_per_arity = 64;
  std::size_t terms_per_stratum = 256;
  std::size_t max_symbol_vars = 3;        // symbols up to arity max_symbol_vars - 1
  std::size_t candidate_budget = 1 << 20; // children tuples tried per stratum
};

/// The term signature of an instance together with kappa and alpha. kappa is
/// memoized, so one Construction should be reused across calls.
template <EnumerableInstance I>
class Construction {
 public:
  using E = typename I::element_type;

  Construction(const I& inst, RepresentationCaps caps = {}) : inst_(&inst), caps_(caps) {
    if (caps_.max_symbol_vars == 0) throw Error("symbols need at least one variable");
    for (std::size_t n = 0; n < caps_.max_symbol_vars; ++n) {
      VarSet seg = VarSet::initial_segment(n + 1);
      auto found = inst.elements_with_domain(seg, caps_.symbols_per_arity + 1);
      bool cut = found.size() > caps_.symbols_per_arity;
      if (cut) found.erase(found.begin() + static_cast<std::ptrdiff_t>(caps_.symbols_per_arity), found.end());
      std::vector<std::uint32_t> ids;
      for (auto const& v : found) {
        if (arity(inst, v) != n) continue;
        ids.push_back(store_.add_symbol(v, n));
      }
      by_arity_.push_back(std::move(ids));
      symbols_cut_.push_back(cut);
    }
  }

  const I& instance() const noexcept { return *inst_; }
  const RepresentationCaps& caps() const noexcept { return caps_; }
  TermStore<E>& store() noexcept { return store_; }
  const TermStore<E>& store() const noexcept { return store_; }

  std::size_t max_arity() const noexcept { return by_arity_.size() - 1; }
  const std::vector<std::uint32_t>& symbols(std::size_t n) const { return by_arity_.at(n); }
  /// Whether the enumeration of n-ary symbols stopped at the cap.
  bool symbols_truncated(std::size_t n) const { return n >= symbols_cut_.size() || symbols_cut_[n]; }

  /// meet over s = v t1..tn in rng(b) of v . (eta_s^{-r} o b); 1 for b = <>.
  E kappa(const TermTuple& b) const {
    auto it = kappa_memo_.find(b);
    if (it != kappa_memo_.end()) return it->second;
    E r = inst_->one();
    for (auto const& [z, s] : b) {
      r = inst_->meet(r, inst_->act(store_.head(s), pullback(eta(store_, s), b)));
    }
    kappa_memo_.emplace(b, r);
    return r;
  }

  /// kappa(b) . (b^{-1} o t).
  E alpha_via(const TermTuple& t, const TermTuple& b) const { return inst_->act(kappa(b), pullback(b, t)); }

  E alpha(const TermTuple& t) const { return alpha_via(t, base_tuple_for(store_, t)); }

  std::size_t kappa_cache_size() const noexcept { return kappa_memo_.size(); }

 private:
  const I* inst_;
  RepresentationCaps caps_;
  TermStore<E> store_;
  std::vector<std::vector<std::uint32_t>> by_arity_;
  std::vector<bool> symbols_cut_;
  mutable std::map<TermTuple, E> kappa_memo_;
};

/// Strata of admitted terms. levels[k] holds H^(k) minus H^(k-1); levels[0] is
/// empty. Every term of levels[k] has depth k.
struct HSet {
  std::vector<std::vector<GroundTerm>> levels{{}};
  std::vector<bool> level_truncated{false};
  std::vector<bool> symbols_truncated;  // per arity
  std::set<GroundTerm> members;

  std::size_t depth() const noexcept { return levels.size() - 1; }
  bool contains(GroundTerm t) const { return members.count(t) != 0; }

  /// H^(k), in canonical order.
  std::vector<GroundTerm> stratum(std::size_t k) const {
    std::vector<GroundTerm> out;
    for (std::size_t i = 0; i <= std::min(k, depth()); ++i) out.insert(out.end(), levels[i].begin(), levels[i].end());
    return out;
  }
  std::vector<GroundTerm> terms() const { return stratum(depth()); }

  /// No cap cut anything that a witness with up to `vars` variables could need.
  bool complete_below(std::size_t vars) const {
    for (bool b : level_truncated) {
      if (b) return false;
    }
    for (std::size_t n = 0; n < vars && n < symbols_truncated.size(); ++n) {
      if (symbols_truncated[n]) return false;
    }
    return vars <= symbols_truncated.size();
  }

  bool truncated() const { return !complete_below(symbols_truncated.size()); }
};

namespace detail {

/// Calls f(children) for every ordered n-tuple of pairwise distinct terms of
/// `pool` that uses at least one term of `fresh`. Returns false when stopped.
template <class F>
bool for_each_children(const std::vector<GroundTerm>& pool, const std::set<GroundTerm>& fresh, std::size_t n, F&& f) {
  std::vector<std::size_t> idx(n, 0);
  std::vector<GroundTerm> ch(n);
  if (n == 0) return f(ch);
  if (pool.size() < n) return true;
  while (true) {
    bool distinct = true, uses_fresh = false;
    for (std::size_t i = 0; i < n && distinct; ++i) {
      ch[i] = pool[idx[i]];
      uses_fresh = uses_fresh || fresh.count(ch[i]);
      for (std::size_t j = 0; j < i; ++j) distinct = distinct && idx[j] != idx[i];
    }
    if (distinct && uses_fresh && !f(ch)) return false;
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == pool.size()) idx[--i] = 0;
    if (i == 0) return true;
  }
}

inline TermTuple numbered(const std::vector<GroundTerm>& ts) {
  std::vector<TermTuple::value_type> e;
  for (std::size_t i = 0; i < ts.size(); ++i) e.emplace_back(Var(i + 1), ts[i]);
  return TermTuple::from_sorted(std::move(e));
}

}  // namespace detail

/// H^(0) = {} and H^(k+1) = H^(k) plus every v t1..tn with t1..tn in H^(k)
/// pairwise distinct and v . pi{x1..xn} = alpha(<x1:t1, .., xn:tn>), up to
/// depth K. New terms of a stratum are admitted in canonical order until the
/// stratum cap; cut strata are flagged.
template <EnumerableInstance I>
HSet build_H(Construction<I>& c, std::size_t depth) {
  using E = typename I::element_type;
  const I& inst = c.instance();
  auto& store = c.store();
  HSet h;
  for (std::size_t n = 0; n <= c.max_arity(); ++n) h.symbols_truncated.push_back(c.symbols_truncated(n));

  // Symbols of each arity grouped by their projection onto x1..xn.
  std::vector<std::map<E, std::vector<std::uint32_t>>> by_projection(c.max_arity() + 1);
  for (std::size_t n = 0; n <= c.max_arity(); ++n) {
    Transform pi = partial_identity(VarSet::initial_segment(n));
    for (auto s : c.symbols(n)) by_projection[n][inst.act(store.symbol(s), pi)].push_back(s);
  }

  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<GroundTerm> pool = h.stratum(k);
    std::set<GroundTerm> fresh(h.levels[k].begin(), h.levels[k].end());
    std::vector<std::pair<std::uint32_t, std::vector<GroundTerm>>> found;
    bool cut = false;
    std::size_t tried = 0;
    for (std::size_t n = 0; n <= c.max_arity(); ++n) {
      if (c.symbols(n).empty()) continue;
      if (n == 0 && k != 0) continue;
      bool done = detail::for_each_children(pool, fresh, n, [&](const std::vector<GroundTerm>& ch) {
        if (++tried > c.caps().candidate_budget) return false;
        auto it = by_projection[n].find(c.alpha(detail::numbered(ch)));
        if (it != by_projection[n].end()) {
          for (auto s : it->second) found.emplace_back(s, ch);
        }
        return true;
      });
      if (!done) cut = true;
    }
    std::sort(found.begin(), found.end(), [&](auto const& a, auto const& b) {
      if (a.first != b.first) return a.first < b.first;
      return std::lexicographical_compare(a.second.begin(), a.second.end(), b.second.begin(), b.second.end(),
                                          store.canonical());
    });
    if (found.size() > c.caps().terms_per_stratum) {
      found.erase(found.begin() + static_cast<std::ptrdiff_t>(c.caps().terms_per_stratum), found.end());
      cut = true;
    }
    std::vector<GroundTerm> level;
    for (auto& [s, ch] : found) {
      GroundTerm t = store.make(s, ch);
      level.push_back(t);
      h.members.insert(t);
    }
    h.levels.push_back(std::move(level));
    h.level_truncated.push_back(cut);
  }
  return h;
}

/// alpha restricted to tuples over the terms of H.
template <EnumerableInstance I>
Labeling<GroundTerm, I> induced_quasi_labeling(const Construction<I>& c, const HSet& h) {
  auto terms = h.terms();
  if (terms.empty()) throw Error("H is empty: the instance has no constants");
  const Construction<I>* cp = &c;
  return Labeling<GroundTerm, I>(c.instance(), make_ground(std::move(terms)),
                                 [cp](const TermTuple& t) { return cp->alpha(t); });
}

struct RepresentConfig {
  std::size_t depth = 2;
  RepresentationCaps caps;
  std::size_t window = 2;        // variables of reachable elements and sampled tuples
  std::size_t samples = 400;     // random base tuples and tuples per check
  std::size_t label_cases = 1000;
  std::size_t extent_limit = std::size_t{1} << 16;
  std::uint64_t seed = 1;
};

struct RepresentReport {
  std::size_t depth = 0;
  std::vector<std::size_t> strata;  // |H^(k)| for k = 0..K
  std::vector<std::pair<std::string, std::string>> symbols;  // name, element
  std::vector<std::pair<std::string, std::size_t>> terms;    // prefix form, depth
  std::vector<std::string> truncation;
  std::size_t classes = 0;
  std::size_t reachable = 0;
  std::optional<std::size_t> elements_in_window;
  std::vector<CheckReport> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckReport& r) { return r.status == Status::Pass; });
  }
};

inline nlohmann::json to_json(const RepresentReport& r) {
  nlohmann::json syms = nlohmann::json::array(), terms = nlohmann::json::array(), checks = nlohmann::json::array();
  for (auto const& [n, e] : r.symbols) syms.push_back({{"name", n}, {"element", e}});
  for (auto const& [t, d] : r.terms) terms.push_back({{"term", t}, {"depth", d}});
  for (auto const& c : r.checks) checks.push_back(to_json(c));
  nlohmann::json cov{{"reachable", r.reachable}};
  if (r.elements_in_window) cov["elements"] = *r.elements_in_window;
  return {{"depth", r.depth}, {"strata", r.strata},     {"truncation", r.truncation},
          {"classes", r.classes}, {"coverage", cov}, {"symbols", syms},
          {"terms", terms},       {"checks", checks},   {"passed", r.passed()}};
}

namespace detail {

template <class E>
std::size_t max_depth(const TermStore<E>& store, const TermTuple& t) {
  std::size_t d = 0;
  for (auto const& [x, s] : t) d = std::max(d, store.depth(s));
  return d;
}

/// The variables x1..x(m+extra) shuffled, first m of them.
inline std::vector<Var> random_vars(Rng& rng, std::size_t m, std::size_t extra) {
  std::vector<Var> pool;
  for (std::size_t i = 1; i <= m + extra; ++i) pool.emplace_back(i);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(m), pool.end());
  return pool;
}

inline TermTuple assign(const std::vector<Var>& vars, const std::vector<GroundTerm>& ts) {
  std::vector<TermTuple::value_type> e;
  for (std::size_t i = 0; i < ts.size(); ++i) e.emplace_back(vars[i], ts[i]);
  return TermTuple(std::move(e));
}

}  // namespace detail

/// Builds H to the configured depth, checks the construction's propositions on
/// harvested base tuples, takes the quotient of the induced labeling and checks
/// that its extent map embeds the reachable elements.
///
/// Rows of ext(u . lam) that ext(u) . lam misses are failures only when the
/// missing witness could be built inside H: either no variable of dom(u) is
/// projected away, or H is uncut for the arities involved and the witness
/// depth (deepest term of the row plus projected variables) stays within K.
template <class I>
  requires EnumerableInstance<I> && SampleableInstance<I>
RepresentReport represent(const I& inst, const RepresentConfig& cfg) {
  using E = typename I::element_type;
  using LT = Labeled<TermTuple>;
  if (cfg.window == 0) throw Error("window must be positive");
  Construction<I> c(inst, cfg.caps);
  HSet h = build_H(c, cfg.depth);
  const HSet* hp = &h;
  const Construction<I>* cp = &c;
  const std::size_t K = cfg.depth;
  Rng rng(cfg.seed);
  RepresentReport rep;
  rep.depth = K;
  for (std::size_t k = 0; k <= K; ++k) rep.strata.push_back(h.stratum(k).size());
  for (std::uint32_t s = 0; s < c.store().symbol_count(); ++s) {
    rep.symbols.emplace_back(TermStore<E>::symbol_name(s), inst.describe(c.store().symbol(s)));
  }
  const std::vector<GroundTerm> H = h.terms();
  for (GroundTerm t : H) rep.terms.emplace_back(c.store().str(t), c.store().depth(t));
  for (std::size_t n = 0; n < h.symbols_truncated.size(); ++n) {
    if (h.symbols_truncated[n]) {
      rep.truncation.push_back(std::to_string(n) + "-ary symbols cut at " + std::to_string(cfg.caps.symbols_per_arity));
    }
  }
  for (std::size_t k = 1; k <= K; ++k) {
    if (h.level_truncated[k]) rep.truncation.push_back("stratum " + std::to_string(k) + " cut");
  }
  auto lt = [&](TermTuple t) { std::string s = c.store().str(t); return LT{std::move(t), std::move(s)}; };
  auto push = [&](CheckReport r) { rep.checks.push_back(std::move(r)); };
  auto eq = [cp](bool ex, const E& l, const E& r) { return detail::same(cp->instance(), ex, l, r); };

  // Prop 11 in both directions, recomputed through a reversed base tuple.
  {
    detail::Runner<I> run(inst, "H.membership");
    auto f = [cp, hp](bool ex, const LT& one, std::size_t k, bool admitted) {
      const auto& st = cp->store();
      const I& in = cp->instance();
      GroundTerm s = one.value.begin()->second;
      auto const& ch = st.children(s);
      std::set<GroundTerm> distinct(ch.begin(), ch.end());
      bool ok = distinct.size() == ch.size();
      for (GroundTerm t : ch) ok = ok && hp->contains(t) && st.depth(t) < k;
      ok = ok && in.dom(st.head(s)) == Schema(VarSet::initial_segment(ch.size() + 1));
      auto closure = subterm_closure(st, ch);
      std::reverse(closure.begin(), closure.end());
      E lhs = in.act(st.head(s), partial_identity(VarSet::initial_segment(ch.size())));
      E rhs = cp->alpha_via(detail::numbered(ch), detail::numbered(closure));
      ok = ok && lhs == rhs;
      if (ok == admitted) return Outcome::ok();
      if (!ex) return Outcome::fail({}, {});
      return Outcome::fail(std::string(admitted ? "admitted" : "rejected") + "; head . pi = " + in.describe(lhs),
                           "alpha(children) = " + in.describe(rhs));
    };
    for (std::size_t k = 1; k <= K; ++k) {
      for (GroundTerm s : h.levels[k]) run.test(f, {"term", "stratum", "admitted"}, lt(TermTuple{{Var(1), s}}), k, true);
    }
    for (std::size_t k = 0; k < K && !run.failed(); ++k) {
      if (h.level_truncated[k + 1]) continue;
      auto pool = h.stratum(k);
      for (std::size_t i = 0; i < cfg.samples && !pool.empty(); ++i) {
        std::size_t n = rng() % (c.max_arity() + 1);
        if (c.symbols(n).empty() || pool.size() < n || (n == 0 && k != 0) || h.symbols_truncated[n]) continue;
        std::vector<GroundTerm> ch;
        for (Var x : detail::random_vars(rng, n, pool.size() - n)) ch.push_back(pool[x.index() - 1]);
        if (k > 0 && std::none_of(ch.begin(), ch.end(), [&](GroundTerm t) { return c.store().depth(t) == k; })) continue;
        auto sym = c.symbols(n)[rng() % c.symbols(n).size()];
        if (c.store().find(sym, ch)) continue;
        GroundTerm s = c.store().make(sym, ch);
        run.test(f, {"term", "stratum", "admitted"}, lt(TermTuple{{Var(1), s}}), k + 1, false);
      }
    }
    push(run.finish());
  }
  {
    detail::Runner<I> run(inst, "H.constants");
    std::size_t found = 0;
    for (auto s : c.symbols(0)) found += c.store().find(s, {}).has_value() && h.contains(*c.store().find(s, {}));
    auto f = [](bool ex, std::size_t got, std::size_t want) {
      if (got == want) return Outcome::ok();
      return ex ? Outcome::fail(std::to_string(got) + " constants in H^(1)", std::to_string(want) + " constants")
                : Outcome::fail({}, {});
    };
    if (K >= 1) run.test(f, {"found", "symbols"}, found, c.symbols(0).size());
    if (!h.levels[0].empty()) run.test(f, {"found", "symbols"}, h.levels[0].size(), std::size_t{0});
    push(run.finish());
  }

  // Harvested base tuples: per term the canonical one and one extending eta,
  // plus random closures under shuffled variables.
  std::vector<TermTuple> bases{TermTuple{}};
  std::vector<std::pair<GroundTerm, TermTuple>> eta_bases;
  for (GroundTerm s : H) {
    bases.push_back(base_tuple_for(c.store(), TermTuple{{Var(1), s}}));
    TermTuple e = eta(c.store(), s);
    auto rest = subterm_closure(c.store(), {s});
    std::vector<TermTuple::value_type> entries(e.begin(), e.end());
    std::size_t next = e.size();
    for (GroundTerm t : rest) {
      auto r = e.range();
      if (!std::binary_search(r.begin(), r.end(), t)) entries.emplace_back(Var(++next), t);
    }
    eta_bases.emplace_back(s, TermTuple(std::move(entries)));
    bases.push_back(eta_bases.back().second);
  }
  for (std::size_t i = 0; i < cfg.samples && !H.empty(); ++i) {
    std::vector<GroundTerm> seed;
    for (std::size_t m = 1 + rng() % 3; m > 0; --m) seed.push_back(H[rng() % H.size()]);
    auto closure = subterm_closure(c.store(), seed);
    if (closure.size() > 8) continue;
    bases.push_back(detail::assign(detail::random_vars(rng, closure.size(), 2), closure));
  }
  auto random_subset_of = [&](const std::vector<GroundTerm>& v) {
    std::vector<GroundTerm> out;
    for (GroundTerm t : v) {
      if (rng() & 1) out.push_back(t);
    }
    return out;
  };

  {
    detail::Runner<I> p17(inst, "KAPPA.nonzero"), p12i(inst, "KAPPA.domain");
    auto nonzero = [cp](bool ex, const LT& b) {
      E k = cp->kappa(b.value);
      if (!(k == cp->instance().zero())) return Outcome::ok();
      return ex ? Outcome::fail("kappa(b) = " + cp->instance().describe(k), "nonzero") : Outcome::fail({}, {});
    };
    auto domain = [cp](bool ex, const LT& b) {
      E k = cp->kappa(b.value);
      if (k == cp->instance().zero()) return Outcome::skip();
      return detail::same_schema(ex, cp->instance().dom(k), Schema(b.value.domain()));
    };
    for (auto const& b : bases) {
      p17.test(nonzero, {"b"}, lt(b));
      p12i.test(domain, {"b"}, lt(b));
    }
    push(p12i.finish());
    push(p17.finish());
  }
  {
    detail::Runner<I> run(inst, "KAPPA.bijection");
    auto f = [cp, eq](bool ex, const LT& b, const Transform& xi) {
      return eq(ex, cp->kappa(act(b.value, xi)), cp->instance().act(cp->kappa(b.value), xi));
    };
    for (auto const& b : bases) {
      VarSet d = b.domain();
      auto from = detail::random_vars(rng, d.size(), 2);
      std::vector<Var> to(d.begin(), d.end());
      std::shuffle(to.begin(), to.end(), rng);
      std::vector<Transform::value_type> pairs;
      for (std::size_t i = 0; i < to.size(); ++i) pairs.emplace_back(from[i], to[i]);
      run.test(f, {"b", "xi"}, lt(b), Transform(std::move(pairs)));
    }
    push(run.finish());
  }
  {
    detail::Runner<I> run(inst, "KAPPA.merge");
    auto f = [cp, eq](bool ex, const LT& b, const LT& b1, const LT& b2) {
      return eq(ex, cp->kappa(b.value), cp->instance().meet(cp->kappa(b1.value), cp->kappa(b2.value)));
    };
    for (auto const& b : bases) {
      auto r = b.range();
      auto c1 = subterm_closure(c.store(), random_subset_of(r));
      std::vector<GroundTerm> c1s = c1, rest;  // the difference needs both sorted by id
      std::sort(c1s.begin(), c1s.end());
      std::set_difference(r.begin(), r.end(), c1s.begin(), c1s.end(), std::back_inserter(rest));
      auto extra = random_subset_of(r);
      rest.insert(rest.end(), extra.begin(), extra.end());
      auto c2 = subterm_closure(c.store(), rest);
      run.test(f, {"b", "b1", "b2"}, lt(b), lt(restrict_to_range(b, c1)), lt(restrict_to_range(b, c2)));
    }
    push(run.finish());
  }
  {
    detail::Runner<I> run(inst, "ALPHA.base-free");
    auto f = [cp, eq](bool ex, const LT& t, const LT& b) { return eq(ex, cp->alpha(t.value), cp->alpha_via(t.value, b.value)); };
    for (std::size_t i = 0; i < cfg.samples && !H.empty(); ++i) {
      std::vector<TermTuple::value_type> e;
      for (Var x : detail::random_vars(rng, rng() % 4, 2)) e.emplace_back(x, H[rng() % H.size()]);
      TermTuple t(std::move(e));
      auto closure = subterm_closure(c.store(), t.range());
      if (closure.size() > 8) continue;
      std::shuffle(closure.begin(), closure.end(), rng);
      run.test(f, {"t", "b"}, lt(t), lt(detail::assign(detail::random_vars(rng, closure.size(), 3), closure)));
    }
    push(run.finish());
  }
  {
    detail::Runner<I> l2i(inst, "KAPPA.eta-project"), l2ii(inst, "KAPPA.eta-restrict"), p14(inst, "ALPHA.eta");
    auto head_of = [cp](const LT& b) {
      // the term at x(n+1), i.e. the one whose children sit at x1..xn
      const auto& st = cp->store();
      for (auto const& [x, s] : b.value) {
        if (x.index() == st.arity(s) + 1) return s;
      }
      throw Error("not an eta-extending base tuple");
    };
    auto i_f = [cp, eq, head_of](bool ex, const LT& b) {
      GroundTerm s = head_of(b);
      const auto& st = cp->store();
      return eq(ex, cp->instance().act(cp->kappa(b.value), partial_identity(VarSet::initial_segment(st.arity(s) + 1))),
                st.head(s));
    };
    auto ii_f = [cp, eq](bool ex, const LT& b, const LT& a) {
      return eq(ex, cp->instance().act(cp->kappa(b.value), partial_identity(a.value.domain())), cp->kappa(a.value));
    };
    auto p14_f = [cp, eq](bool ex, const LT& one) {
      GroundTerm s = one.value.begin()->second;
      return eq(ex, cp->alpha(eta(cp->store(), s)), cp->store().head(s));
    };
    for (auto const& [s, b] : eta_bases) {
      l2i.test(i_f, {"b"}, lt(b));
      auto a = restrict_to_range(b, subterm_closure(c.store(), c.store().children(s)));
      l2ii.test(ii_f, {"b", "a"}, lt(b), lt(a));
      p14.test(p14_f, {"term"}, lt(TermTuple{{Var(1), s}}));
    }
    push(l2i.finish());
    push(l2ii.finish());
    push(p14.finish());
  }
  {
    detail::Runner<I> p15(inst, "KAPPA.nested"), p16(inst, "ALPHA.covering");
    auto f15 = [cp, eq](bool ex, const LT& b, const LT& a) {
      return eq(ex, cp->instance().act(cp->kappa(b.value), partial_identity(a.value.domain())), cp->kappa(a.value));
    };
    auto f16 = [cp, eq](bool ex, const LT& t, const LT& b) { return eq(ex, cp->alpha(t.value), cp->alpha_via(t.value, b.value)); };
    for (auto const& b : bases) {
      auto r = b.range();
      p15.test(f15, {"b", "a"}, lt(b), lt(restrict_to_range(b, subterm_closure(c.store(), random_subset_of(r)))));
      if (r.empty()) continue;
      std::vector<TermTuple::value_type> e;
      for (Var x : detail::random_vars(rng, rng() % 4, 1)) e.emplace_back(x, r[rng() % r.size()]);
      p16.test(f16, {"t", "b"}, lt(TermTuple(std::move(e))), lt(b));
    }
    push(p15.finish());
    push(p16.finish());
  }

  auto alpha = induced_quasi_labeling(c, h);
  const GroundSet<GroundTerm>& hg = *alpha.ground();
  const VarSet window = VarSet::initial_segment(cfg.window);
  const VarSet wide = VarSet::initial_segment(cfg.window + 2);
  {
    detail::Runner<I> l1(inst, "ALPHA.L1"), l2(inst, "ALPHA.L2");
    auto f1 = [cp](bool ex, const LT& t) {
      return detail::same_schema(ex, cp->instance().dom(cp->alpha(t.value)), Schema(t.value.domain()));
    };
    auto f2 = [cp, eq](bool ex, const LT& t, const Transform& lam) {
      return eq(ex, cp->alpha(act(t.value, lam)), cp->instance().act(cp->alpha(t.value), lam));
    };
    auto small = detail::tuple_sample(hg, window, 4096, rng);
    for (auto const& t : small) l1.test(f1, {"t"}, lt(t));
    for (std::size_t i = 0; i < cfg.samples; ++i) {
      auto t = random_tuple(rng, hg, wide);
      l1.test(f1, {"t"}, lt(t));
      l2.test(f2, {"t", "lam"}, lt(t), random_transform(rng, wide, wide));
    }
    push(l1.finish());
    push(l2.finish());
  }
  // Elements whose domain lies in the window; used by L3+ and for coverage.
  std::vector<E> in_window;
  bool window_complete = true;
  for (auto const& d : all_subsets(window)) {
    auto es = inst.elements_with_domain(d, 4097);
    if (es.size() > 4096) {
      es.erase(es.begin() + 4096, es.end());
      window_complete = false;
    }
    in_window.insert(in_window.end(), es.begin(), es.end());
  }
  if (window_complete) rep.elements_in_window = in_window.size();
  {
    detail::Runner<I> run(inst, "ALPHA.L3+");
    std::size_t beyond = 0, skipped = 0;
    auto f = [cp, hp, K, &beyond](bool ex, const LT& t, const E& v) {
      const I& in = cp->instance();
      const auto& g = *cp;
      VarSet dv = in.dom(v).vars();
      VarSet rest = set_difference(dv, t.value.domain());
      std::vector<GroundTerm> terms = hp->terms();
      auto ground = make_ground(terms);
      for (auto const& ext : total_tuples(*ground, rest)) {
        auto tt = merge(t.value, ext);
        if (tt && g.alpha(*tt) == v) return Outcome::ok();
      }
      bool required = hp->complete_below(dv.size()) && detail::max_depth(g.store(), t.value) + rest.size() <= K;
      if (!required) {
        ++beyond;
        return Outcome::ok();
      }
      return ex ? Outcome::fail("no t~ >= " + g.store().str(t.value) + " in H with alpha(t~) =", in.describe(v))
                : Outcome::fail({}, {});
    };
    for (auto const& v : in_window) {
      VarSet dv = inst.dom(v).vars();
      for (auto const& x : all_subsets(dv)) {
        if (x.size() == dv.size()) continue;
        if (power_or_cap(H.size(), x.size(), 4096) > 4096 || power_or_cap(H.size(), dv.size() - x.size(), 1 << 16) > (1 << 16)) {
          ++skipped;
          continue;
        }
        E w = inst.act(v, partial_identity(x));
        for (auto const& t : total_tuples(hg, x)) {
          if (!(c.alpha(t) == w)) continue;
          if (!run.test(f, {"t", "v"}, lt(t), v)) break;
        }
      }
    }
    CheckReport r = run.finish();
    std::string note;
    if (beyond > 0) note = std::to_string(beyond) + " cases need terms beyond depth " + std::to_string(K);
    if (skipped > 0) note += (note.empty() ? "" : "; ") + std::to_string(skipped) + " cases over the search caps";
    r.note = note;
    push(std::move(r));
  }

  // Quotient, then the extent of alpha-bar on reachable elements.
  std::optional<Quotient<GroundTerm, I>> q;
  try {
    q.emplace(quotient(alpha, cfg.samples, cfg.seed));
  } catch (const Error& e) {
    CheckReport r{"Q.equivalence", 1, 1, Status::Fail, {}, Counterexample{{}, e.what(), "an equivalence", {}}};
    push(std::move(r));
    return rep;
  }
  for (auto& r : q->checks) push(r);
  rep.classes = q->relation.class_count();
  {
    SampleConfig lc;
    lc.var_window = cfg.window;
    lc.random_cases = cfg.label_cases;
    lc.seed = cfg.seed;
    LabelingCaps caps;
    caps.check_extension = false;
    for (auto r : check_labeling(*q->alpha_bar, LabelLevel::Full, lc, caps)) {
      r.id = "QUOT." + r.id;
      push(std::move(r));
    }
  }
  std::set<E> reach{inst.zero()};
  for (auto const& t : detail::tuple_sample(hg, window, std::size_t{1} << 16, rng)) reach.insert(c.alpha(t));
  rep.reachable = reach.size() - 1;
  EmbeddingScope<GroundTerm, I> scope;
  scope.elements.assign(reach.begin(), reach.end());
  scope.transforms = all_transforms(window);
  scope.vars = window;
  scope.extent_limit = cfg.extent_limit;
  scope.must_cover = [cp, hp, K](const E& u, const Transform& lam, const TermTuple& s) {
    Schema d = cp->instance().dom(u);
    if (d.is_all()) return true;
    const VarSet& du = d.vars();
    std::size_t k = set_difference(du, lam.range()).size();
    if (k == 0) return true;
    return hp->complete_below(du.size()) && detail::max_depth(cp->store(), s) + k <= K;
  };
  for (auto& r : check_embedding(*q->alpha_bar, scope)) push(std::move(r));
  return rep;
}

}  // namespace orbital
