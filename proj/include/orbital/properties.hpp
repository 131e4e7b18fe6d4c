#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "axioms.hpp"
#include "check.hpp"
#include "instance.hpp"
#include "sampling.hpp"

namespace orbital {

inline constexpr std::array<std::string_view, 19> derived_ids = {
    "dom.antitone", "dom.diag", "dom.zero", "dom.finite", "dom.one", "zero-ne-one", "one.act", "act.astrict", "dom.meet", "leq.project",
    "act.meet",   "diag.rename",  "diag.rename-pair",  "diag.symmetric",    "fold.below-ediag",   "fold.split",    "fold.fixed",     "SL",      "EDIAG"};

inline std::string_view derived_statement(std::string_view id) {
  static const std::map<std::string_view, std::string_view> text = {
      {"dom.antitone", "u <= v => dom(v) <= dom(u)"},
      {"dom.diag", "dom(d_xy) = {x, y}"},
      {"dom.zero", "dom(0) = var"},
      {"dom.finite", "u != 0 <=> dom(u) finite"},
      {"dom.one", "u = 1 <=> dom(u) = {}"},
      {"zero-ne-one", "0 != 1"},
      {"one.act", "1 . lam = 1"},
      {"act.astrict", "u . lam = u . lam|^dom(u)"},
      {"dom.meet", "u ^ v != 0 => dom(u ^ v) = dom(u) + dom(v)"},
      {"leq.project", "u <= v <=> u . pi_dom(v) <= v"},
      {"act.meet", "(v1 ^ .. ^ vn) . lam = v1 . lam ^ .. ^ vn . lam for one-to-one lam covering the domains"},
      {"diag.rename", "d_yy . {z->y} = d_zz"},
      {"diag.rename-pair", "d_z1z2 . {y1->z1, y2->z2} = d_y1y2"},
      {"diag.symmetric", "d_xy = d_yx"},
      {"fold.below-ediag", "folding delta, rng(delta) <= dom(v) => v . delta <= e_delta"},
      {"fold.split", "folding delta, df(delta) = dom(v), v <= e_delta => v = (v . pi_rng(delta)) ^ e_delta"},
      {"fold.fixed", "folding delta, df(delta) = dom(v), v <= e_delta => v = v . delta"},
      {"SL", "meet is idempotent, commutative, associative, with bounds 0 and 1"},
      {"EDIAG", "dom(e_delta) = df(delta)"},
  };
  auto it = text.find(id);
  return it == text.end() ? std::string_view{} : it->second;
}

/// The delta-diagonal: the meet of d_{x delta(x)} over df(delta); 1 for the empty folding.
template <OrbitalInstance I>
typename I::element_type e_diag(const I& inst, const Transform& delta) {
  if (!is_folding(delta)) throw Error("e_delta needs a folding, got " + to_string(delta));
  auto e = inst.one();
  for (auto const& [x, y] : delta) e = inst.meet(e, inst.diag(x, y));
  return e;
}

/// Filters that can be lifted to probe whether a hypothesis is needed.
struct DerivedOptions {
  bool act_meet_require_injective = true;
  bool act_meet_require_range_cover = true;
};

namespace detail {

/// Folding whose range is a nonempty subset of `inside` (when that is nonempty)
/// and whose domain of definition also takes in some of `extra`.
inline Transform random_folding_into(Rng& rng, const VarSet& inside, const VarSet& extra) {
  if (inside.empty()) return Transform{};
  std::vector<Var> fixed;
  for (Var x : inside) {
    if (rng() & 1U) fixed.push_back(x);
  }
  if (fixed.empty()) fixed.push_back(inside[rng() % inside.size()]);
  VarSet b(fixed);
  std::vector<Transform::value_type> pairs;
  for (Var x : b) pairs.emplace_back(x, x);
  for (Var x : set_union(inside, extra)) {
    if (b.contains(x) || !(rng() & 1U)) continue;
    pairs.emplace_back(x, b[rng() % b.size()]);
  }
  return Transform(std::move(pairs));
}

template <class I>
CheckReport run_derived(const Universe<I>& U, std::string_view id, const DerivedOptions& opt) {
  using E = typename I::element_type;
  const I& inst = U.inst;
  Runner<I> run(inst, std::string(id));
  Rng rng(U.cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t N = U.cfg.random_cases;
  const E zero = U.zero;
  const E one = U.one;
  const std::uint32_t far = U.cfg.var_window + 6;  // variable range for statements about diagonals
  std::vector<Transform> foldings;
  for (auto const& f : U.transforms) {
    if (is_folding(f)) foldings.push_back(f);
  }

  if (id == "dom.antitone") {
    auto f = [&inst](bool ex, const E& u, const E& v) {
      if (!leq(inst, u, v)) return Outcome::skip();
      Schema du = inst.dom(u), dv = inst.dom(v);
      if (dv.subset_of(du)) return Outcome::ok();
      return ex ? Outcome::fail(dv.str() + " <=", du.str()) : Outcome::fail({}, {});
    };
    for (auto const& u : U.elements) {
      for (auto const& v : U.elements) run.test(f, {"u", "v"}, u, v);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      E v = U.random_element(rng);
      run.test(f, {"u", "v"}, inst.meet(v, U.random_element(rng)), v);
    }
  } else if (id == "dom.diag") {
    auto f = [&inst](bool ex, Var x, Var y) { return same_schema(ex, inst.dom(inst.diag(x, y)), Schema(VarSet{x, y})); };
    for (std::uint32_t a = 1; a <= far; ++a) {
      for (std::uint32_t b = 1; b <= far; ++b) run.test(f, {"x", "y"}, Var(a), Var(b));
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"x", "y"}, random_var(rng, 1, 1000), random_var(rng, 1, 1000));
    }
  } else if (id == "dom.zero") {
    // dom(0) is infinite: checked as "is all" together with membership of each probed variable.
    auto f = [&inst, zero](bool ex, Var x) {
      Schema d = inst.dom(zero);
      if (d.is_all() && d.contains(x)) return Outcome::ok();
      return ex ? Outcome::fail(d.str(), "ALL") : Outcome::fail({}, {});
    };
    for (std::uint32_t a = 1; a <= far; ++a) run.test(f, {"x"}, Var(a));
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"x"}, random_var(rng, 1, 1u << 20));
  } else if (id == "dom.finite" || id == "dom.one") {
    bool iv = id == "dom.finite";
    auto f = [&inst, zero, one, iv](bool ex, const E& u) {
      Schema d = inst.dom(u);
      bool left = iv ? !(u == zero) : u == one;
      bool right = iv ? d.is_finite() : (d.is_finite() && d.vars().empty());
      if (left == right) return Outcome::ok();
      return ex ? Outcome::fail(inst.describe(u), "dom = " + d.str()) : Outcome::fail({}, {});
    };
    for (auto const& u : U.elements) run.test(f, {"u"}, u);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"u"}, U.random_element(rng));
  } else if (id == "zero-ne-one") {
    // A nullary statement; each case compares 0 . lam with 1 . lam, which are 0 and 1.
    auto f = [&inst, zero, one](bool ex, const Transform& lam) {
      E z = inst.act(zero, lam), o = inst.act(one, lam);
      if (!(zero == one) && !(z == o)) return Outcome::ok();
      return ex ? Outcome::fail(inst.describe(z), inst.describe(o)) : Outcome::fail({}, {});
    };
    for (auto const& lam : U.transforms) run.test(f, {"lam"}, lam);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"lam"}, U.random_lambda(rng));
  } else if (id == "one.act") {
    auto f = [&inst, one](bool ex, const Transform& lam) { return same(inst, ex, inst.act(one, lam), one); };
    for (auto const& lam : U.transforms) run.test(f, {"lam"}, lam);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"lam"}, U.random_lambda(rng));
  } else if (id == "act.astrict") {
    auto f = [&inst](bool ex, const E& u, const Transform& lam) {
      Schema d = inst.dom(u);
      if (!d.is_finite()) return Outcome::skip();
      return same(inst, ex, inst.act(u, lam), inst.act(u, astrict(lam, d.vars())));
    };
    for (auto const& u : U.elements) {
      for (auto const& lam : U.transforms) run.test(f, {"u", "lam"}, u, lam);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"u", "lam"}, U.random_nonzero(rng), U.random_lambda(rng));
    }
  } else if (id == "dom.meet") {
    auto f = [&inst, zero](bool ex, const E& u, const E& v) {
      E m = inst.meet(u, v);
      if (m == zero) return Outcome::skip();
      return same_schema(ex, inst.dom(m), schema_union(inst.dom(u), inst.dom(v)));
    };
    for (auto const& u : U.elements) {
      for (auto const& v : U.elements) run.test(f, {"u", "v"}, u, v);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"u", "v"}, U.random_element(rng), U.random_element(rng));
    }
  } else if (id == "leq.project") {
    auto f = [&inst](bool ex, const E& u, const E& v) {
      Schema dv = inst.dom(v);
      if (!dv.is_finite()) return Outcome::skip();
      bool left = leq(inst, u, v);
      E p = inst.act(u, partial_identity(dv.vars()));
      bool right = leq(inst, p, v);
      if (left == right) return Outcome::ok();
      return ex ? Outcome::fail(std::string("u <= v is ") + (left ? "true" : "false"),
                                inst.describe(p) + " <= v is " + (right ? "true" : "false"))
                : Outcome::fail({}, {});
    };
    for (auto const& u : U.elements) {
      for (auto const& v : U.elements) run.test(f, {"u", "v"}, u, v);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      E v = U.random_nonzero(rng);
      E u = (rng() & 1U) ? inst.meet(v, U.random_element(rng)) : U.random_element(rng);
      run.test(f, {"u", "v"}, u, v);
    }
  } else if (id == "act.meet") {
    auto f = [&inst, opt](bool ex, const E& v1, const E& v2, const E& v3, const Transform& lam) {
      Schema d = schema_union(schema_union(inst.dom(v1), inst.dom(v2)), inst.dom(v3));
      if (opt.act_meet_require_injective && !lam.is_injective()) return Outcome::skip();
      if (opt.act_meet_require_range_cover && !d.subset_of(Schema(lam.range()))) return Outcome::skip();
      E lhs = inst.act(inst.meet(inst.meet(v1, v2), v3), lam);
      E rhs = inst.meet(inst.meet(inst.act(v1, lam), inst.act(v2, lam)), inst.act(v3, lam));
      return same(inst, ex, lhs, rhs);
    };
    for (auto const& v1 : U.elements) {
      for (auto const& v2 : U.elements) {
        for (auto const& lam : U.transforms) {
          if (!run.test(f, {"v1", "v2", "v3", "lam"}, v1, v2, one, lam)) break;
        }
        if (run.failed()) break;
      }
      if (run.failed()) break;
    }
    // Random lam; the v_i are cut down to rng(lam) so the cover hypothesis holds
    // unless it is switched off, in which case they are left as drawn.
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      Transform lam = opt.act_meet_require_injective ? random_injective(rng, U.wide, U.wide) : U.random_lambda(rng);
      std::array<E, 3> v{U.random_nonzero(rng), U.random_nonzero(rng), (rng() & 1U) ? one : U.random_nonzero(rng)};
      if (opt.act_meet_require_range_cover) {
        for (auto& e : v) e = inst.act(e, partial_identity(lam.range()));
      }
      run.test(f, {"v1", "v2", "v3", "lam"}, v[0], v[1], v[2], lam);
    }
  } else if (id == "diag.rename") {
    auto f = [&inst](bool ex, Var y, Var z) {
      return same(inst, ex, inst.act(inst.diag(y, y), rename_to(y, z)), inst.diag(z, z));
    };
    for (std::uint32_t a = 1; a <= far; ++a) {
      for (std::uint32_t b = 1; b <= far; ++b) run.test(f, {"y", "z"}, Var(a), Var(b));
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"y", "z"}, random_var(rng, 1, 1000), random_var(rng, 1, 1000));
    }
  } else if (id == "diag.rename-pair") {
    auto f = [&inst](bool ex, Var y1, Var y2, Var z1, Var z2) {
      if (y1 == y2 || z1 == z2) return Outcome::skip();
      Transform lam{{y1, z1}, {y2, z2}};
      return same(inst, ex, inst.act(inst.diag(z1, z2), lam), inst.diag(y1, y2));
    };
    for (std::uint32_t a = 1; a <= 4; ++a)
      for (std::uint32_t b = 1; b <= 4; ++b)
        for (std::uint32_t c = 1; c <= 4; ++c)
          for (std::uint32_t d = 1; d <= 4; ++d) run.test(f, {"y1", "y2", "z1", "z2"}, Var(a), Var(b), Var(c), Var(d));
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"y1", "y2", "z1", "z2"}, random_var(rng, 1, far), random_var(rng, 1, far), random_var(rng, 1, far),
               random_var(rng, 1, far));
    }
  } else if (id == "diag.symmetric") {
    auto f = [&inst](bool ex, Var x, Var y) { return same(inst, ex, inst.diag(x, y), inst.diag(y, x)); };
    for (std::uint32_t a = 1; a <= far; ++a) {
      for (std::uint32_t b = 1; b <= far; ++b) run.test(f, {"x", "y"}, Var(a), Var(b));
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"x", "y"}, random_var(rng, 1, 1000), random_var(rng, 1, 1000));
    }
  } else if (id == "fold.below-ediag") {
    auto f = [&inst](bool ex, const E& v, const Transform& delta) {
      if (!is_folding(delta) || !Schema(delta.range()).subset_of(inst.dom(v))) return Outcome::skip();
      return below(inst, ex, inst.act(v, delta), e_diag(inst, delta));
    };
    for (auto const& v : U.elements) {
      for (auto const& d : foldings) run.test(f, {"v", "delta"}, v, d);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      E v = U.random_nonzero(rng);
      Schema d = inst.dom(v);
      Transform delta = d.is_finite() ? random_folding_into(rng, d.vars(), random_subset(rng, U.wide)) : Transform{};
      run.test(f, {"v", "delta"}, v, delta);
    }
  } else if (id == "fold.split" || id == "fold.fixed") {
    bool p8 = id == "fold.split";
    auto f = [&inst, p8](bool ex, const E& v, const Transform& delta) {
      if (!is_folding(delta) || !(Schema(delta.domain()) == inst.dom(v))) return Outcome::skip();
      E e = e_diag(inst, delta);
      if (!leq(inst, v, e)) return Outcome::skip();
      if (p8) return same(inst, ex, v, inst.meet(inst.act(v, partial_identity(delta.range())), e));
      return same(inst, ex, v, inst.act(v, delta));
    };
    for (auto const& v : U.elements) {
      for (auto const& d : foldings) run.test(f, {"v", "delta"}, v, d);
    }
    // Hypotheses built in: delta with df(delta) = D, v = (w . pi_D) ^ e_delta, redrawn while 0.
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      VarSet dset = random_subset(rng, U.window);
      Transform delta = random_folding(rng, dset);
      E e = e_diag(inst, delta);
      E v = zero;
      for (int tries = 0; tries < 16 && (v == zero || !(inst.dom(v) == Schema(dset))); ++tries) {
        v = inst.meet(inst.act(U.random_element(rng), partial_identity(dset)), e);
      }
      run.test(f, {"v", "delta"}, v, delta);
    }
  } else if (id == "SL") {
    auto f = [&inst, zero, one](bool ex, const E& u, const E& v, const E& w) {
      if (!(inst.meet(u, u) == u)) return same(inst, ex, inst.meet(u, u), u);
      if (!(inst.meet(u, v) == inst.meet(v, u))) return same(inst, ex, inst.meet(u, v), inst.meet(v, u));
      E l = inst.meet(inst.meet(u, v), w), r = inst.meet(u, inst.meet(v, w));
      if (!(l == r)) return same(inst, ex, l, r);
      if (!(inst.meet(u, zero) == zero)) return same(inst, ex, inst.meet(u, zero), zero);
      return same(inst, ex, inst.meet(u, one), u);
    };
    for (auto const& u : U.elements) {
      for (auto const& v : U.elements) run.test(f, {"u", "v", "w"}, u, v, one);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"u", "v", "w"}, U.random_element(rng), U.random_element(rng), U.random_element(rng));
    }
  } else if (id == "EDIAG") {
    auto f = [&inst](bool ex, const Transform& delta) {
      E e = e_diag(inst, delta);
      return same_schema(ex, inst.dom(e), Schema(delta.domain()));
    };
    for (auto const& d : foldings) run.test(f, {"delta"}, d);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"delta"}, random_folding(rng, random_subset(rng, U.wide)));
  } else {
    throw Error("unknown property '" + std::string(id) + "'");
  }
  return run.finish();
}

}  // namespace detail

template <SampleableInstance I>
CheckReport check_derived(const I& inst, std::string_view id, const SampleConfig& cfg, const DerivedOptions& opt = {}) {
  detail::Universe<I> u(inst, cfg);
  return detail::run_derived(u, id, opt);
}

template <SampleableInstance I>
std::vector<CheckReport> check_all_derived(const I& inst, const SampleConfig& cfg, const DerivedOptions& opt = {}) {
  detail::Universe<I> u(inst, cfg);
  std::vector<CheckReport> out;
  for (auto id : derived_ids) out.push_back(detail::run_derived(u, id, opt));
  return out;
}

}  // namespace orbital
