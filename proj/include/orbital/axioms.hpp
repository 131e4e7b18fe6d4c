#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "check.hpp"
#include "instance.hpp"
#include "sampling.hpp"

namespace orbital {

inline constexpr std::array<std::string_view, 13> axiom_ids = {"A1", "A2", "A3", "A4",  "A5",  "A6", "A7",
                                                               "A8", "A9", "A10", "A11", "A12", "A13"};

inline std::string_view axiom_statement(std::string_view id) {
  static const std::map<std::string_view, std::string_view> text = {
      {"A1", "u != 0 => u . pi{} = 1"},
      {"A2", "0 . lam = 0"},
      {"A3", "dom(u) <= Y => (u ^ v) . pi_Y = u ^ (v . pi_Y)"},
      {"A4", "u <= u . pi_Y"},
      {"A5", "u <= v => u . lam <= v . lam"},
      {"A6", "0 != u <= d_xy, x != y => u = (u . pi_{dom(u) - y}) ^ d_xy"},
      {"A7", "(u . lam) . mu = u . (lam o mu)"},
      {"A8", "u . pi_dom(u) = u"},
      {"A9", "d_xx != 0"},
      {"A10", "d_xy = d_xx . {x->x, y->x}"},
      {"A11", "u != 0 => dom(u . lam) = lam^-1(dom(u))"},
      {"A12", "u != 0 => dom(u) finite"},
      {"A13", "dom(u) = {x | u <= d_xx}"},
  };
  auto it = text.find(id);
  return it == text.end() ? std::string_view{} : it->second;
}

namespace detail {

/// Shared input sets for one instance and configuration.
template <class I>
struct Universe {
  using E = typename I::element_type;

  const I& inst;
  SampleConfig cfg;
  VarSet window;
  VarSet wide;  // window plus two variables outside it
  std::vector<E> elements;
  std::vector<Transform> transforms;
  std::vector<VarSet> subsets;
  E zero, one;

  Universe(const I& i, const SampleConfig& c)
      : inst(i), cfg(c), window(c.window()), wide(VarSet::initial_segment(c.var_window + 2)),
        elements(i.exhaustive_elements(c)), subsets(all_subsets(window)), zero(i.zero()), one(i.one()) {
    cfg.validate();
    transforms = all_transforms(window);
    if (transforms.size() > cfg.transform_budget) {
      Rng rng(cfg.seed ^ 0x7f4a7c15ULL);
      std::shuffle(transforms.begin(), transforms.end(), rng);
      transforms.resize(cfg.transform_budget);
    }
  }

  E random_element(Rng& rng) const { return inst.random_element(cfg, rng); }

  E random_nonzero(Rng& rng) const {
    for (int tries = 0; tries < 64; ++tries) {
      E u = inst.random_element(cfg, rng);
      if (!(u == zero)) return u;
    }
    return one;
  }

  Transform random_lambda(Rng& rng) const { return random_transform(rng, wide, wide); }

  Var random_window_var(Rng& rng) const { return random_var(rng, 1, cfg.var_window); }
};

template <class I>
CheckReport run_axiom(const Universe<I>& U, std::string_view id) {
  using E = typename I::element_type;
  const I& inst = U.inst;
  Runner<I> run(inst, std::string(id));
  Rng rng(U.cfg.seed);
  const std::size_t N = U.cfg.random_cases;
  const E zero = U.zero;
  const E one = U.one;

  if (id == "A1") {
    auto f = [&inst, zero, one](bool ex, const E& u) {
      if (u == zero) return Outcome::skip();
      return same(inst, ex, inst.act(u, Transform{}), one);
    };
    for (auto const& u : U.elements) run.test(f, {"u"}, u);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"u"}, U.random_nonzero(rng));
  } else if (id == "A2") {
    auto f = [&inst, zero](bool ex, const Transform& lam) { return same(inst, ex, inst.act(zero, lam), zero); };
    for (auto const& lam : U.transforms) run.test(f, {"lam"}, lam);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"lam"}, U.random_lambda(rng));
  } else if (id == "A3") {
    auto f = [&inst](bool ex, const E& u, const E& v, const VarSet& y) {
      Schema d = inst.dom(u);
      if (!d.subset_of(Schema(y))) return Outcome::skip();
      Transform p = partial_identity(y);
      return same(inst, ex, inst.act(inst.meet(u, v), p), inst.meet(u, inst.act(v, p)));
    };
    // v . pi_Y for every exhaustive v and window subset Y.
    std::vector<std::vector<E>> vy(U.elements.size());
    for (std::size_t j = 0; j < U.elements.size(); ++j) {
      for (auto const& y : U.subsets) vy[j].push_back(inst.act(U.elements[j], partial_identity(y)));
    }
    for (std::size_t i = 0; i < U.elements.size() && !run.failed(); ++i) {
      const E& u = U.elements[i];
      Schema d = inst.dom(u);
      for (std::size_t j = 0; j < U.elements.size() && !run.failed(); ++j) {
        const E& v = U.elements[j];
        E uv = inst.meet(u, v);
        for (std::size_t k = 0; k < U.subsets.size(); ++k) {
          const VarSet& y = U.subsets[k];
          if (!d.subset_of(Schema(y))) {
            run.tally(false);
            continue;
          }
          if (inst.act(uv, partial_identity(y)) == inst.meet(u, vy[j][k])) {
            run.tally(true);
          } else if (!run.test(f, {"u", "v", "Y"}, u, v, y)) {
            break;
          }
        }
      }
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      E u = U.random_nonzero(rng);
      E v = U.random_element(rng);
      Schema d = inst.dom(u);
      VarSet y = random_subset(rng, U.wide);
      if (d.is_finite()) y = set_union(y, d.vars());
      run.test(f, {"u", "v", "Y"}, u, v, y);
    }
  } else if (id == "A4") {
    auto f = [&inst](bool ex, const E& u, const VarSet& y) {
      return below(inst, ex, u, inst.act(u, partial_identity(y)));
    };
    for (auto const& u : U.elements) {
      for (auto const& y : U.subsets) run.test(f, {"u", "Y"}, u, y);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"u", "Y"}, U.random_element(rng), random_subset(rng, U.wide));
    }
  } else if (id == "A5") {
    auto f = [&inst](bool ex, const E& u, const E& v, const Transform& lam) {
      if (!leq(inst, u, v)) return Outcome::skip();
      return below(inst, ex, inst.act(u, lam), inst.act(v, lam));
    };
    std::vector<std::vector<E>> ul(U.elements.size());
    for (std::size_t i = 0; i < U.elements.size(); ++i) {
      for (auto const& lam : U.transforms) ul[i].push_back(inst.act(U.elements[i], lam));
    }
    for (std::size_t i = 0; i < U.elements.size() && !run.failed(); ++i) {
      for (std::size_t j = 0; j < U.elements.size() && !run.failed(); ++j) {
        bool comparable = leq(inst, U.elements[i], U.elements[j]);
        for (std::size_t k = 0; k < U.transforms.size(); ++k) {
          if (!comparable) {
            run.tally(false);
          } else if (leq(inst, ul[i][k], ul[j][k])) {
            run.tally(true);
          } else if (!run.test(f, {"u", "v", "lam"}, U.elements[i], U.elements[j], U.transforms[k])) {
            break;
          }
        }
      }
    }
    // Hypothesis built in: u = v ^ w <= v.
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      E v = U.random_element(rng);
      E u = inst.meet(v, U.random_element(rng));
      run.test(f, {"u", "v", "lam"}, u, v, U.random_lambda(rng));
    }
  } else if (id == "A6") {
    auto f = [&inst, zero](bool ex, const E& u, Var x, Var y) {
      if (x == y || u == zero || !leq(inst, u, inst.diag(x, y))) return Outcome::skip();
      Schema d = inst.dom(u);
      if (!d.is_finite()) return Outcome::skip();
      VarSet rest = d.vars();
      rest.erase(y);
      return same(inst, ex, u, inst.meet(inst.act(u, partial_identity(rest)), inst.diag(x, y)));
    };
    for (auto const& u : U.elements) {
      for (Var x : U.window) {
        for (Var y : U.window) run.test(f, {"u", "x", "y"}, u, x, y);
      }
    }
    // Hypothesis built in: u = w ^ d_xy, redrawn while it is 0.
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      Var x = random_var(rng, 1, U.cfg.var_window + 2);
      Var y = random_var(rng, 1, U.cfg.var_window + 1);
      if (y == x) y = Var(x.index() + 1);
      E u = zero;
      for (int tries = 0; tries < 16 && u == zero; ++tries) u = inst.meet(U.random_element(rng), inst.diag(x, y));
      run.test(f, {"u", "x", "y"}, u, x, y);
    }
  } else if (id == "A7") {
    auto f = [&inst](bool ex, const E& u, const Transform& lam, const Transform& mu) {
      return same(inst, ex, inst.act(inst.act(u, lam), mu), inst.act(u, compose(lam, mu)));
    };
    std::map<Transform, std::size_t> index;
    for (std::size_t k = 0; k < U.transforms.size(); ++k) index.emplace(U.transforms[k], k);
    // comp[a][b] = index of transforms[a] o transforms[b], or npos when outside the sample.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> comp(U.transforms.size(), std::vector<std::size_t>(U.transforms.size(), npos));
    for (std::size_t a = 0; a < U.transforms.size(); ++a) {
      for (std::size_t b = 0; b < U.transforms.size(); ++b) {
        auto it = index.find(compose(U.transforms[a], U.transforms[b]));
        if (it != index.end()) comp[a][b] = it->second;
      }
    }
    for (std::size_t i = 0; i < U.elements.size() && !run.failed(); ++i) {
      const E& u = U.elements[i];
      std::vector<E> ul;
      ul.reserve(U.transforms.size());
      for (auto const& lam : U.transforms) ul.push_back(inst.act(u, lam));
      for (std::size_t a = 0; a < U.transforms.size() && !run.failed(); ++a) {
        for (std::size_t b = 0; b < U.transforms.size(); ++b) {
          E lhs = inst.act(ul[a], U.transforms[b]);
          bool ok = comp[a][b] != npos ? lhs == ul[comp[a][b]]
                                       : lhs == inst.act(u, compose(U.transforms[a], U.transforms[b]));
          if (ok) {
            run.tally(true);
          } else if (!run.test(f, {"u", "lam", "mu"}, u, U.transforms[a], U.transforms[b])) {
            break;
          }
        }
      }
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"u", "lam", "mu"}, U.random_element(rng), U.random_lambda(rng), U.random_lambda(rng));
    }
  } else if (id == "A8") {
    // pi_dom(u) only exists for finite dom(u), so 0 is out of scope here.
    auto f = [&inst](bool ex, const E& u) {
      Schema d = inst.dom(u);
      if (!d.is_finite()) return Outcome::skip();
      return same(inst, ex, inst.act(u, partial_identity(d.vars())), u);
    };
    for (auto const& u : U.elements) run.test(f, {"u"}, u);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"u"}, U.random_nonzero(rng));
  } else if (id == "A9") {
    auto f = [&inst, zero](bool ex, Var x) {
      E d = inst.diag(x, x);
      if (!(d == zero)) return Outcome::ok();
      return ex ? Outcome::fail(inst.describe(d) + " !=", inst.describe(zero)) : Outcome::fail({}, {});
    };
    for (Var x : U.window) run.test(f, {"x"}, x);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"x"}, random_var(rng, 1, 1000));
  } else if (id == "A10") {
    auto f = [&inst](bool ex, Var x, Var y) {
      return same(inst, ex, inst.diag(x, y), inst.act(inst.diag(x, x), collapse(x, y)));
    };
    for (Var x : U.window) {
      for (Var y : U.window) run.test(f, {"x", "y"}, x, y);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"x", "y"}, random_var(rng, 1, 1000), random_var(rng, 1, 1000));
    }
  } else if (id == "A11") {
    auto f = [&inst, zero](bool ex, const E& u, const Transform& lam) {
      if (u == zero) return Outcome::skip();
      return same_schema(ex, inst.dom(inst.act(u, lam)), Schema(preimage(lam, inst.dom(u))));
    };
    for (auto const& u : U.elements) {
      for (auto const& lam : U.transforms) run.test(f, {"u", "lam"}, u, lam);
    }
    for (std::size_t i = 0; i < N && !run.failed(); ++i) {
      run.test(f, {"u", "lam"}, U.random_nonzero(rng), U.random_lambda(rng));
    }
  } else if (id == "A12") {
    auto f = [&inst, zero](bool ex, const E& u) {
      if (u == zero) return Outcome::skip();
      Schema d = inst.dom(u);
      if (d.is_finite()) return Outcome::ok();
      return ex ? Outcome::fail(d.str(), "a finite set") : Outcome::fail({}, {});
    };
    for (auto const& u : U.elements) run.test(f, {"u"}, u);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"u"}, U.random_nonzero(rng));
  } else if (id == "A13") {
    // Both sides restricted to the window plus dom(u) itself, so extra
    // variables in a finite dom(u) are still caught.
    const VarSet window = U.window;
    auto f = [&inst, window](bool ex, const E& u) {
      Schema d = inst.dom(u);
      VarSet probe = d.is_finite() ? set_union(window, d.vars()) : window;
      std::vector<Var> below_diag;
      for (Var x : probe) {
        if (leq(inst, u, inst.diag(x, x))) below_diag.push_back(x);
      }
      VarSet rhs(std::move(below_diag));
      VarSet lhs = d.is_finite() ? d.vars() : probe;
      if (lhs == rhs) return Outcome::ok();
      return ex ? Outcome::fail(lhs.str(), rhs.str()) : Outcome::fail({}, {});
    };
    for (auto const& u : U.elements) run.test(f, {"u"}, u);
    for (std::size_t i = 0; i < N && !run.failed(); ++i) run.test(f, {"u"}, U.random_element(rng));
  } else {
    throw Error("unknown axiom '" + std::string(id) + "'");
  }
  return run.finish();
}

}  // namespace detail

/// Checks one axiom: an exhaustive sweep over the instance's small elements and
/// the window's transformations and subsets, then cfg.random_cases random cases.
template <SampleableInstance I>
CheckReport check_axiom(const I& inst, std::string_view id, const SampleConfig& cfg) {
  detail::Universe<I> u(inst, cfg);
  return detail::run_axiom(u, id);
}

template <SampleableInstance I>
std::vector<CheckReport> check_axioms(const I& inst, const std::vector<std::string>& ids, const SampleConfig& cfg) {
  detail::Universe<I> u(inst, cfg);
  std::vector<CheckReport> out;
  for (auto const& id : ids) out.push_back(detail::run_axiom(u, id));
  return out;
}

template <SampleableInstance I>
std::vector<CheckReport> check_all_axioms(const I& inst, const SampleConfig& cfg) {
  return check_axioms(inst, std::vector<std::string>(axiom_ids.begin(), axiom_ids.end()), cfg);
}

}  // namespace orbital
