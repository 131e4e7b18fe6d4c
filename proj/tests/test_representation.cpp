#include <catch2/catch_amalgamated.hpp>

#include "orbital/mutants.hpp"
#include "orbital/representation.hpp"

using namespace orbital;

namespace {

using Tab = Table<std::string>;

Var x(std::uint32_t i) { return Var(i); }

RepresentConfig small_run() {
  RepresentConfig cfg;
  cfg.samples = 150;
  cfg.label_cases = 300;
  return cfg;
}

}  // namespace

TEST_CASE("arity of a symbol", "[representation]") {
  TableAlgebra<> tab({"a", "b"});
  auto g = tab.ground();
  CHECK(arity(tab, Tab::from_rows(g, {x(1)}, {{"a"}})) == 0u);
  CHECK(arity(tab, Tab::from_rows(g, {x(1), x(2)}, {{"a", "b"}})) == 1u);
  CHECK_FALSE(arity(tab, Tab::from_rows(g, {x(2)}, {{"a"}})).has_value());
  CHECK_FALSE(arity(tab, tab.one()).has_value());
  CHECK_FALSE(arity(tab, tab.zero()).has_value());
}

TEST_CASE("hash-consed terms, closure, base tuples and eta", "[terms]") {
  TermStore<int> store;
  auto c0 = store.add_symbol(10, 0), c1 = store.add_symbol(11, 0), f = store.add_symbol(20, 2);
  CHECK(store.add_symbol(10, 0) == c0);
  CHECK_THROWS_AS(store.add_symbol(10, 1), Error);

  auto a = store.make(c0, {}), b = store.make(c1, {});
  auto fab = store.make(f, {a, b});
  CHECK(store.make(f, {a, b}) == fab);
  CHECK(store.size() == 3);
  CHECK(store.depth(fab) == 2);
  CHECK(store.str(fab) == "v2(v0,v1)");
  CHECK_THROWS_AS(store.make(f, {a}), Error);

  CHECK(subterm_closure(store, {a}) == std::vector<GroundTerm>{a});
  CHECK(subterm_closure(store, {fab}) == std::vector<GroundTerm>{a, b, fab});
  auto once = subterm_closure(store, {fab, b});
  CHECK(subterm_closure(store, once) == once);
  CHECK(is_subterm_closed(store, once));
  CHECK_FALSE(is_subterm_closed(store, {fab}));

  CHECK(base_tuple_for(store, TermTuple{}) == TermTuple{});
  CHECK(base_tuple_for(store, TermTuple{{x(5), a}}) == TermTuple{{x(1), a}});
  auto bt = base_tuple_for(store, TermTuple{{x(2), fab}, {x(7), a}});
  CHECK(bt == TermTuple{{x(1), a}, {x(2), b}, {x(3), fab}});
  CHECK(is_base_tuple(store, bt));
  CHECK_FALSE(is_base_tuple(store, TermTuple{{x(1), a}, {x(2), a}}));

  CHECK(eta(store, a) == TermTuple{{x(1), a}});
  CHECK(eta(store, fab) == TermTuple{{x(1), a}, {x(2), b}, {x(3), fab}});
}

TEST_CASE("kappa and alpha on small tuples", "[representation]") {
  TableAlgebra<> tab({"a", "b"});
  Construction c(tab);
  auto h = build_H(c, 1);
  REQUIRE(h.stratum(1).size() == 3);
  CHECK(c.kappa(TermTuple{}) == tab.one());
  CHECK(c.alpha(TermTuple{}) == tab.one());
  for (GroundTerm t : h.stratum(1)) {
    const Tab& v = c.store().head(t);
    CHECK(c.kappa(TermTuple{{x(1), t}}) == v);
    CHECK(c.alpha(eta(c.store(), t)) == v);
    // A constant moved to x4 is the same table with its column renamed.
    CHECK(c.alpha(TermTuple{{x(4), t}}) == tab.act(v, Transform{{x(4), x(1)}}));
  }
}

TEST_CASE("the stratified term set of Tab({a})", "[representation]") {
  TableAlgebra<> tab({"a"});
  Construction c(tab);
  REQUIRE(c.symbols(0).size() == 1);
  CHECK(c.store().symbol(c.symbols(0)[0]) == Tab::from_rows(tab.ground(), {x(1)}, {{"a"}}));
  auto h = build_H(c, 2);
  CHECK(h.levels[0].empty());
  REQUIRE(h.stratum(1).size() == 1);
  // H^(2) adds v(c) for the single unary symbol; binary symbols need two
  // distinct children and there is only one constant.
  REQUIRE(h.stratum(2).size() == 2);
  GroundTerm vc = h.levels[2][0];
  CHECK(c.store().arity(vc) == 1);
  CHECK(c.store().children(vc) == std::vector<GroundTerm>{h.levels[1][0]});
  CHECK_FALSE(h.truncated());
  for (GroundTerm t : h.terms()) {
    CHECK(eta(c.store(), t).is_injective());
    CHECK(c.alpha(eta(c.store(), t)) == c.store().head(t));
  }
}

TEST_CASE("H for Tab({a,b}) admits every constant and is cut only at the symbol cap", "[representation]") {
  TableAlgebra<> tab({"a", "b"});
  Construction c(tab);
  CHECK(c.symbols(0).size() == 3);
  CHECK(c.symbols(1).size() == 15);
  CHECK(c.symbols(2).size() == 64);
  CHECK(c.symbols_truncated(2));
  CHECK_FALSE(c.symbols_truncated(1));
  auto h = build_H(c, 2);
  CHECK(h.stratum(1).size() == 3);
  CHECK(h.stratum(2).size() == 42);
  CHECK(h.complete_below(2));
  CHECK_FALSE(h.complete_below(3));
  for (std::size_t k = 1; k <= 2; ++k) {
    for (GroundTerm t : h.levels[k]) REQUIRE(c.store().depth(t) == k);
  }
  for (GroundTerm t : h.terms()) {
    REQUIRE(eta(c.store(), t).is_injective());
    REQUIRE(c.alpha(eta(c.store(), t)) == c.store().head(t));
  }
}

TEST_CASE("the pipeline passes on Tab({a}) and Tab({a,b})", "[representation]") {
  for (auto ground : {std::vector<std::string>{"a"}, {"a", "b"}}) {
    TableAlgebra<> tab(ground);
    auto r = represent(tab, small_run());
    INFO(to_json(r).dump(2));
    CHECK(r.passed());
    CHECK(r.strata.size() == 3);
    CHECK(r.strata[0] == 0);
    CHECK(r.classes >= 1);
    CHECK(r.classes <= r.strata[2]);
    REQUIRE(r.elements_in_window);
    CHECK(r.reachable <= *r.elements_in_window);
  }
}

TEST_CASE("the pipeline flags a broken instance", "[representation]") {
  MutantTableAlgebra<> m(TableAlgebra<>({"a", "b"}), "diag-top");
  auto r = represent(m, small_run());
  CHECK_FALSE(r.passed());
}
