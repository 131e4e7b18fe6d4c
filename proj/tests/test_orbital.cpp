#include <catch2/catch_amalgamated.hpp>

#include "orbital/axioms.hpp"
#include "orbital/mutants.hpp"
#include "orbital/properties.hpp"

using namespace orbital;

namespace {

Var x(std::uint32_t i) { return Var(i); }

SampleConfig quick() {
  SampleConfig cfg;
  cfg.random_cases = 800;
  return cfg;
}

const CheckReport& by_id(const std::vector<CheckReport>& rs, std::string_view id) {
  for (auto const& r : rs) {
    if (r.id == id) return r;
  }
  FAIL("no report " << id);
  return rs.front();
}

}  // namespace

TEST_CASE("table algebras satisfy every axiom", "[axioms]") {
  for (auto ground : {std::vector<std::string>{"a"}, {"a", "b"}, {"a", "b", "c"}}) {
    TableAlgebra<> tab(ground);
    auto reports = check_all_axioms(tab, quick());
    REQUIRE(reports.size() == 13);
    for (auto const& r : reports) {
      INFO(r);
      CHECK(r.status == Status::Pass);
      CHECK(r.applicable > 0);
      CHECK_FALSE(r.counterexample.has_value());
    }
  }
}

TEST_CASE("exhaustive element set", "[axioms]") {
  SampleConfig cfg;
  CHECK(TableAlgebra<>({"a"}).exhaustive_elements(cfg).size() == 1 + 1 + 1 + 1 + 1);
  CHECK(TableAlgebra<>({"a", "b"}).exhaustive_elements(cfg).size() == 23);
  // 1 (empty) + 1 ({<>}) + 7 + 7 + 511
  CHECK(TableAlgebra<>({"a", "b", "c"}).exhaustive_elements(cfg).size() == 527);
  cfg.element_budget = 100;
  CHECK_THROWS_AS(TableAlgebra<>({"a", "b", "c"}).exhaustive_elements(cfg), Error);
}

TEST_CASE("axiom reports are deterministic per seed", "[axioms]") {
  MutantTableAlgebra<> m(TableAlgebra<>({"a", "b"}), "act-twice");
  auto a = check_axiom(m, "A7", quick());
  auto b = check_axiom(m, "A7", quick());
  REQUIRE(a.counterexample);
  REQUIRE(b.counterexample);
  CHECK(a.counterexample->inputs == b.counterexample->inputs);
  CHECK(a.cases == b.cases);
  CHECK_THROWS_AS(check_axiom(TableAlgebra<>({"a"}), "A14", quick()), Error);
}

TEST_CASE("every mutant fails the axiom it targets", "[mutants]") {
  TableAlgebra<> base({"a", "b"});
  REQUIRE(mutant_catalog().size() == 13);
  std::set<std::string_view> targets;
  for (auto const& info : mutant_catalog()) {
    MutantTableAlgebra<> m(base, info.id);
    auto r = check_axiom(m, info.target, quick());
    INFO(info.id << " -> " << r);
    REQUIRE(r.status == Status::Fail);
    REQUIRE(r.counterexample);
    REQUIRE(r.counterexample->replay);
    CHECK(r.counterexample->replay().kind == Outcome::Fails);
    targets.insert(info.target);
  }
  CHECK(targets.size() == 13);
  CHECK_THROWS_AS(mutant_info("no-such-mutant"), Error);
}

TEST_CASE("diag-top is caught by A10 with a two-variable witness", "[mutants]") {
  MutantTableAlgebra<> m(TableAlgebra<>({"a", "b"}), "diag-top");
  auto r = check_axiom(m, "A10", quick());
  REQUIRE(r.status == Status::Fail);
  CHECK(m.diag(x(1), x(2)) == m.one());
  CHECK(m.diag(x(1), x(1)) == diagonal(x(1), x(1), m.ground()));
}

TEST_CASE("derived properties hold on Tab({a,b})", "[properties]") {
  TableAlgebra<> tab({"a", "b"});
  auto reports = check_all_derived(tab, quick());
  REQUIRE(reports.size() == derived_ids.size());
  for (auto const& r : reports) {
    INFO(r);
    CHECK(r.status == Status::Pass);
    CHECK(r.applicable >= 100);
  }
}

TEST_CASE("the hypotheses of the meet distribution law", "[properties]") {
  TableAlgebra<> tab({"a", "b"});
  DerivedOptions injective_lifted;
  injective_lifted.act_meet_require_injective = false;
  CHECK(check_derived(tab, "act.meet", quick(), injective_lifted).status == Status::Pass);

  DerivedOptions both_lifted;
  both_lifted.act_meet_require_injective = false;
  both_lifted.act_meet_require_range_cover = false;
  auto r = check_derived(tab, "act.meet", quick(), both_lifted);
  REQUIRE(r.status == Status::Fail);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->replay().kind == Outcome::Fails);

  // One-to-one lambda that forgets a column: the meet of the images is not
  // the image of the meet.
  auto g = tab.ground();
  auto v1 = Table<std::string>::from_rows(g, {x(1), x(2)}, {{"a", "a"}});
  auto v2 = Table<std::string>::from_rows(g, {x(1), x(2)}, {{"b", "a"}});
  Transform keep2 = partial_identity({x(2)});
  CHECK(tab.act(tab.meet(v1, v2), keep2).is_empty());
  CHECK_FALSE(tab.meet(tab.act(v1, keep2), tab.act(v2, keep2)).is_empty());
  // Duplicating a column while covering both is harmless.
  Transform dup{{x(1), x(1)}, {x(2), x(2)}, {x(3), x(1)}};
  auto w1 = Table<std::string>::from_rows(g, {x(1)}, {{"a"}, {"b"}});
  CHECK(tab.act(tab.meet(w1, v2), dup) == tab.meet(tab.act(w1, dup), tab.act(v2, dup)));
}

TEST_CASE("delta-diagonals", "[properties]") {
  TableAlgebra<> tab({"a", "b"});
  auto g = tab.ground();
  CHECK(e_diag(tab, Transform{}) == tab.one());
  CHECK(e_diag(tab, partial_identity({x(1)})) == diagonal(x(1), x(1), g));
  auto e = e_diag(tab, Transform{{x(1), x(1)}, {x(2), x(1)}});
  CHECK(e == Table<std::string>::from_rows(g, {x(1), x(2)}, {{"a", "a"}, {"b", "b"}}));
  CHECK_THROWS_AS(e_diag(tab, Transform{{x(1), x(2)}, {x(2), x(1)}}), Error);
}

TEST_CASE("derived checks catch a broken instance", "[properties]") {
  MutantTableAlgebra<> m(TableAlgebra<>({"a", "b"}), "diag-top");
  auto reports = check_all_derived(m, quick());
  CHECK(by_id(reports, "dom.diag").status == Status::Fail);
}
