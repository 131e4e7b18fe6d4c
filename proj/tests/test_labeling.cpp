#include <catch2/catch_amalgamated.hpp>

#include "orbital/labeling.hpp"
#include "orbital/sampling.hpp"

using namespace orbital;

namespace {

using Tup = NamedTuple<std::string>;
using Tab = Table<std::string>;
using Lab = Labeling<std::string, TableAlgebra<>>;

Var x(std::uint32_t i) { return Var(i); }

SampleConfig quick() {
  SampleConfig cfg;
  cfg.random_cases = 500;
  return cfg;
}

Status status_of(const std::vector<CheckReport>& rs, std::string_view id) {
  for (auto const& r : rs) {
    if (r.id == id) return r.status;
  }
  FAIL("no report " << id);
  return Status::Fail;
}

// Tab({a,b}) seen through the ground set {a, a2, b}, where a2 behaves as a.
Lab duplicated(const TableAlgebra<>& tab) {
  auto g3 = make_ground<std::string>({"a", "a2", "b"});
  return Lab(tab, g3, [g = tab.ground()](const Tup& t) {
    std::vector<Tup::value_type> e;
    for (auto const& [v, atom] : t) e.emplace_back(v, atom == "a2" ? "a" : atom);
    return Tab::from_tuples(g, {Tup(e)});
  });
}

}  // namespace

TEST_CASE("the singleton labeling is a tuple labeling", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto alpha = singleton_labeling(tab);
  auto reports = check_labeling(alpha, LabelLevel::Full, quick());
  REQUIRE(reports.size() == 4);
  for (auto const& r : reports) {
    INFO(r);
    CHECK(r.status == Status::Pass);
  }
  CHECK(check_labeling(alpha, LabelLevel::Quasi, quick()).size() == 3);
}

TEST_CASE("the constant labeling breaks L1 and L3", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto c = constant_labeling<std::string>(tab, tab.ground(), tab.one());
  auto reports = check_labeling(c, LabelLevel::Full, quick());
  CHECK(status_of(reports, "L1") == Status::Fail);
  CHECK(status_of(reports, "L3") == Status::Fail);
  CHECK(c(Tup{}) == tab.one());
  CHECK(tab.dom(c(Tup{{x(1), "a"}})) != Schema(VarSet{x(1)}));
}

TEST_CASE("witness search beyond the caps is reported, not passed", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto alpha = singleton_labeling(tab);
  LabelingCaps caps;
  caps.max_ground = 1;
  CHECK(status_of(check_labeling(alpha, LabelLevel::Full, quick(), caps), "L3") == Status::Capped);
}

TEST_CASE("extent of the singleton labeling is the identity", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto alpha = singleton_labeling(tab);
  for (auto const& u : tab.exhaustive_elements(quick())) REQUIRE(extent(alpha, u) == u);
  CHECK(extent(alpha, tab.zero()).is_empty());
  CHECK(extent(alpha, tab.one()) == top(tab.ground()));
  CHECK(extent(alpha, tab.diag(x(1), x(2))) == diagonal(x(1), x(2), tab.ground()));
}

TEST_CASE("extent is an embedding for the singleton labeling", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto alpha = singleton_labeling(tab);
  EmbeddingScope<std::string, TableAlgebra<>> scope;
  scope.elements = tab.exhaustive_elements(quick());
  scope.transforms = all_transforms(VarSet::initial_segment(3));
  scope.vars = VarSet::initial_segment(3);
  auto reports = check_embedding(alpha, scope);
  REQUIRE(reports.size() == 6);
  for (auto const& r : reports) {
    INFO(r);
    CHECK(r.status == Status::Pass);
  }
}

TEST_CASE("one inclusion of the action law holds for any labeling", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto alpha = duplicated(tab);
  auto lams = all_transforms(VarSet::initial_segment(2));
  for (auto const& u : tab.exhaustive_elements(quick())) {
    for (auto const& lam : lams) {
      auto lhs = act_table(extent(alpha, u), lam);
      auto rhs = extent(alpha, tab.act(u, lam));
      for (auto const& t : lhs.tuples()) REQUIRE(rhs.contains(t));
    }
  }
}

TEST_CASE("the quotient of the singleton labeling is equality", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto q = quotient(singleton_labeling(tab));
  CHECK(q.relation.class_count() == 2);
  CHECK(*q.representatives == *tab.ground());
  for (std::size_t i = 0; i < 2; ++i) CHECK(q.relation.same(i, i));
  CHECK_FALSE(q.relation.same(0, 1));
  for (auto const& r : q.checks) {
    INFO(r);
    CHECK(r.status == Status::Pass);
  }
}

TEST_CASE("the quotient merges duplicated atoms and repairs L4", "[labeling]") {
  TableAlgebra<> tab({"a", "b"});
  auto alpha = duplicated(tab);
  CHECK(status_of(check_labeling(alpha, LabelLevel::Full, quick()), "L4") == Status::Fail);
  for (auto const& r : check_labeling(alpha, LabelLevel::Quasi, quick())) CHECK(r.status == Status::Pass);

  auto q = quotient(alpha);
  CHECK(q.relation.class_count() == 2);
  CHECK(q.relation.same(0, 1));
  CHECK_FALSE(q.relation.same(0, 2));
  CHECK(q.representatives->size() == 2);
  CHECK(q.representative_of == std::vector<std::size_t>{0, 0, 2});
  for (auto const& r : q.checks) CHECK(r.status == Status::Pass);
  REQUIRE(q.alpha_bar);
  for (auto const& r : check_labeling(*q.alpha_bar, LabelLevel::Full, quick())) {
    INFO(r);
    CHECK(r.status == Status::Pass);
  }
}

TEST_CASE("exhaustive tuple enumeration", "[labeling]") {
  auto g = make_ground<std::string>({"a", "b"});
  CHECK(total_tuples(*g, VarSet{x(1), x(2)}).size() == 4);
  CHECK(total_tuples(*g, VarSet{}).size() == 1);
  // every partial tuple inside {x1,x2}: 1 + 2 + 2 + 4
  CHECK(all_tuples(*g, VarSet{x(1), x(2)}).size() == 9);
  CHECK(power_or_cap(2, 70, 1000) > 999);
}
