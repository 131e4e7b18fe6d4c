#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "orbital/instance.hpp"
#include "orbital/labeling.hpp"
#include "orbital/sampling.hpp"
#include "orbital/table.hpp"
#include "orbital/table_io.hpp"
#include "orbital/tuple.hpp"

using namespace orbital;

namespace {

using Tup = NamedTuple<std::string>;
using Tab = Table<std::string>;

Var x(std::uint32_t i) { return Var(i); }

const auto G2 = make_ground<std::string>({"a", "b"});

Tab rows(std::initializer_list<Tup> ts) { return Tab::from_tuples(G2, std::vector<Tup>(ts)); }

// The join read literally: all tuples over the union schema whose restrictions
// lie in both operands.
Tab naive_join(const Tab& t1, const Tab& t2) {
  if (t1.is_empty() || t2.is_empty()) return bottom(t1.ground());
  VarSet s1 = t1.schema().vars(), s2 = t2.schema().vars();
  auto r1 = t1.tuples(), r2 = t2.tuples();
  std::set<Tup> a(r1.begin(), r1.end()), b(r2.begin(), r2.end());
  std::vector<Tup> keep;
  for (auto const& t : total_tuples(*t1.ground(), set_union(s1, s2))) {
    if (a.count(restrict(t, s1)) && b.count(restrict(t, s2))) keep.push_back(t);
  }
  return Tab::from_tuples(t1.ground(), keep);
}

bool naive_leq(const Tab& t1, const Tab& t2) {
  if (t1.is_empty()) return true;
  if (t2.is_empty()) return false;
  if (!t2.schema().vars().subset_of(t1.schema().vars())) return false;
  for (auto const& t : t1.tuples()) {
    if (!t2.contains(restrict(t, t2.schema().vars()))) return false;
  }
  return true;
}

std::vector<Tab> all_small_tables(const TableAlgebra<>& tab) {
  SampleConfig cfg;
  return tab.exhaustive_elements(cfg);
}

}  // namespace

TEST_CASE("tuple action, extension and merge", "[tuples]") {
  Tup t{{x(1), "a"}, {x(2), "b"}};
  CHECK(act(t, Transform{{x(3), x(1)}}) == Tup{{x(3), "a"}});
  CHECK(act(t, partial_identity(t.domain())) == t);
  CHECK(act(Tup{}, Transform{{x(1), x(2)}}) == Tup{});

  CHECK(extends(Tup{{x(1), "a"}}, t));
  CHECK_FALSE(extends(Tup{{x(1), "a"}}, Tup{{x(1), "b"}}));
  CHECK(extends(Tup{}, t));

  CHECK(merge(Tup{{x(1), "a"}}, Tup{{x(2), "b"}}) == t);
  CHECK(merge(Tup{{x(1), "a"}}, t) == t);
  CHECK_FALSE(merge(Tup{{x(1), "a"}}, Tup{{x(1), "b"}}).has_value());

  CHECK(to_string(t) == "{x1:a, x2:b}");
  CHECK(parse_tuple("{x1:a, x2:b}") == t);
  CHECK(parse_tuple("{}") == Tup{});
  CHECK_THROWS_AS(parse_tuple("{x1:a, x1:b}"), Error);
}

TEST_CASE("tuple laws on random samples", "[tuples]") {
  Rng rng(11);
  auto w = VarSet::initial_segment(4);
  const auto& g = *G2;
  for (int i = 0; i < 2000; ++i) {
    auto t = random_tuple(rng, g, w);
    auto lam = random_transform(rng, w, w);
    auto mu = random_transform(rng, w, w);
    REQUIRE(act(act(t, lam), mu) == act(t, compose(lam, mu)));
    REQUIRE(act(t, lam).domain() == preimage(lam, t.domain()));

    auto u = random_tuple(rng, g, w), v = random_tuple(rng, g, w);
    auto uv = merge(u, v), vu = merge(v, u);
    REQUIRE(uv.has_value() == vu.has_value());
    if (uv) {
      REQUIRE(*uv == *vu);
      REQUIRE(uv->domain() == set_union(u.domain(), v.domain()));
      REQUIRE(extends(u, *uv));
      REQUIRE(extends(v, *uv));
      if (auto uvw = merge(*uv, t); uvw) {
        auto vt = merge(v, t);
        REQUIRE(vt.has_value());
        REQUIRE(merge(u, *vt) == uvw);
      }
    }
    REQUIRE(merge(u, u) == u);
    REQUIRE(extends(u, u));
    if (extends(u, v) && extends(v, u)) REQUIRE(u == v);
    if (extends(u, v) && extends(v, t)) REQUIRE(extends(u, t));
  }
}

TEST_CASE("schemas of tables", "[tables]") {
  CHECK(rows({{{x(1), "a"}}}).schema() == Schema(VarSet{x(1)}));
  CHECK(bottom(G2).schema().is_all());
  CHECK(top(G2).schema() == Schema(VarSet{}));
  CHECK(top(G2).size() == 1);
  CHECK_THROWS_AS(Tab::from_tuples(G2, {Tup{{x(1), "a"}}, Tup{{x(2), "a"}}}), Error);
  CHECK_THROWS_AS(Tab::from_tuples(G2, {Tup{{x(1), "c"}}}), Error);
}

TEST_CASE("natural join", "[tables]") {
  auto t1 = rows({{{x(1), "a"}}});
  auto t2 = rows({{{x(1), "a"}, {x(2), "a"}}, {{x(1), "a"}, {x(2), "b"}}});
  CHECK(natural_join(t1, t2) == t2);
  CHECK(natural_join(t2, top(G2)) == t2);
  CHECK(natural_join(bottom(G2), t2).is_empty());
  CHECK(natural_join(t2, bottom(G2)).is_empty());

  auto other = make_ground<std::string>({"a", "b", "c"});
  CHECK_THROWS_AS(natural_join(t1, top(other)), Error);

  TableAlgebra<> tab(G2);
  auto all = all_small_tables(tab);
  REQUIRE(all.size() == 23);
  for (auto const& a : all) {
    for (auto const& b : all) REQUIRE(natural_join(a, b) == naive_join(a, b));
  }
}

TEST_CASE("join against the oracle on wider random tables", "[tables]") {
  auto g3 = make_ground<std::string>({"a", "b", "c"});
  TableAlgebra<> tab(g3);
  SampleConfig cfg;
  cfg.var_window = 4;
  Rng rng(5);
  for (int i = 0; i < 400; ++i) {
    auto a = tab.random_element(cfg, rng), b = tab.random_element(cfg, rng), c = tab.random_element(cfg, rng);
    REQUIRE(natural_join(a, b) == naive_join(a, b));
    REQUIRE(natural_join(a, b) == natural_join(b, a));
    REQUIRE(natural_join(natural_join(a, b), c) == natural_join(a, natural_join(b, c)));
    REQUIRE(natural_join(a, a) == a);
  }
}

TEST_CASE("order by projection agrees with join idempotence", "[tables]") {
  auto t1 = rows({{{x(1), "a"}, {x(2), "b"}}});
  auto t2 = rows({{{x(1), "a"}}});
  CHECK(leq(t1, t2));
  CHECK_FALSE(leq(t2, t1));

  TableAlgebra<> tab(G2);
  auto all = all_small_tables(tab);
  for (auto const& a : all) {
    REQUIRE(leq(bottom(G2), a));
    REQUIRE(leq(a, top(G2)));
    for (auto const& b : all) {
      bool by_join = natural_join(a, b) == a;
      REQUIRE(leq(a, b) == by_join);
      REQUIRE(naive_leq(a, b) == by_join);
    }
  }
}

TEST_CASE("right multiplication", "[tables]") {
  auto t = rows({{{x(1), "a"}, {x(2), "b"}}});
  CHECK(act_table(t, Transform{{x(3), x(1)}}) == rows({{{x(3), "a"}}}));
  CHECK(act_table(bottom(G2), Transform{{x(3), x(1)}}).is_empty());
  CHECK(act_table(t, partial_identity(t.schema().vars())) == t);

  TableAlgebra<> tab(G2);
  auto all = all_small_tables(tab);
  auto lams = all_transforms(VarSet::initial_segment(3));
  Rng rng(3);
  for (auto const& u : all) {
    for (int i = 0; i < 40; ++i) {
      auto const& lam = lams[rng() % lams.size()];
      auto const& mu = lams[rng() % lams.size()];
      auto got = act_table(u, lam);
      std::vector<Tup> expect;
      for (auto const& r : u.tuples()) expect.push_back(act(r, lam));
      REQUIRE(got == (u.is_empty() ? bottom(G2) : Tab::from_tuples(G2, expect)));
      if (!u.is_empty()) REQUIRE(got.schema() == Schema(preimage(lam, u.schema().vars())));
      REQUIRE(act_table(got, mu) == act_table(u, compose(lam, mu)));
    }
  }
}

TEST_CASE("diagonals", "[tables]") {
  CHECK(diagonal(x(1), x(2), G2) == rows({{{x(1), "a"}, {x(2), "a"}}, {{x(1), "b"}, {x(2), "b"}}}));
  CHECK(diagonal(x(1), x(1), G2) == rows({{{x(1), "a"}}, {{x(1), "b"}}}));
  for (std::uint32_t i = 1; i <= 3; ++i) {
    for (std::uint32_t j = 1; j <= 3; ++j) {
      Transform xx_xy{{x(i), x(i)}, {x(j), x(i)}};
      REQUIRE(diagonal(x(i), x(j), G2) == act_table(diagonal(x(i), x(i), G2), xx_xy));
      REQUIRE(diagonal(x(i), x(j), G2) == diagonal(x(j), x(i), G2));
    }
  }
}

TEST_CASE("compact text form", "[tables]") {
  TableAlgebra<> tab(G2);
  for (auto const& t : all_small_tables(tab)) REQUIRE(parse_table(to_string(t), G2) == t);
  CHECK(to_string(bottom(G2)) == "[ALL]{}");
  CHECK(to_string(rows({{{x(1), "a"}, {x(2), "b"}}})) == "[x1,x2]{(a,b)}");
}

TEST_CASE("CSV and JSON ingestion", "[table_io]") {
  auto raw = read_csv("x2,x1\nb,a\n\"b\",b\n");
  REQUIRE(raw.schema);
  CHECK(*raw.schema == VarSet{x(1), x(2)});
  auto t = build_table(raw, G2);
  CHECK(t == rows({{{x(1), "a"}, {x(2), "b"}}, {{x(1), "b"}, {x(2), "b"}}}));
  CHECK(read_csv(table_csv(t)).rows == raw.rows);

  CHECK_FALSE(read_csv("ALL\n").schema.has_value());
  CHECK_FALSE(read_csv("x1\n").schema.has_value());
  auto unit = read_csv("\n\n");
  REQUIRE(unit.schema);
  CHECK(build_table(unit, G2) == top(G2));
  CHECK(table_csv(bottom(G2)) == "ALL\n");

  CHECK_THROWS_AS(read_csv("x1,x2\na\n"), Error);
  CHECK_THROWS_AS(read_csv("x1,x1\na,a\n"), Error);
  CHECK_THROWS_AS(read_csv("x1\n\"a\n"), Error);
  CHECK_THROWS_AS(build_table(read_csv("x1\nc\n"), G2), Error);

  auto j = nlohmann::json::parse(R"({"schema":["x1","x2"],"rows":[["a","b"]]})");
  CHECK(build_table(read_json_table(j), G2) == rows({{{x(1), "a"}, {x(2), "b"}}}));
  CHECK_FALSE(read_json_table(nlohmann::json::parse(R"({"schema":"ALL"})")).schema.has_value());
  CHECK(table_json(t)["schema"] == nlohmann::json::array({"x1", "x2"}));
  CHECK(table_json(bottom(G2))["schema"] == "ALL");
  CHECK(build_table(read_json_table(table_json(t)), G2) == t);

  auto multi = read_json_tables(nlohmann::json::parse(R"({"ground":["a","b","c"],"tables":{"R":{"schema":["x1"],"rows":[["c"]]}}})"), "f");
  REQUIRE(multi.ground);
  CHECK(multi.ground->size() == 3);
  REQUIRE(multi.tables.size() == 1);
  CHECK(multi.tables[0].first == "R");
}
