#include <catch2/catch_amalgamated.hpp>

#include "golden.hpp"
#include "orbital/expr.hpp"
#include "random_expr.hpp"

using namespace orbital;

namespace {

Var x(std::uint32_t i) { return Var(i); }

std::size_t error_offset(std::string_view src) {
  try {
    parse_expr(src);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error for " << src);
  return 0;
}

}  // namespace

TEST_CASE("parsing", "[expr]") {
  CHECK(*parse_expr("T1 JOIN DIAG(x1,x2)") == *Expr::join(Expr::table("T1"), Expr::diag(x(1), x(2))));
  CHECK(*parse_expr("T1.project{x1}") == *Expr::act(Expr::table("T1"), partial_identity({x(1)})));
  CHECK(*parse_expr("T1.rename{x3->x1}") == *Expr::act(Expr::table("T1"), Transform{{x(3), x(1)}}));
  CHECK(*parse_expr("A JOIN B JOIN C") ==
        *Expr::join(Expr::join(Expr::table("A"), Expr::table("B")), Expr::table("C")));
  CHECK(*parse_expr("A JOIN B.project{x2}") ==
        *Expr::join(Expr::table("A"), Expr::project(Expr::table("B"), {x(2)})));
  CHECK(*parse_expr("  TOP JOIN BOTTOM ") == *Expr::join(Expr::top(), Expr::bottom()));
}

TEST_CASE("parse errors carry the offset and the expected tokens", "[expr]") {
  try {
    parse_expr("T1 JOIN");
    FAIL("accepted a dangling JOIN");
  } catch (const ParseError& e) {
    CHECK(e.position() == 7);
    CHECK(e.found() == "end of input");
    CHECK(e.expected().count("a table name"));
    CHECK(e.expected().count("DIAG"));
  }
  CHECK(error_offset("T1.select{x1}") == 3);
  CHECK(error_offset("DIAG(x1 x2)") == 8);
  CHECK(error_offset("T.rename{x1->x2, x1->x3}") == 17);
  CHECK(error_offset("T.project{y1}") == 10);
  CHECK(error_offset("(A JOIN B") == 9);
  CHECK(error_offset("A $ B") == 2);
  CHECK(error_offset("") == 0);
}

TEST_CASE("printing round-trips", "[expr]") {
  CHECK(to_string(*parse_expr("A JOIN (B JOIN C)")) == "A JOIN (B JOIN C)");
  CHECK(to_string(*parse_expr("(A JOIN B).project{x1}")) == "(A JOIN B).project{x1}");
  CHECK(to_string(*parse_expr("A.rename{x2->x1,x1->x2}")) == "A.rename{x1->x2, x2->x1}");
  Rng rng(2024);
  std::vector<std::string> names{"R", "S", "T_1"};
  for (int i = 0; i < 500; ++i) {
    auto e = testing::random_expr(rng, names, 4);
    std::string text = to_string(*e);
    auto back = parse_expr(text);
    INFO(text);
    REQUIRE(*back == *e);
    REQUIRE(to_string(*back) == text);
  }
}

TEST_CASE("evaluation", "[expr]") {
  auto g = make_ground<std::string>({"a", "b"});
  TableEnv env;
  env.emplace("T1", Table<std::string>::from_rows(g, {x(1)}, {{"a"}}));
  env.emplace("T2", Table<std::string>::from_rows(g, {x(1), x(2)}, {{"a", "a"}, {"a", "b"}}));
  CHECK(eval(*parse_expr("TOP"), {}, g) == top(g));
  CHECK(eval(*parse_expr("BOTTOM JOIN T2"), env, g).is_empty());
  CHECK(eval(*parse_expr("T1 JOIN T2"), env, g) == natural_join(env.at("T1"), env.at("T2")));
  CHECK(eval(*parse_expr("T1 JOIN T2"), env, g) == env.at("T2"));
  CHECK_THROWS_AS(eval(*parse_expr("T3"), env, g), Error);
  auto other = make_ground<std::string>({"a"});
  CHECK_THROWS_AS(eval(*parse_expr("T1"), env, other), Error);
}

TEST_CASE("golden corpus", "[expr]") {
  std::filesystem::path dir = ORBITAL_TEST_DATA "/golden";
  auto env = testing::load_golden_env(dir);
  auto cases = testing::read_golden_cases(dir / "cases.txt");
  REQUIRE(cases.size() >= 15);
  for (auto const& c : cases) {
    INFO(c.expr);
    CHECK(table_csv(eval(*parse_expr(c.expr), env.tables, env.ground)) == c.csv);
  }
}
