// A short tour of the library: tables and their operations, an expression,
// a few axiom checks and the representation pipeline on a tiny instance.

#include <iostream>

#include "orbital/orbital.hpp"

using namespace orbital;

int main() {
  auto g = make_ground<std::string>({"alice", "bob", "carol", "dave"});
  Var x1(1), x2(2), x3(3);

  // parent(x1, x2): x1 is a parent of x2.
  auto parent = Table<std::string>::from_rows(g, {x1, x2}, {{"alice", "bob"}, {"bob", "carol"}, {"carol", "dave"}});

  // Grandparents: shift parent to (x2, x3), join, forget the middle column.
  auto shifted = act_table(parent, Transform{{x2, x1}, {x3, x2}});
  auto grand = act_table(natural_join(parent, shifted), partial_identity({x1, x3}));
  std::cout << "grandparent(x1, x3):\n" << table_grid(grand) << "\n";

  // The same query as an expression.
  TableEnv env{{"parent", parent}};
  auto e = parse_expr("(parent JOIN parent.rename{x2->x1, x3->x2}).project{x1,x3}");
  std::cout << to_string(*e) << "\n" << table_grid(eval(*e, env, g)) << "\n";

  // Decomposing a transformation into folding, bijection and partial identity.
  auto d = decompose(parse_transform("{x1->x3, x2->x3, x4->x1}"));
  std::cout << "delta " << d.delta << ", sigma " << d.sigma << ", pi " << d.pi << "\n\n";

  // Axioms on Tab({a,b}) and on a deliberately broken variant.
  SampleConfig cfg;
  cfg.random_cases = 500;
  TableAlgebra<> tab({"a", "b"});
  for (auto const* id : {"A7", "A10"}) std::cout << check_axiom(tab, id, cfg) << "\n";
  MutantTableAlgebra<> broken(tab, "diag-top");
  std::cout << check_axiom(broken, "A10", cfg) << "\n\n";

  // The term construction on Tab({a}).
  RepresentConfig rc;
  auto rep = represent(TableAlgebra<>({"a"}), rc);
  std::cout << "H strata:";
  for (auto n : rep.strata) std::cout << " " << n;
  std::cout << "; " << rep.checks.size() << " checks, " << (rep.passed() ? "all pass" : "some fail") << "\n";
  return rep.passed() ? 0 : 1;
}
