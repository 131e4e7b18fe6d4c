#pragma once

#include <random>
#include <string>
#include <vector>

#include "orbital/expr.hpp"
#include "orbital/sampling.hpp"

namespace orbital::testing {

/// Random expression trees over the given table names, depth at most `depth`.
inline Expr::Ptr random_expr(Rng& rng, const std::vector<std::string>& names, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  VarSet w = VarSet::initial_segment(4);
  if (depth <= 0 || pick(4) == 0) {
    switch (pick(6)) {
      case 0: return Expr::diag(random_var(rng, 1, 4), random_var(rng, 1, 4));
      case 1: return Expr::top();
      case 2: return Expr::bottom();
      default: return Expr::table(names[static_cast<std::size_t>(pick(static_cast<int>(names.size())))]);
    }
  }
  switch (pick(3)) {
    case 0: return Expr::join(random_expr(rng, names, depth - 1), random_expr(rng, names, depth - 1));
    case 1: return Expr::project(random_expr(rng, names, depth - 1), random_subset(rng, w));
    default: return Expr::act(random_expr(rng, names, depth - 1), random_transform(rng, w, w));
  }
}

}  // namespace orbital::testing
