#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "instance.hpp"
#include "transform.hpp"
#include "var.hpp"

namespace orbital {

/// All 2^|W| subsets of W, in bitmask order.
inline std::vector<VarSet> all_subsets(const VarSet& w) {
  if (w.size() > 20) throw Error("too many variables to enumerate subsets");
  std::vector<VarSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w.size()); ++mask) {
    std::vector<Var> picked;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) picked.push_back(w[i]);
    }
    out.emplace_back(std::move(picked));
  }
  return out;
}

/// All partial transformations with domain and range inside W: (|W|+1)^|W| of them.
inline std::vector<Transform> all_transforms(const VarSet& w) {
  std::size_t n = w.size();
  std::vector<Transform> out;
  std::vector<std::size_t> digit(n, 0);  // 0 = undefined, k = maps to w[k-1]
  while (true) {
    std::vector<Transform::value_type> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      if (digit[i] != 0) pairs.emplace_back(w[i], w[digit[i] - 1]);
    }
    out.emplace_back(std::move(pairs));
    std::size_t i = 0;
    while (i < n && ++digit[i] > n) digit[i++] = 0;
    if (i == n) break;
  }
  return out;
}

inline Var random_var(Rng& rng, std::uint32_t lo, std::uint32_t hi) {
  return Var(std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng));
}

inline VarSet random_subset(Rng& rng, const VarSet& w) {
  std::vector<Var> picked;
  for (Var x : w) {
    if (rng() & 1U) picked.push_back(x);
  }
  return VarSet(std::move(picked));
}

/// Each source in `sources` is left undefined with probability 1/(|targets|+1),
/// otherwise mapped to a uniform target.
inline Transform random_transform(Rng& rng, const VarSet& sources, const VarSet& targets) {
  std::vector<Transform::value_type> pairs;
  std::uniform_int_distribution<std::size_t> pick(0, targets.size());
  for (Var y : sources) {
    std::size_t k = pick(rng);
    if (k != 0) pairs.emplace_back(y, targets[k - 1]);
  }
  return Transform(std::move(pairs));
}

/// Random injective transformation from a subset of `sources` into `targets`.
inline Transform random_injective(Rng& rng, const VarSet& sources, const VarSet& targets) {
  std::vector<Var> free(targets.begin(), targets.end());
  std::shuffle(free.begin(), free.end(), rng);
  std::vector<Transform::value_type> pairs;
  std::size_t next = 0;
  for (Var y : sources) {
    if (next < free.size() && (rng() % 4) != 0) pairs.emplace_back(y, free[next++]);
  }
  return Transform(std::move(pairs));
}

/// Random folding with domain of definition `df`: a nonempty set of fixed
/// points B within df, every other variable of df sent into B.
inline Transform random_folding(Rng& rng, const VarSet& df) {
  if (df.empty()) return Transform{};
  std::vector<Var> vars(df.begin(), df.end());
  std::shuffle(vars.begin(), vars.end(), rng);
  std::size_t fixed = std::uniform_int_distribution<std::size_t>(1, vars.size())(rng);
  std::vector<Transform::value_type> pairs;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i < fixed) {
      pairs.emplace_back(vars[i], vars[i]);
    } else {
      std::size_t k = std::uniform_int_distribution<std::size_t>(0, fixed - 1)(rng);
      pairs.emplace_back(vars[i], vars[k]);
    }
  }
  return Transform(std::move(pairs));
}

/// {x -> x, y -> x}: the transformation written xx/xy.
inline Transform collapse(Var x, Var y) { return Transform{{x, x}, {y, x}}; }

/// {z -> y}: the transformation written y/z.
inline Transform rename_to(Var y, Var z) { return Transform{{z, y}}; }

}  // namespace orbital
