#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "orbital/expr.hpp"
#include "orbital/table_io.hpp"

namespace orbital::testing {

struct GoldenCase {
  std::string expr;
  std::string csv;  // expected output of table_csv
};

/// Blocks of "== EXPR" followed by the expected CSV lines.
inline std::vector<GoldenCase> read_golden_cases(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read " + file.string());
  std::vector<GoldenCase> out;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("== ", 0) == 0) {
      out.push_back({line.substr(3), {}});
    } else if (!out.empty()) {
      out.back().csv += line + "\n";
    }
  }
  return out;
}

struct GoldenEnv {
  GroundPtr<std::string> ground;
  TableEnv tables;
};

/// The corpus tables: R.csv, S.csv and db.json (which fixes the ground set).
inline GoldenEnv load_golden_env(const std::filesystem::path& dir) {
  GoldenEnv env;
  std::vector<std::pair<std::string, RawTable>> raws;
  for (auto const* name : {"R.csv", "S.csv", "db.json"}) {
    auto tf = load_table_file(dir / name);
    if (tf.ground) env.ground = make_ground(*tf.ground);
    for (auto& t : tf.tables) raws.push_back(std::move(t));
  }
  if (!env.ground) throw Error("db.json must give the ground set");
  for (auto& [n, r] : raws) env.tables.emplace(n, build_table(r, env.ground));
  return env;
}

}  // namespace orbital::testing
