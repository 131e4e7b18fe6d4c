// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   acceptance <path-to-orbital-cli> <test-data-dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "golden.hpp"
#include "orbital/orbital.hpp"
#include "random_expr.hpp"

using namespace orbital;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_command(const std::string& cmd) {
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string quoted(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Verdict axioms_on_table_algebras() {
  Verdict v;
  auto t0 = Clock::now();
  std::size_t cases = 0;
  for (auto ground : {std::vector<std::string>{"a"}, {"a", "b"}, {"a", "b", "c"}}) {
    TableAlgebra<> tab(ground);
    SampleConfig cfg;  // window 3, exhaustive schemas inside {x1,x2}, 10000 random cases
    auto elements = tab.exhaustive_elements(cfg);
    if (ground.size() == 2 && elements.size() != 23) v.fail("expected 23 distinct tables over {a,b}");
    for (auto const& r : check_all_axioms(tab, cfg)) {
      cases += r.cases;
      if (r.status != Status::Pass) v.fail("|G|=" + std::to_string(ground.size()) + " " + r.id + " " + status_name(r.status));
      if (r.cases < cfg.random_cases) v.fail(r.id + " ran fewer than " + std::to_string(cfg.random_cases) + " cases");
    }
  }
  double s = seconds_since(t0);
  if (s >= 60) v.fail("took " + fmt(s));
  if (v.ok) v.detail = "13 axioms x |G| in {1,2,3}, " + std::to_string(cases) + " cases, " + fmt(s);
  return v;
}

Verdict decomposition() {
  Verdict v;
  auto t0 = Clock::now();
  auto all = all_transforms(VarSet::initial_segment(4));
  for (auto const& f : all) {
    auto d = decompose(f);
    if (!is_folding(d.delta)) v.fail("delta not a folding for " + to_string(f));
    if (!(d.sigma.is_injective() && d.sigma.domain() == d.delta.range() && d.sigma.range() == f.range()))
      v.fail("sigma not a bijection rng(delta) -> rng(f) for " + to_string(f));
    if (!(d.pi == partial_identity(f.range()))) v.fail("pi is not pi_rng(f) for " + to_string(f));
    if (!(compose(d.pi, compose(d.sigma, d.delta)) == f)) v.fail("recomposition differs for " + to_string(f));
  }
  double s = seconds_since(t0);
  if (s >= 10) v.fail("took " + fmt(s));
  if (v.ok) v.detail = std::to_string(all.size()) + " transformations on x1..x4, " + fmt(s);
  return v;
}

Verdict folding_criteria() {
  Verdict v;
  auto t0 = Clock::now();
  auto all = all_transforms(VarSet::initial_segment(4));
  std::size_t foldings = 0;
  for (auto const& f : all) {
    bool a = is_folding(f), b = is_folding_by_range(f);
    if (a != b) v.fail("criteria disagree on " + to_string(f));
    foldings += a;
  }
  double s = seconds_since(t0);
  if (s >= 10) v.fail("took " + fmt(s));
  if (v.ok) v.detail = std::to_string(all.size()) + " transformations, " + std::to_string(foldings) + " foldings, " + fmt(s);
  return v;
}

Verdict derived_properties() {
  Verdict v;
  TableAlgebra<> tab({"a", "b"});
  SampleConfig cfg;
  std::size_t least = SIZE_MAX;
  for (auto const& r : check_all_derived(tab, cfg)) {
    least = std::min(least, r.applicable);
    if (r.status != Status::Pass) v.fail(r.id + " " + status_name(r.status));
    if (r.applicable < 100) v.fail(r.id + " had only " + std::to_string(r.applicable) + " applicable cases");
  }
  if (v.ok) v.detail = std::to_string(derived_ids.size()) + " properties, at least " + std::to_string(least) + " applicable cases each";
  return v;
}

Verdict mutants() {
  Verdict v;
  TableAlgebra<> base({"a", "b"});
  SampleConfig cfg;
  std::size_t caught = 0;
  for (auto const& info : mutant_catalog()) {
    MutantTableAlgebra<> m(base, info.id);
    auto r = check_axiom(m, info.target, cfg);
    bool replayed = r.counterexample && r.counterexample->replay && r.counterexample->replay().kind == Outcome::Fails;
    if (r.status == Status::Fail && replayed) {
      ++caught;
    } else {
      v.fail(std::string(info.id) + " not caught by " + std::string(info.target));
    }
  }
  if (caught != 13) v.fail(std::to_string(caught) + "/13 caught");
  if (v.ok) v.detail = "13/13 mutants caught by their target axiom, counterexamples replay";
  return v;
}

Verdict labeling_and_extent() {
  Verdict v;
  TableAlgebra<> tab({"a", "b"});
  SampleConfig cfg;
  auto alpha = singleton_labeling(tab);
  for (auto const& r : check_labeling(alpha, LabelLevel::Full, cfg)) {
    if (r.status != Status::Pass) v.fail(r.id + " " + status_name(r.status));
  }
  auto elements = tab.exhaustive_elements(cfg);
  for (auto const& u : elements) {
    if (!(extent(alpha, u) == u)) v.fail("extent differs from the identity at " + to_string(u));
  }
  EmbeddingScope<std::string, TableAlgebra<>> scope;
  scope.elements = elements;
  scope.transforms = all_transforms(cfg.window());
  scope.vars = cfg.window();
  for (auto const& r : check_embedding(alpha, scope)) {
    if (r.status != Status::Pass) v.fail(r.id + " " + status_name(r.status));
  }
  if (v.ok) v.detail = "L1-L4 pass; extent is the identity on " + std::to_string(elements.size()) + " tables; 6 homomorphism checks pass";
  return v;
}

Verdict representation() {
  Verdict v;
  auto t0 = Clock::now();
  std::string summary;
  for (auto ground : {std::vector<std::string>{"a"}, {"a", "b"}}) {
    TableAlgebra<> tab(ground);
    RepresentConfig cfg;  // depth 2, default caps
    auto r = represent(tab, cfg);
    for (auto const& c : r.checks) {
      if (c.status != Status::Pass) v.fail("|G|=" + std::to_string(ground.size()) + " " + c.id + " " + status_name(c.status));
    }
    summary += (summary.empty() ? "" : "; ") + std::string("|G|=") + std::to_string(ground.size()) + ": |H|=" +
               std::to_string(r.strata.back()) + ", " + std::to_string(r.checks.size()) + " checks, " +
               std::to_string(r.reachable) + " reachable elements";
  }
  double s = seconds_since(t0);
  if (s >= 300) v.fail("took " + fmt(s));
  if (v.ok) v.detail = summary + ", " + fmt(s);
  return v;
}

Verdict cli_round_trip(const std::string& cli, const std::filesystem::path& data) {
  Verdict v;
  Rng rng(8);
  auto golden_dir = data / "golden";
  auto env = testing::load_golden_env(golden_dir);
  std::vector<std::string> names;
  for (auto const& [n, t] : env.tables) names.push_back(n);
  for (int i = 0; i < 1000; ++i) {
    auto e = testing::random_expr(rng, names, 4);
    std::string text = to_string(*e);
    auto back = parse_expr(text);
    if (!(*back == *e) || to_string(*back) != text) {
      v.fail("round trip changed " + text);
      continue;
    }
    if (!(eval(*back, env.tables, env.ground) == eval(*e, env.tables, env.ground))) v.fail("evaluation changed for " + text);
  }

  auto cases = testing::read_golden_cases(golden_dir / "cases.txt");
  std::string files;
  for (auto const* f : {"R.csv", "S.csv", "db.json"}) files += " " + quoted((golden_dir / f).string());
  for (auto const& c : cases) {
    Table<std::string> direct = eval(*parse_expr(c.expr), env.tables, env.ground);
    if (table_csv(direct) != c.csv) v.fail("library result differs from the corpus for " + c.expr);
    auto csv = run_command(quoted(cli) + " eval " + quoted(c.expr) + " --format csv --tables" + files);
    if (csv.status != 0 || csv.out != table_csv(direct)) v.fail("CLI csv differs for " + c.expr);
    auto js = run_command(quoted(cli) + " eval " + quoted(c.expr) + " --format json --tables" + files);
    try {
      if (js.status != 0 || nlohmann::json::parse(js.out).at("table") != table_json(direct)) v.fail("CLI json differs for " + c.expr);
    } catch (const std::exception&) {
      v.fail("CLI json unreadable for " + c.expr);
    }
  }
  if (v.ok) v.detail = "1000 random round trips; " + std::to_string(cases.size()) + " corpus queries match through the CLI";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <orbital-cli> <test-data-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path data = argv[2];
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"axioms hold on Tab(G) for |G| = 1, 2, 3", axioms_on_table_algebras},
      {"decomposition into folding, bijection, partial identity", decomposition},
      {"the two folding criteria agree", folding_criteria},
      {"derived properties on Tab({a,b})", derived_properties},
      {"mutation sensitivity", mutants},
      {"singleton labeling, extent and embedding", labeling_and_extent},
      {"representation pipeline at depth 2", representation},
      {"expression round trip and golden corpus", [&] { return cli_round_trip(cli, data); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    std::cout << (v.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << v.detail << std::endl;
    failed += !v.ok;
  }
  return failed == 0 ? 0 : 1;
}
