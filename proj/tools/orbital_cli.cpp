#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbital/orbital.hpp"

using namespace orbital;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kVacuous = 3 };

struct UsageError : Error {
  using Error::Error;
};

struct Common {
  std::string ground = "a,b";
  std::size_t window = 3;
  std::uint64_t seed = 1;
  std::size_t cases = 10000;
  std::string mutate;
  std::string format = "text";
  std::vector<std::string> caps;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(detail::trim(cur));
  return out;
}

GroundPtr<std::string> parse_ground(const std::string& text) {
  std::vector<std::string> atoms;
  std::set<std::string> seen;
  for (auto& a : split(text, ',')) {
    if (a.empty()) throw UsageError("empty atom in --ground '" + text + "'");
    if (!seen.insert(a).second) throw UsageError("atom '" + a + "' listed twice in --ground");
    atoms.push_back(a);
  }
  if (atoms.empty()) throw UsageError("--ground needs at least one atom");
  return make_ground(std::move(atoms));
}

/// key=value pairs from --caps, restricted to `known`.
std::map<std::string, std::size_t> parse_caps(const std::vector<std::string>& items, const std::set<std::string>& known) {
  std::map<std::string, std::size_t> out;
  for (auto const& item : items) {
    for (auto const& kv : split(item, ',')) {
      auto eq = kv.find('=');
      std::string key = kv.substr(0, eq);
      if (eq == std::string::npos || !known.count(key)) {
        std::string list;
        for (auto const& k : known) list += (list.empty() ? "" : ", ") + k;
        throw UsageError("unknown cap '" + kv + "'; expected key=value with key in: " + list);
      }
      try {
        out[key] = std::stoul(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("cap '" + key + "' needs a number");
      }
    }
  }
  return out;
}

SampleConfig sample_config(const Common& c) {
  SampleConfig cfg;
  cfg.var_window = c.window;
  cfg.seed = c.seed;
  cfg.random_cases = c.cases;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

/// Runs f on Tab(G) or on the requested mutant of it.
template <class F>
int with_instance(const Common& c, F&& f) {
  TableAlgebra<> tab(parse_ground(c.ground));
  if (c.mutate.empty()) return f(tab);
  try {
    mutant_info(c.mutate);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  MutantTableAlgebra<> m(tab, c.mutate);
  return f(m);
}

int verdict(const std::vector<CheckReport>& reports) {
  bool incomplete = reports.empty();
  for (auto const& r : reports) {
    if (r.status == Status::Fail) return kFail;
    if (r.status != Status::Pass) incomplete = true;
  }
  return incomplete ? kVacuous : kPass;
}

json summary(const std::vector<CheckReport>& reports) {
  std::map<std::string, std::size_t> n;
  for (auto const& r : reports) ++n[status_name(r.status)];
  return n;
}

int emit(const Common& c, const std::string& command, const std::vector<CheckReport>& reports, json extra = json::object()) {
  int code = verdict(reports);
  if (c.format == "json") {
    json j = std::move(extra);
    j["command"] = command;
    j["reports"] = json::array();
    for (auto const& r : reports) j["reports"].push_back(to_json(r));
    j["summary"] = summary(reports);
    j["exit"] = code;
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto const& r : reports) std::cout << r << "\n";
    std::size_t pass = 0;
    for (auto const& r : reports) pass += r.passed();
    std::cout << pass << "/" << reports.size() << " checks passed\n";
  }
  return code;
}

std::vector<std::string> select_ids(const std::vector<std::string>& only, const std::vector<std::string>& known,
                                    const char* what) {
  if (only.empty()) return known;
  std::vector<std::string> out;
  for (auto const& item : only) {
    for (auto const& id : split(item, ',')) {
      if (std::find(known.begin(), known.end(), id) == known.end()) throw UsageError(std::string("unknown ") + what + " '" + id + "'");
      out.push_back(id);
    }
  }
  return out;
}


}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbital semilattices: table algebra, axiom checks and the representation construction"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s, bool window = true) {
    s->add_option("--ground", c.ground, "comma-separated ground atoms")->capture_default_str();
    if (window) s->add_option("--window", c.window, "variables x1..xn used by exhaustive sweeps")->capture_default_str();
    s->add_option("--seed", c.seed, "random seed")->capture_default_str();
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  };

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate a relational expression over tables");
  std::string expr_text;
  std::vector<std::string> table_files;
  bool ground_given = false;
  ev->add_option("expr", expr_text, "expression, e.g. 'T1 JOIN DIAG(x1,x2)'")->required();
  ev->add_option("--tables", table_files, "CSV or JSON table files")->check(CLI::ExistingFile);
  auto* ev_ground = ev->add_option("--ground", c.ground, "ground atoms (default: atoms of the tables)");
  ev->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();

  // check-axioms
  auto* ax = app.add_subcommand("check-axioms", "check the thirteen axioms on Tab(G) or a mutant");
  std::vector<std::string> only;
  bool all = false;
  common(ax);
  ax->add_option("--cases", c.cases, "random cases per check")->capture_default_str();
  ax->add_option("--mutate", c.mutate, "break one operation (see --list-mutants)");
  ax->add_option("--only", only, "axiom ids, e.g. A3,A10");
  ax->add_flag("--all", all, "every axiom (the default)");
  bool list_mutants = false;
  ax->add_flag("--list-mutants", list_mutants, "print the mutant catalog and exit");

  // check-props
  auto* pr = app.add_subcommand("check-props", "check the derived properties");
  common(pr);
  pr->add_option("--cases", c.cases, "random cases per check")->capture_default_str();
  pr->add_option("--mutate", c.mutate, "break one operation");
  pr->add_option("--only", only, "property ids, e.g. dom.meet,act.meet");
  pr->add_flag("--all", all, "every property (the default)");
  std::vector<std::string> lift;
  pr->add_option("--lift", lift, "drop a hypothesis of act.meet: injective, range-cover")
      ->check(CLI::IsMember({"injective", "range-cover"}));

  // check-labeling
  auto* lb = app.add_subcommand("check-labeling", "check a labeling into Tab(G), its extent map and quotient");
  common(lb);
  lb->add_option("--cases", c.cases, "random cases per check")->capture_default_str();
  lb->add_option("--mutate", c.mutate, "label into a mutant instead of Tab(G)");
  std::string which = "singleton", level = "full";
  lb->add_option("--labeling", which, "singleton (t -> {t}) or constant (t -> 1)")
      ->check(CLI::IsMember({"singleton", "constant"}))
      ->capture_default_str();
  lb->add_option("--level", level, "quasi (L1-L3) or full (L1-L4)")->check(CLI::IsMember({"quasi", "full"}))->capture_default_str();
  lb->add_option("--caps", c.caps, "max-ground=N,max-dom=N,tuples=N");

  // decompose
  auto* de = app.add_subcommand("decompose", "split a transformation into folding, bijection and partial identity");
  std::string transform_text;
  de->add_option("transform", transform_text, "e.g. '{x1->x3, x2->x3}' or 'pi{x1,x2}'")->required();
  de->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  // embed
  auto* em = app.add_subcommand("embed", "build H, the induced labeling and check the embedding");
  RepresentConfig rc;
  common(em, false);
  em->add_option("--depth", rc.depth, "term depth K")->capture_default_str();
  em->add_option("--window", rc.window, "variables of reachable elements")->capture_default_str();
  em->add_option("--samples", rc.samples, "random cases per construction check")->capture_default_str();
  em->add_option("--mutate", c.mutate, "run on a mutant");
  em->add_option("--caps", c.caps, "symbols=N,terms=N,vars=N");
  bool show_terms = false;
  em->add_flag("--terms", show_terms, "list the terms of H in text output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (ev->parsed()) {
      Expr::Ptr e = parse_expr(expr_text);
      TableEnv env;
      std::vector<std::pair<std::string, RawTable>> raws;
      std::set<std::string> atoms;
      std::optional<std::vector<std::string>> file_ground;
      for (auto const& f : table_files) {
        auto tf = load_table_file(f);
        if (tf.ground) file_ground = tf.ground;
        for (auto& [n, r] : tf.tables) {
          auto a = r.atoms();
          atoms.insert(a.begin(), a.end());
          raws.emplace_back(n, std::move(r));
        }
      }
      ground_given = ev_ground->count() > 0;
      GroundPtr<std::string> g;
      if (ground_given) {
        g = parse_ground(c.ground);
      } else if (file_ground) {
        g = make_ground(*file_ground);
      } else {
        if (atoms.empty()) throw UsageError("no atoms in the tables; pass --ground");
        g = make_ground(std::vector<std::string>(atoms.begin(), atoms.end()));
      }
      for (auto& [n, r] : raws) {
        if (!env.emplace(n, build_table(r, g)).second) throw UsageError("table name '" + n + "' defined twice");
      }
      Table<std::string> out = eval(*e, env, g);
      if (c.format == "json") {
        std::cout << json{{"expr", to_string(*e)}, {"ground", std::vector<std::string>(g->begin(), g->end())}, {"table", table_json(out)}}.dump(2)
                  << "\n";
      } else if (c.format == "csv") {
        std::cout << table_csv(out);
      } else {
        std::cout << table_grid(out);
      }
      return kPass;
    }

    if (ax->parsed()) {
      if (list_mutants) {
        for (auto const& m : mutant_catalog()) std::cout << m.id << " [" << m.target << "] " << m.summary << "\n";
        return kPass;
      }
      if (all && !only.empty()) throw UsageError("--all and --only are exclusive");
      auto ids = select_ids(only, std::vector<std::string>(axiom_ids.begin(), axiom_ids.end()), "axiom");
      SampleConfig cfg = sample_config(c);
      return with_instance(c, [&](const auto& inst) {
        json extra{{"ground", c.ground}, {"window", c.window}, {"seed", c.seed}};
        if (!c.mutate.empty()) extra["mutant"] = c.mutate;
        return emit(c, "check-axioms", check_axioms(inst, ids, cfg), extra);
      });
    }

    if (pr->parsed()) {
      if (all && !only.empty()) throw UsageError("--all and --only are exclusive");
      auto ids = select_ids(only, std::vector<std::string>(derived_ids.begin(), derived_ids.end()), "property");
      SampleConfig cfg = sample_config(c);
      DerivedOptions opt;
      for (auto const& l : lift) {
        if (l == "injective") opt.act_meet_require_injective = false;
        if (l == "range-cover") opt.act_meet_require_range_cover = false;
      }
      return with_instance(c, [&](const auto& inst) {
        std::vector<CheckReport> reports;
        for (auto const& id : ids) reports.push_back(check_derived(inst, id, cfg, opt));
        return emit(c, "check-props", reports, json{{"ground", c.ground}, {"window", c.window}, {"seed", c.seed}});
      });
    }

    if (lb->parsed()) {
      SampleConfig cfg = sample_config(c);
      auto caps_in = parse_caps(c.caps, {"max-ground", "max-dom", "tuples"});
      LabelingCaps caps;
      if (caps_in.count("max-ground")) caps.max_ground = caps_in["max-ground"];
      if (caps_in.count("max-dom")) caps.max_dom = caps_in["max-dom"];
      if (caps_in.count("tuples")) caps.tuple_budget = caps_in["tuples"];
      return with_instance(c, [&](const auto& inst) {
        using I = std::decay_t<decltype(inst)>;
        GroundPtr<std::string> g = inst.ground();
        std::optional<Labeling<std::string, I>> alpha;
        if (which == "singleton") {
          alpha.emplace(inst, g, [g](const NamedTuple<std::string>& t) { return Table<std::string>::from_tuples(g, {t}); });
        } else {
          alpha.emplace(inst, g, [one = inst.one()](const NamedTuple<std::string>&) { return one; });
        }
        auto reports = check_labeling(*alpha, level == "full" ? LabelLevel::Full : LabelLevel::Quasi, cfg, caps);
        EmbeddingScope<std::string, I> scope;
        scope.elements = inst.exhaustive_elements(cfg);
        scope.transforms = all_transforms(cfg.window());
        if (scope.transforms.size() > cfg.transform_budget) scope.transforms.resize(cfg.transform_budget);
        scope.vars = cfg.window();
        try {
          for (auto& r : check_embedding(*alpha, scope)) reports.push_back(std::move(r));
          auto q = quotient(*alpha, cfg.random_cases / 5 + 1, cfg.seed);
          for (auto& r : q.checks) reports.push_back(std::move(r));
        } catch (const Error& e) {
          reports.push_back(CheckReport{"EXT", 1, 1, Status::Fail, {}, Counterexample{{}, e.what(), "", {}}});
        }
        return emit(c, "check-labeling", reports, json{{"ground", c.ground}, {"labeling", which}, {"level", level}});
      });
    }

    if (de->parsed()) {
      Transform f = parse_transform(transform_text);
      Decomposition d = decompose(f);
      Transform back = compose(d.pi, compose(d.sigma, d.delta));
      std::vector<std::pair<std::string, bool>> facts = {
          {"recomposes", back == f},
          {"delta is a folding", is_folding(d.delta)},
          {"sigma is a bijection", d.sigma.is_injective()},
          {"pi is a partial identity", d.pi.is_partial_identity()},
      };
      bool ok = true;
      for (auto const& [n, v] : facts) ok = ok && v;
      if (c.format == "json") {
        json checks = json::object();
        for (auto const& [n, v] : facts) checks[n] = v;
        std::cout << json{{"f", to_string(f)},
                          {"delta", to_string(d.delta)},
                          {"sigma", to_string(d.sigma)},
                          {"pi", to_string(d.pi)},
                          {"checks", checks}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "f     = " << f << "\ndelta = " << d.delta << "\nsigma = " << d.sigma << "\npi    = " << d.pi << "\n";
        for (auto const& [n, v] : facts) std::cout << n << ": " << (v ? "yes" : "NO") << "\n";
      }
      return ok ? kPass : kFail;
    }

    if (em->parsed()) {
      auto caps_in = parse_caps(c.caps, {"symbols", "terms", "vars"});
      if (caps_in.count("symbols")) rc.caps.symbols_per_arity = caps_in["symbols"];
      if (caps_in.count("terms")) rc.caps.terms_per_stratum = caps_in["terms"];
      if (caps_in.count("vars")) rc.caps.max_symbol_vars = caps_in["vars"];
      if (rc.window == 0) throw UsageError("--window must be positive");
      rc.seed = c.seed;
      return with_instance(c, [&](const auto& inst) {
        RepresentReport r = represent(inst, rc);
        if (c.format == "json") {
          json j = to_json(r);
          j["command"] = "embed";
          j["ground"] = c.ground;
          j["exit"] = verdict(r.checks);
          std::cout << j.dump(2) << "\n";
          return verdict(r.checks);
        }
        std::cout << "H strata |H^(k)|, k = 0.." << r.depth << ":";
        for (auto s : r.strata) std::cout << " " << s;
        std::cout << "\nsymbols: " << r.symbols.size() << "; quotient classes: " << r.classes << "; reachable elements: " << r.reachable;
        if (r.elements_in_window) std::cout << " of " << *r.elements_in_window;
        std::cout << "\n";
        for (auto const& t : r.truncation) std::cout << "truncated: " << t << "\n";
        if (show_terms) {
          for (auto const& [n, e] : r.symbols) std::cout << "  " << n << " = " << e << "\n";
          for (auto const& [t, d] : r.terms) std::cout << "  depth " << d << ": " << t << "\n";
        }
        return emit(c, "embed", r.checks);
      });
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
