#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "instance.hpp"
#include "transform.hpp"
#include "tuple.hpp"
#include "var.hpp"

namespace orbital {

enum class Status { Pass, Fail, Vacuous, Capped };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Vacuous: return "vacuous";
    case Status::Capped: return "capped";
  }
  return "?";
}

/// Result of evaluating one case. Sides are only rendered when asked for.
struct Outcome {
  enum Kind { NotApplicable, Holds, Fails } kind = Holds;
  std::string lhs, rhs;

  static Outcome skip() { return {NotApplicable, {}, {}}; }
  static Outcome ok() { return {Holds, {}, {}}; }
  static Outcome fail(std::string l, std::string r) { return {Fails, std::move(l), std::move(r)}; }
};

struct Counterexample {
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string lhs, rhs;
  /// Re-evaluates the failing case. Refers to the instance it was checked on,
  /// which must still be alive.
  std::function<Outcome()> replay;
};

struct CheckReport {
  std::string id;
  std::size_t cases = 0;
  std::size_t applicable = 0;
  Status status = Status::Pass;
  std::string note;
  std::optional<Counterexample> counterexample;

  bool passed() const { return status == Status::Pass; }
};

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j{{"id", r.id}, {"cases", r.cases}, {"applicable", r.applicable}, {"status", status_name(r.status)}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.counterexample) {
    nlohmann::json in = nlohmann::json::object();
    for (auto const& [k, v] : r.counterexample->inputs) in[k] = v;
    j["counterexample"] = {{"inputs", in}, {"lhs", r.counterexample->lhs}, {"rhs", r.counterexample->rhs}};
  }
  return j;
}

inline std::ostream& operator<<(std::ostream& os, const CheckReport& r) {
  os << r.id << ": " << status_name(r.status) << " (" << r.applicable << "/" << r.cases << " applicable)";
  if (!r.note.empty()) os << " [" << r.note << "]";
  if (r.counterexample) {
    os << "\n  counterexample:";
    for (auto const& [k, v] : r.counterexample->inputs) os << " " << k << "=" << v;
    os << "\n  lhs: " << r.counterexample->lhs << "\n  rhs: " << r.counterexample->rhs;
  }
  return os;
}

/// A check input carried with its own rendering, for values whose text
/// depends on context the runner does not have.
template <class T>
struct Labeled {
  T value;
  std::string text;
};

namespace detail {

template <class T>
std::string text_of(const Labeled<T>& l) {
  return l.text;
}
inline std::string text_of(std::size_t n) { return std::to_string(n); }
inline std::string text_of(bool b) { return b ? "true" : "false"; }
inline std::string text_of(const Transform& f) { return to_string(f); }
inline std::string text_of(const VarSet& s) { return s.str(); }
inline std::string text_of(const Schema& s) { return s.str(); }
inline std::string text_of(Var x) { return x.str(); }
template <class A>
std::string text_of(const NamedTuple<A>& t) {
  return to_string(t);
}

template <class I>
Outcome same(const I& inst, bool explain, const typename I::element_type& l, const typename I::element_type& r) {
  if (l == r) return Outcome::ok();
  return explain ? Outcome::fail(inst.describe(l), inst.describe(r)) : Outcome::fail({}, {});
}

template <class I>
Outcome below(const I& inst, bool explain, const typename I::element_type& l, const typename I::element_type& r) {
  if (leq(inst, l, r)) return Outcome::ok();
  return explain ? Outcome::fail(inst.describe(l) + " <=", inst.describe(r)) : Outcome::fail({}, {});
}

inline Outcome same_schema(bool explain, const Schema& l, const Schema& r) {
  if (l == r) return Outcome::ok();
  return explain ? Outcome::fail(l.str(), r.str()) : Outcome::fail({}, {});
}

/// Accumulates cases for one check and keeps the first failure.
template <class I>
class Runner {
 public:
  Runner(const I& inst, std::string id) : inst_(&inst) { report_.id = std::move(id); }

  bool failed() const { return report_.status == Status::Fail; }

  /// Evaluates f(false, args...). On failure the case is re-run with
  /// explanation on, and a replay closure holding copies of the inputs is kept.
  template <class F, class... Args>
  bool test(const F& f, std::initializer_list<const char*> names, const Args&... args) {
    if (failed()) return false;
    ++report_.cases;
    Outcome o = f(false, args...);
    if (o.kind == Outcome::NotApplicable) return true;
    ++report_.applicable;
    if (o.kind == Outcome::Holds) return true;
    Counterexample cx;
    auto it = names.begin();
    ((cx.inputs.emplace_back(*it++, describe(args))), ...);
    Outcome full = f(true, args...);
    cx.lhs = full.lhs;
    cx.rhs = full.rhs;
    cx.replay = [f, args...]() { return f(true, args...); };
    report_.status = Status::Fail;
    report_.counterexample = std::move(cx);
    return false;
  }

  /// Counts a case decided on a fast path that did not fail.
  void tally(bool applicable) {
    ++report_.cases;
    if (applicable) ++report_.applicable;
  }

  CheckReport finish(std::string note = {}) {
    if (!failed() && report_.applicable == 0) report_.status = Status::Vacuous;
    if (!note.empty()) report_.note = std::move(note);
    return std::move(report_);
  }

  CheckReport& report() { return report_; }

 private:
  template <class T>
  std::string describe(const T& v) const {
    if constexpr (std::is_same_v<T, typename I::element_type>) {
      return inst_->describe(v);
    } else {
      return text_of(v);
    }
  }

  const I* inst_;
  CheckReport report_;
};

}  // namespace detail

}  // namespace orbital
