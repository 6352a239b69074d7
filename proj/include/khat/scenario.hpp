#pragma once

// Evaluation of scenario expressions and the task runner.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "khat/connections.hpp"
#include "khat/dsl.hpp"

namespace khat::dsl {

/// Integer-linear combination of the angles, k . theta.
struct Phase {
  std::vector<int> k;
  friend bool operator==(const Phase&, const Phase&) = default;
};

using Value = std::variant<Form, MatrixForm, Connection, GaugeTransform, Idempotent, Phase>;

/// "form", "matrix", "connection", "gauge", "idempotent" or "phase".
const char* type_name(const Value& v);

/// Definitions of a scenario evaluated on demand, with cycle detection.  All
/// failures are semantic ScenarioErrors positioned at the offending node.
class Environment {
 public:
  explicit Environment(BaseSpace base);
  /// Checks the space, names and definitions; evaluates every definition.
  explicit Environment(const Scenario& s);

  const BaseSpace& base() const { return base_; }
  Value evaluate(const Expr& e);
  Value lookup(const std::string& name, const Expr& at);

  Form to_form(const Value& v, const Expr& at) const;
  MatrixForm to_matrix(const Value& v, const Expr& at) const;
  Connection to_connection(const Value& v, const Expr& at) const;
  GaugeTransform to_gauge(const Value& v, const Expr& at) const;
  Idempotent to_idempotent(const Value& v, const Expr& at) const;
  long to_integer(const Value& v, const Expr& at) const;

 private:
  Value call(const Expr& e);
  Value binary(const Expr& e);
  Value coordinate(const std::string& name, const Expr& at) const;
  Value convert(const std::string& kind, Value v, const Expr& at) const;

  BaseSpace base_;
  std::map<std::string, const Definition*> defs_;
  std::map<std::string, Value> values_;
  std::set<std::string> active_;
};

/// Lexical, syntactic and semantic analysis.  Task arguments are type-checked.
Scenario parse_scenario(const std::string& text);

struct SuiteBounds {
  int coords = 4;  // max a + b
  int rank = 3;
  int degree = 2;  // polynomial degree of coefficients
};

struct RunOptions {
  std::uint64_t seed = 42;
  double tol = 1e-8;
  SuiteBounds bounds;
  int lambda_bound = 3;
};

enum class Verdict { pass, fail, unknown };
const char* to_string(Verdict v);

struct Check {
  std::string task;    // task as written, e.g. "ch L"
  std::string anchor;  // which identity or property was checked
  Verdict verdict = Verdict::pass;
  std::vector<std::pair<std::string, std::string>> details;
};

struct Report {
  std::string title;
  std::vector<Check> checks;

  int count(Verdict v) const;
  int failures() const { return count(Verdict::fail); }
  std::string text() const;
  std::string json() const;
};

Report run(const Scenario& s, const RunOptions& options = {});
/// The invariant battery of every module with a seeded generator.
Report run_suite(const RunOptions& options = {});

}  // namespace khat::dsl
