#pragma once

// Scenario language: syntax tree, parser and canonical rendering.
//
//   scenario := stmt*
//   stmt     := "space" ("R" INT)? ("T" INT)? ";"
//             | ("form" | "fn" | "conn" | "gauge" | "idem") NAME "=" expr ";"
//             | "task" KIND arg* ";"
//   expr     := term (("+" | "-") term)*
//   term     := unary (("*" | "^" | "/") unary)*      "*" and "^" are wedge
//   unary    := "-" unary | postfix ("^" INT)?         x^2 is a power
//   postfix  := INT | NAME | NAME "(" expr ("," expr)* ")" | "(" expr ")" | matrix
//   matrix   := "[" row ("," row)* "]",  row := "[" expr ("," expr)* "]"
//   arg      := postfix
//
// Comments run from "#" to the end of the line.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace khat::dsl {

class ScenarioError : public std::runtime_error {
 public:
  enum class Category { lexical, syntactic, semantic };

  ScenarioError(Category category, int line, int column, const std::string& message,
                std::vector<std::string> expected = {});

  Category category() const { return category_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& detail() const { return detail_; }

 private:
  Category category_;
  int line_;
  int column_;
  std::string detail_;
  std::vector<std::string> expected_;
};

const char* to_string(ScenarioError::Category c);

struct Expr {
  enum class Kind { number, name, call, negate, binary, power, matrix };

  Kind kind = Kind::number;
  std::string text;  // name, callee, or operator
  long value = 0;    // number, or exponent of a power
  int rows = 0;      // matrix literal shape; entries in args, row-major
  int cols = 0;
  std::vector<Expr> args;
  int line = 0;
  int column = 0;

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct SpaceDecl {
  int chart_dim = 0;
  int torus_dim = 0;
  int line = 0;
  int column = 0;

  friend bool operator==(const SpaceDecl& a, const SpaceDecl& b) {
    return a.chart_dim == b.chart_dim && a.torus_dim == b.torus_dim;
  }
};

struct Definition {
  std::string kind;  // form, fn, conn, gauge, idem
  std::string name;
  Expr value;
  int line = 0;
  int column = 0;

  friend bool operator==(const Definition& a, const Definition& b) {
    return a.kind == b.kind && a.name == b.name && a.value == b.value;
  }
};

struct Task {
  std::string kind;  // ch, cs, equiv, realize, holonomy, lambda, suite
  std::vector<Expr> args;
  int line = 0;
  int column = 0;

  friend bool operator==(const Task& a, const Task& b) { return a.kind == b.kind && a.args == b.args; }
};

struct Scenario {
  std::optional<SpaceDecl> space;
  std::vector<Definition> definitions;
  std::vector<Task> tasks;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Lexical and syntactic analysis only.
Scenario parse_syntax(const std::string& text);
/// A single expression with no trailing ';'.
Expr parse_expression(const std::string& text);
/// Canonical source text; parse_syntax(render(s)) == s.
std::string render(const Scenario& s);
std::string render(const Expr& e);

const std::vector<std::string>& task_kinds();
const std::vector<std::string>& definition_kinds();

}  // namespace khat::dsl
