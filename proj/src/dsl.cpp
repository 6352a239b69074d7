#include "khat/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace khat::dsl {

namespace {

std::string format_error(ScenarioError::Category c, int line, int column, const std::string& message,
                         const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << line << ":" << column << ": " << to_string(c) << " error: " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i == 0 ? "" : ", ") << expected[i];
    os << ")";
  }
  return os.str();
}

enum class Tok { integer, ident, symbol, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::integer: return "integer " + t.text;
    case Tok::ident: return "'" + t.text + "'";
    case Tok::symbol: return "'" + t.text + "'";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const unsigned char ch = static_cast<unsigned char>(text[i]);
    if (std::isspace(ch)) {
      advance(1);
    } else if (ch == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j - i > 9) throw ScenarioError(ScenarioError::Category::lexical, line, column, "integer literal too large");
      if (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        throw ScenarioError(ScenarioError::Category::lexical, line, column,
                            "malformed token '" + text.substr(i, j - i + 1) + "'");
      out.push_back({Tok::integer, text.substr(i, j - i), line, column});
      advance(j - i);
    } else if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::ident, text.substr(i, j - i), line, column});
      advance(j - i);
    } else if (std::string_view(";=+-*^/()[],").find(static_cast<char>(ch)) != std::string_view::npos) {
      out.push_back({Tok::symbol, std::string(1, static_cast<char>(ch)), line, column});
      advance(1);
    } else {
      std::string shown = ch < 0x80 ? std::string(1, static_cast<char>(ch)) : "non-ASCII byte";
      throw ScenarioError(ScenarioError::Category::lexical, line, column, "unexpected character '" + shown + "'");
    }
  }
  out.push_back({Tok::end, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Scenario scenario() {
    Scenario s;
    while (peek().kind != Tok::end) {
      const Token& t = peek();
      if (t.kind == Tok::ident && t.text == "space") {
        SpaceDecl d = space();
        if (s.space)
          throw ScenarioError(ScenarioError::Category::semantic, d.line, d.column, "space declared more than once");
        s.space = d;
      } else if (t.kind == Tok::ident && t.text == "task") {
        s.tasks.push_back(task());
      } else if (t.kind == Tok::ident && is_definition_kind(t.text)) {
        s.definitions.push_back(definition());
      } else {
        std::vector<std::string> expected = {"'space'", "'task'"};
        for (const auto& k : definition_kinds()) expected.push_back("'" + k + "'");
        fail(t, "expected a statement", expected);
      }
    }
    return s;
  }

  Expr standalone() {
    Expr e = expr();
    if (peek().kind != Tok::end) fail(peek(), "unexpected trailing input", {"operator", "end of input"});
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  static bool is_definition_kind(const std::string& s) {
    const auto& k = definition_kinds();
    return std::find(k.begin(), k.end(), s) != k.end();
  }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool at_symbol(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::symbol && peek(ahead).text == s;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& what, std::vector<std::string> expected) {
    throw ScenarioError(ScenarioError::Category::syntactic, t.line, t.column, what + ", found " + describe(t),
                        std::move(expected));
  }

  Token expect_symbol(const char* s) {
    if (!at_symbol(s)) fail(peek(), std::string("expected '") + s + "'", {std::string("'") + s + "'"});
    return take();
  }

  long expect_integer() {
    if (peek().kind != Tok::integer) fail(peek(), "expected an integer", {"integer"});
    return std::stol(take().text);
  }

  Token expect_name() {
    if (peek().kind != Tok::ident) fail(peek(), "expected a name", {"name"});
    return take();
  }

  SpaceDecl space() {
    const Token kw = take();
    SpaceDecl d;
    d.line = kw.line;
    d.column = kw.column;
    if (peek().kind == Tok::ident && peek().text == "R") {
      take();
      d.chart_dim = static_cast<int>(expect_integer());
    }
    if (peek().kind == Tok::ident && peek().text == "T") {
      take();
      d.torus_dim = static_cast<int>(expect_integer());
    }
    if (!at_symbol(";")) {
      std::vector<std::string> expected;
      if (d.chart_dim == 0 && d.torus_dim == 0) expected.push_back("'R'");
      if (d.torus_dim == 0) expected.push_back("'T'");
      expected.push_back("';'");
      fail(peek(), "malformed space declaration", expected);
    }
    take();
    return d;
  }

  Definition definition() {
    const Token kw = take();
    Definition d;
    d.kind = kw.text;
    d.line = kw.line;
    d.column = kw.column;
    const Token name = expect_name();
    d.name = name.text;
    expect_symbol("=");
    d.value = expr();
    expect_symbol(";");
    return d;
  }

  Task task() {
    const Token kw = take();
    Task t;
    t.line = kw.line;
    t.column = kw.column;
    const auto& kinds = task_kinds();
    if (peek().kind != Tok::ident || std::find(kinds.begin(), kinds.end(), peek().text) == kinds.end()) {
      std::vector<std::string> expected;
      for (const auto& k : kinds) expected.push_back("'" + k + "'");
      fail(peek(), "expected a task kind", expected);
    }
    t.kind = take().text;
    while (!at_symbol(";")) {
      if (peek().kind == Tok::end) fail(peek(), "unterminated task", {"';'", "argument"});
      t.args.push_back(postfix());
    }
    take();
    return t;
  }

  static Expr node(Expr::Kind k, const Token& at) {
    Expr e;
    e.kind = k;
    e.line = at.line;
    e.column = at.column;
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (at_symbol("+") || at_symbol("-")) {
      const Token op = take();
      Expr e = node(Expr::Kind::binary, op);
      e.text = op.text;
      e.args.push_back(std::move(lhs));
      e.args.push_back(term());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (at_symbol("*") || at_symbol("^") || at_symbol("/")) {
      const Token op = take();
      Expr e = node(Expr::Kind::binary, op);
      e.text = op.text;
      e.args.push_back(std::move(lhs));
      e.args.push_back(unary());
      lhs = std::move(e);
    }
    return lhs;
  }

  Expr unary() {
    if (at_symbol("-")) {
      const Token op = take();
      Expr e = node(Expr::Kind::negate, op);
      e.args.push_back(unary());
      return e;
    }
    Expr base = postfix();
    if (at_symbol("^") && peek(1).kind == Tok::integer) {
      const Token op = take();
      Expr e = node(Expr::Kind::power, op);
      e.value = expect_integer();
      e.args.push_back(std::move(base));
      return e;
    }
    return base;
  }

  Expr postfix() {
    const Token t = peek();
    if (t.kind == Tok::integer) {
      take();
      Expr e = node(Expr::Kind::number, t);
      e.value = std::stol(t.text);
      return e;
    }
    if (t.kind == Tok::ident) {
      take();
      if (!at_symbol("(")) {
        Expr e = node(Expr::Kind::name, t);
        e.text = t.text;
        return e;
      }
      take();
      Expr e = node(Expr::Kind::call, t);
      e.text = t.text;
      e.args.push_back(expr());
      while (at_symbol(",")) {
        take();
        e.args.push_back(expr());
      }
      if (!at_symbol(")")) fail(peek(), "unclosed argument list", {"','", "')'"});
      take();
      return e;
    }
    if (at_symbol("(")) {
      take();
      Expr e = expr();
      if (!at_symbol(")")) fail(peek(), "unclosed parenthesis", {"')'", "operator"});
      take();
      return e;
    }
    if (at_symbol("[")) return matrix();
    fail(t, "expected an expression", {"integer", "name", "'('", "'['", "'-'"});
  }

  Expr matrix() {
    const Token open = take();
    Expr e = node(Expr::Kind::matrix, open);
    do {
      const Token row_start = expect_symbol("[");
      int cols = 0;
      e.args.push_back(expr());
      ++cols;
      while (at_symbol(",")) {
        take();
        e.args.push_back(expr());
        ++cols;
      }
      if (!at_symbol("]")) fail(peek(), "unclosed matrix row", {"','", "']'"});
      take();
      if (e.rows > 0 && cols != e.cols)
        throw ScenarioError(ScenarioError::Category::syntactic, row_start.line, row_start.column,
                            "matrix row has " + std::to_string(cols) + " entries, expected " + std::to_string(e.cols));
      e.cols = cols;
      ++e.rows;
    } while (at_symbol(",") && (take(), true));
    if (!at_symbol("]")) fail(peek(), "unclosed matrix", {"','", "']'"});
    take();
    return e;
  }
};

// Binding strength: 1 sum, 2 product, 3 unary minus, 4 power, 5 atom.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::binary: return (e.text == "+" || e.text == "-") ? 1 : 2;
    case Expr::Kind::negate: return 3;
    case Expr::Kind::power: return 4;
    default: return 5;
  }
}

std::string render_at(const Expr& e, int context) {
  std::string out;
  switch (e.kind) {
    case Expr::Kind::number: out = std::to_string(e.value); break;
    case Expr::Kind::name: out = e.text; break;
    case Expr::Kind::call:
      out = e.text + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i == 0 ? "" : ", ") + render_at(e.args[i], 0);
      out += ")";
      break;
    case Expr::Kind::matrix:
      out = "[";
      for (int r = 0; r < e.rows; ++r) {
        out += r == 0 ? "[" : ", [";
        for (int c = 0; c < e.cols; ++c) out += (c == 0 ? "" : ", ") + render_at(e.args[r * e.cols + c], 0);
        out += "]";
      }
      out += "]";
      break;
    case Expr::Kind::negate: out = "-" + render_at(e.args[0], 3); break;
    case Expr::Kind::power: out = render_at(e.args[0], 5) + "^" + std::to_string(e.value); break;
    case Expr::Kind::binary: {
      const bool sum = e.text == "+" || e.text == "-";
      const std::string lhs = render_at(e.args[0], sum ? 1 : 2);
      std::string rhs = render_at(e.args[1], sum ? 2 : 3);
      // a^2 would read back as a power
      if (e.text == "^" && std::isdigit(static_cast<unsigned char>(rhs[0]))) rhs = "(" + rhs + ")";
      out = sum ? lhs + " " + e.text + " " + rhs : lhs + e.text + rhs;
      break;
    }
  }
  return precedence(e) < context ? "(" + out + ")" : out;
}

}  // namespace

ScenarioError::ScenarioError(Category category, int line, int column, const std::string& message,
                             std::vector<std::string> expected)
    : std::runtime_error(format_error(category, line, column, message, expected)),
      category_(category),
      line_(line),
      column_(column),
      detail_(message),
      expected_(std::move(expected)) {}

const char* to_string(ScenarioError::Category c) {
  switch (c) {
    case ScenarioError::Category::lexical: return "lexical";
    case ScenarioError::Category::syntactic: return "syntax";
    case ScenarioError::Category::semantic: return "semantic";
  }
  return "?";
}

bool operator==(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.text == b.text && a.value == b.value && a.rows == b.rows && a.cols == b.cols &&
         a.args == b.args;
}

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> k = {"ch", "cs", "equiv", "realize", "holonomy", "lambda", "suite"};
  return k;
}

const std::vector<std::string>& definition_kinds() {
  static const std::vector<std::string> k = {"form", "fn", "conn", "gauge", "idem"};
  return k;
}

Scenario parse_syntax(const std::string& text) { return Parser(lex(text)).scenario(); }

Expr parse_expression(const std::string& text) { return Parser(lex(text)).standalone(); }

std::string render(const Expr& e) { return render_at(e, 0); }

std::string render(const Scenario& s) {
  std::string out;
  if (s.space) {
    out += "space";
    if (s.space->chart_dim > 0 || s.space->torus_dim == 0) out += " R " + std::to_string(s.space->chart_dim);
    if (s.space->torus_dim > 0) out += " T " + std::to_string(s.space->torus_dim);
    out += ";\n";
  }
  for (const auto& d : s.definitions) out += d.kind + " " + d.name + " = " + render(d.value) + ";\n";
  for (const auto& t : s.tasks) {
    out += "task " + t.kind;
    for (const auto& a : t.args) out += " " + render_at(a, 5);
    out += ";\n";
  }
  return out;
}

}  // namespace khat::dsl
