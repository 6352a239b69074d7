#include "khat/scenario.hpp"

#include <algorithm>
#include <regex>

#include "khat/chern_simons.hpp"
#include "khat/gauge_theta.hpp"

namespace khat::dsl {

namespace {

using Category = ScenarioError::Category;

[[noreturn]] void semantic(const Expr& at, const std::string& message) {
  throw ScenarioError(Category::semantic, at.line, at.column, message);
}

const std::vector<std::string>& builtins() {
  static const std::vector<std::string> b = {
      "line",  "flat",    "connection", "hermitian", "apply", "dsum", "tensor", "grassmann", "compress", "fourier",
      "unipotent", "perm", "compose", "inverse", "expi", "cos", "sin", "d", "curvature", "theta", "cs"};
  return b;
}

bool is_builtin(const std::string& s) { return std::find(builtins().begin(), builtins().end(), s) != builtins().end(); }

bool is_reserved(const std::string& s) {
  static const std::regex coord("(x|dx|th|dth)[0-9]+");
  static const std::vector<std::string> words = {"space", "task", "form", "fn", "conn", "gauge", "idem", "tau", "i",
                                                 "R",     "T"};
  return std::regex_match(s, coord) || is_builtin(s) || std::find(words.begin(), words.end(), s) != words.end();
}

std::optional<TauScalar> constant_of(const Form& f) {
  if (f.is_zero()) return TauScalar();
  if (f.components().size() != 1 || !f.components().count(0)) return std::nullopt;
  const ChartFunction& c = f.components().at(0);
  if (!c.is_constant()) return std::nullopt;
  return c.constant_value();
}

Form power(const Form& f, long n) {
  Form out = Form::constant(f.base(), TauScalar(1));
  for (long k = 0; k < n; ++k) out = wedge(out, f);
  return out;
}

MatrixForm scale_left(const Form& f, const MatrixForm& m) {
  return m.map([&](const Form& e) { return wedge(f, e); });
}

MatrixForm scale_right(const MatrixForm& m, const Form& f) {
  return m.map([&](const Form& e) { return wedge(e, f); });
}

bool is_scalar_like(const Value& v) {
  return std::holds_alternative<Form>(v) ||
         (std::holds_alternative<MatrixForm>(v) && std::get<MatrixForm>(v).is_scalar());
}

template <class F>
Value guarded(const Expr& at, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    semantic(at, e.what());
  } catch (const UnsupportedError& e) {
    semantic(at, e.what());
  }
}

}  // namespace

const char* type_name(const Value& v) {
  static const char* names[] = {"form", "matrix", "connection", "gauge", "idempotent", "phase"};
  return names[v.index()];
}

Environment::Environment(BaseSpace base) : base_(base) {}

Environment::Environment(const Scenario& s) {
  if (s.space) {
    Expr at;
    at.line = s.space->line;
    at.column = s.space->column;
    if (s.space->chart_dim + s.space->torus_dim > kMaxCoords - 1)
      semantic(at, "space R " + std::to_string(s.space->chart_dim) + " T " + std::to_string(s.space->torus_dim) +
                       " has more than " + std::to_string(kMaxCoords - 1) + " coordinates");
    base_ = BaseSpace(s.space->chart_dim, s.space->torus_dim);
  } else {
    for (const auto& d : s.definitions) semantic(d.value, "missing space declaration before definition of '" + d.name + "'");
    for (const auto& t : s.tasks)
      if (t.kind != "suite") {
        Expr at;
        at.line = t.line;
        at.column = t.column;
        semantic(at, "missing space declaration before task " + t.kind);
      }
  }
  for (const auto& d : s.definitions) {
    Expr at;
    at.line = d.line;
    at.column = d.column;
    if (is_reserved(d.name)) semantic(at, "'" + d.name + "' is a reserved name");
    if (!defs_.emplace(d.name, &d).second) semantic(at, "duplicate definition of '" + d.name + "'");
  }
  for (const auto& d : s.definitions) lookup(d.name, d.value);
  // defs_ points into s, which need not outlive the environment
  defs_.clear();
}

Value Environment::lookup(const std::string& name, const Expr& at) {
  if (auto it = values_.find(name); it != values_.end()) return it->second;
  if (auto it = defs_.find(name); it != defs_.end()) {
    if (active_.count(name)) semantic(at, "cyclic definition involving '" + name + "'");
    active_.insert(name);
    const Definition& d = *it->second;
    Value v = convert(d.kind, evaluate(d.value), d.value);
    active_.erase(name);
    values_.emplace(name, v);
    return v;
  }
  return coordinate(name, at);
}

Value Environment::coordinate(const std::string& name, const Expr& at) const {
  if (name == "tau") return Form::constant(base_, TauScalar::tau());
  if (name == "i") return Form::constant(base_, TauScalar(Gaussian::unit_i()));
  static const std::regex coord("(x|dx|th|dth)([0-9]+)");
  std::smatch m;
  if (!std::regex_match(name, m, coord)) semantic(at, "unknown name '" + name + "'");
  const std::string prefix = m[1];
  const int index = std::stoi(m[2]);
  const bool angle = prefix == "th" || prefix == "dth";
  const int count = angle ? base_.torus_dim : base_.chart_dim;
  if (index < 1 || index > count)
    semantic(at, "'" + name + "' is out of range: the space has " + std::to_string(count) +
                     (angle ? " angle" : " chart coordinate") + (count == 1 ? "" : "s"));
  const int c = angle ? base_.chart_dim + index - 1 : index - 1;
  if (prefix == "x") return Form::function(ChartFunction::coordinate(base_, c));
  if (prefix == "th") {
    Phase p{std::vector<int>(static_cast<std::size_t>(base_.torus_dim))};
    p.k[static_cast<std::size_t>(index - 1)] = 1;
    return p;
  }
  return Form::differential(base_, c);
}

Form Environment::to_form(const Value& v, const Expr& at) const {
  if (const auto* f = std::get_if<Form>(&v)) return *f;
  if (const auto* m = std::get_if<MatrixForm>(&v); m && m->is_scalar()) return m->as_scalar();
  semantic(at, std::string("expected a form, found a ") + type_name(v));
}

MatrixForm Environment::to_matrix(const Value& v, const Expr& at) const {
  if (const auto* m = std::get_if<MatrixForm>(&v)) return *m;
  if (const auto* f = std::get_if<Form>(&v)) return MatrixForm::scalar(*f);
  if (const auto* c = std::get_if<Connection>(&v)) return c->form();
  if (const auto* g = std::get_if<GaugeTransform>(&v)) return g->matrix();
  if (const auto* p = std::get_if<Idempotent>(&v)) return p->matrix();
  semantic(at, std::string("expected a matrix, found a ") + type_name(v));
}

Connection Environment::to_connection(const Value& v, const Expr& at) const {
  if (const auto* c = std::get_if<Connection>(&v)) return *c;
  if (std::holds_alternative<MatrixForm>(v) || std::holds_alternative<Form>(v)) {
    const MatrixForm m = to_matrix(v, at);
    try {
      return Connection(m);
    } catch (const DomainError& e) {
      semantic(at, e.what());
    }
  }
  semantic(at, std::string("expected a connection, found a ") + type_name(v));
}

GaugeTransform Environment::to_gauge(const Value& v, const Expr& at) const {
  if (const auto* g = std::get_if<GaugeTransform>(&v)) return *g;
  semantic(at, std::string("expected a gauge transform, found a ") + type_name(v));
}

Idempotent Environment::to_idempotent(const Value& v, const Expr& at) const {
  if (const auto* p = std::get_if<Idempotent>(&v)) return *p;
  if (std::holds_alternative<MatrixForm>(v) || std::holds_alternative<Form>(v)) {
    try {
      return Idempotent(to_matrix(v, at));
    } catch (const DomainError& e) {
      semantic(at, e.what());
    }
  }
  semantic(at, std::string("expected an idempotent, found a ") + type_name(v));
}

long Environment::to_integer(const Value& v, const Expr& at) const {
  if (is_scalar_like(v)) {
    const auto c = constant_of(to_form(v, at));
    if (c && c->is_integer()) return mpz_class(c->as_rational()->get_num()).get_si();
  }
  semantic(at, "expected an integer constant");
}

Value Environment::convert(const std::string& kind, Value v, const Expr& at) const {
  if (kind == "form") return to_form(v, at);
  if (kind == "fn") {
    Form f = to_form(v, at);
    if (!f.is_homogeneous(0)) semantic(at, "a function definition must have degree 0");
    return f;
  }
  if (kind == "conn") return to_connection(v, at);
  if (kind == "gauge") return to_gauge(v, at);
  return to_idempotent(v, at);
}

Value Environment::evaluate(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::number: return Form::constant(base_, TauScalar(e.value));
    case Expr::Kind::name: return lookup(e.text, e);
    case Expr::Kind::call: return call(e);
    case Expr::Kind::binary: return binary(e);
    case Expr::Kind::negate: {
      Value v = evaluate(e.args[0]);
      if (auto* f = std::get_if<Form>(&v)) return -*f;
      if (auto* m = std::get_if<MatrixForm>(&v)) return -*m;
      if (auto* p = std::get_if<Phase>(&v)) {
        for (int& k : p->k) k = -k;
        return *p;
      }
      semantic(e, std::string("cannot negate a ") + type_name(v));
    }
    case Expr::Kind::power: {
      if (e.value > 32) semantic(e, "exponent too large");
      Value v = evaluate(e.args[0]);
      if (const auto* f = std::get_if<Form>(&v)) return power(*f, e.value);
      if (const auto* m = std::get_if<MatrixForm>(&v)) {
        if (!m->is_square()) semantic(e, "power of a non-square matrix");
        MatrixForm out = MatrixForm::identity(base_, m->rows());
        for (long k = 0; k < e.value; ++k) out = wedge(out, *m);
        return out;
      }
      semantic(e, std::string("cannot raise a ") + type_name(v) + " to a power");
    }
    case Expr::Kind::matrix: {
      MatrixForm m(base_, e.rows, e.cols);
      for (int r = 0; r < e.rows; ++r)
        for (int c = 0; c < e.cols; ++c) {
          const Expr& x = e.args[static_cast<std::size_t>(r * e.cols + c)];
          m.at(r, c) = to_form(evaluate(x), x);
        }
      return m;
    }
  }
  semantic(e, "unknown expression");
}

Value Environment::binary(const Expr& e) {
  const Expr& le = e.args[0];
  const Expr& re = e.args[1];
  Value lhs = evaluate(le);
  Value rhs = evaluate(re);
  const std::string& op = e.text;
  auto* lp = std::get_if<Phase>(&lhs);
  auto* rp = std::get_if<Phase>(&rhs);
  if (lp || rp) {
    if (op == "+" || op == "-") {
      if (!lp || !rp) semantic(e, "cannot add a phase and a " + std::string(type_name(lp ? rhs : lhs)));
      Phase out = *lp;
      for (std::size_t j = 0; j < out.k.size(); ++j) out.k[j] += op == "+" ? rp->k[j] : -rp->k[j];
      return out;
    }
    if (op == "*" && !(lp && rp)) {
      const long n = lp ? to_integer(rhs, re) : to_integer(lhs, le);
      Phase out = lp ? *lp : *rp;
      for (int& k : out.k) k = static_cast<int>(k * n);
      return out;
    }
    semantic(e, "phases only support +, - and integer multiples");
  }
  if (op == "/") {
    const auto c = is_scalar_like(rhs) ? constant_of(to_form(rhs, re)) : std::nullopt;
    const auto inv = c ? c->inverse() : std::nullopt;
    if (!inv) semantic(re, "division is only by a nonzero constant monomial");
    if (is_scalar_like(lhs) && std::holds_alternative<Form>(lhs)) return std::get<Form>(lhs).scaled(*inv);
    if (auto* m = std::get_if<MatrixForm>(&lhs)) return m->scaled(*inv);
    semantic(le, std::string("cannot divide a ") + type_name(lhs));
  }
  const bool lmat = std::holds_alternative<MatrixForm>(lhs);
  const bool rmat = std::holds_alternative<MatrixForm>(rhs);
  if (!(lmat || std::holds_alternative<Form>(lhs))) semantic(le, std::string("arithmetic on a ") + type_name(lhs));
  if (!(rmat || std::holds_alternative<Form>(rhs))) semantic(re, std::string("arithmetic on a ") + type_name(rhs));
  if (op == "+" || op == "-") {
    if (!lmat && !rmat) {
      const Form& a = std::get<Form>(lhs);
      const Form& b = std::get<Form>(rhs);
      return op == "+" ? a + b : a - b;
    }
    const MatrixForm a = to_matrix(lhs, le);
    const MatrixForm b = to_matrix(rhs, re);
    if (a.rows() != b.rows() || a.cols() != b.cols())
      semantic(e, "shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " " + op + " " +
                      std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    return op == "+" ? a + b : a - b;
  }
  // '*' and '^' are both the wedge product
  if (!lmat && !rmat) return wedge(std::get<Form>(lhs), std::get<Form>(rhs));
  if (!lmat) return scale_left(std::get<Form>(lhs), std::get<MatrixForm>(rhs));
  if (!rmat) return scale_right(std::get<MatrixForm>(lhs), std::get<Form>(rhs));
  const MatrixForm& a = std::get<MatrixForm>(lhs);
  const MatrixForm& b = std::get<MatrixForm>(rhs);
  if (a.cols() != b.rows())
    semantic(e, "shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  return wedge(a, b);
}

Value Environment::call(const Expr& e) {
  const std::string& f = e.text;
  if (!is_builtin(f)) {
    if (defs_.count(f) || values_.count(f)) semantic(e, "'" + f + "' is not a function");
    semantic(e, "unknown function '" + f + "'");
  }
  const std::size_t n = e.args.size();
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (n < lo || n > hi) {
      const std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
      semantic(e, f + " takes " + want + " argument" + (hi == 1 ? "" : "s") + ", found " + std::to_string(n));
    }
  };
  auto arg = [&](std::size_t k) { return evaluate(e.args[k]); };
  auto phase_arg = [&](std::size_t k) {
    Value v = arg(k);
    if (auto* p = std::get_if<Phase>(&v)) return *p;
    semantic(e.args[k], std::string("expected a phase in th names, found a ") + type_name(v));
  };

  return guarded(e, [&]() -> Value {
    if (f == "line") {
      arity(1, 1);
      return Connection::line(to_form(arg(0), e.args[0]));
    }
    if (f == "flat") {
      arity(1, 1);
      const long r = to_integer(arg(0), e.args[0]);
      if (r < 1 || r > 16) semantic(e.args[0], "flat rank must be between 1 and 16");
      return Connection::flat(base_, static_cast<int>(r));
    }
    if (f == "connection") {
      arity(1, 1);
      return to_connection(arg(0), e.args[0]);
    }
    if (f == "hermitian") {
      arity(1, 1);
      return Connection(to_connection(arg(0), e.args[0]).form(), true);
    }
    if (f == "apply") {
      arity(2, 2);
      const GaugeTransform g = to_gauge(arg(0), e.args[0]);
      const Connection c = to_connection(arg(1), e.args[1]);
      if (g.size() != c.rank()) semantic(e, "gauge and connection sizes differ");
      return gauge_apply(g, c);
    }
    if (f == "dsum" || f == "tensor") {
      arity(2, 2);
      Value a = arg(0), b = arg(1);
      if (std::holds_alternative<GaugeTransform>(a) && f == "dsum")
        return direct_sum(std::get<GaugeTransform>(a), to_gauge(b, e.args[1]));
      if (std::holds_alternative<Idempotent>(a)) {
        const Idempotent p = std::get<Idempotent>(a), q = to_idempotent(b, e.args[1]);
        return Idempotent(f == "dsum" ? block_diagonal(p.matrix(), q.matrix()) : kronecker(p.matrix(), q.matrix()));
      }
      const Connection x = to_connection(a, e.args[0]), y = to_connection(b, e.args[1]);
      return f == "dsum" ? direct_sum(x, y) : tensor(x, y);
    }
    if (f == "grassmann") {
      arity(1, 1);
      return grassmann_sum(to_idempotent(arg(0), e.args[0]));
    }
    if (f == "compress") {
      arity(2, 2);
      const Idempotent p = to_idempotent(arg(0), e.args[0]);
      const Connection c = to_connection(arg(1), e.args[1]);
      if (p.size() != c.rank()) semantic(e, "idempotent and connection sizes differ");
      return block_compression(p, c);
    }
    if (f == "fourier") {
      if (n == 1 && std::holds_alternative<Phase>(arg(0)))
        return GaugeTransform::fourier_diagonal(base_, {phase_arg(0).k});
      if (n != static_cast<std::size_t>(base_.torus_dim))
        semantic(e, "fourier takes one frequency per angle (" + std::to_string(base_.torus_dim) + ")");
      std::vector<int> k;
      for (std::size_t j = 0; j < n; ++j) k.push_back(static_cast<int>(to_integer(arg(j), e.args[j])));
      return GaugeTransform::fourier_diagonal(base_, {k});
    }
    if (f == "unipotent") {
      arity(1, 2);
      const MatrixForm nil = to_matrix(arg(0), e.args[0]);
      if (n == 1) return GaugeTransform::unipotent(nil);
      const Form fn = to_form(arg(1), e.args[1]);
      if (!fn.is_homogeneous(0)) semantic(e.args[1], "unipotent needs a function");
      return GaugeTransform::unipotent(nil, fn.coefficient(0));
    }
    if (f == "perm") {
      if (n == 0) semantic(e, "perm needs at least one entry");
      std::vector<int> p;
      std::vector<bool> seen(n, false);
      for (std::size_t j = 0; j < n; ++j) {
        const long v = to_integer(arg(j), e.args[j]);
        if (v < 1 || v > static_cast<long>(n) || seen[static_cast<std::size_t>(v - 1)])
          semantic(e.args[j], "perm entries must be a permutation of 1.." + std::to_string(n));
        seen[static_cast<std::size_t>(v - 1)] = true;
        p.push_back(static_cast<int>(v - 1));
      }
      return GaugeTransform::permutation(base_, p);
    }
    if (f == "compose") {
      arity(2, 2);
      const GaugeTransform g = to_gauge(arg(0), e.args[0]), h = to_gauge(arg(1), e.args[1]);
      if (g.size() != h.size()) semantic(e, "gauge sizes differ");
      return compose(g, h);
    }
    if (f == "inverse") {
      arity(1, 1);
      return to_gauge(arg(0), e.args[0]).inverse();
    }
    if (f == "expi" || f == "cos" || f == "sin") {
      arity(1, 1);
      Phase p = phase_arg(0);
      const ChartFunction plus = ChartFunction::fourier(base_, p.k);
      for (int& k : p.k) k = -k;
      const ChartFunction minus = ChartFunction::fourier(base_, p.k);
      if (f == "expi") return Form::function(plus);
      if (f == "cos") return Form::function((plus + minus).scaled(TauScalar(frac(1, 2))));
      // (e^{ip} - e^{-ip}) / 2i
      return Form::function((plus - minus).scaled(TauScalar(Gaussian(Rational(0), frac(-1, 2)))));
    }
    if (f == "d") {
      arity(1, 1);
      Value v = arg(0);
      if (const auto* w = std::get_if<Form>(&v)) return w->d();
      return exterior_d(to_matrix(v, e.args[0]));
    }
    if (f == "curvature") {
      arity(1, 1);
      return curvature(to_connection(arg(0), e.args[0]));
    }
    if (f == "theta") {
      arity(1, 1);
      return theta_pullback(to_gauge(arg(0), e.args[0])).form.as_scalar();
    }
    // cs
    arity(2, 2);
    const Connection a = to_connection(arg(0), e.args[0]), b = to_connection(arg(1), e.args[1]);
    if (a.rank() != b.rank()) semantic(e, "cs needs connections of equal rank");
    return cs_path(ConnectionPath::straight(a, b)).as_scalar();
  });
}

namespace {

struct TaskShape {
  const char* kind;
  std::size_t min_args;
  std::size_t max_args;
};

void check_task(Environment& env, const Task& t) {
  static const TaskShape shapes[] = {{"ch", 1, 1},      {"cs", 2, 2},       {"equiv", 2, 2}, {"realize", 1, 1},
                                     {"holonomy", 1, 1}, {"lambda", 1, 64}, {"suite", 0, 1}};
  Expr at;
  at.line = t.line;
  at.column = t.column;
  for (const auto& s : shapes) {
    if (t.kind != s.kind) continue;
    if (t.args.size() < s.min_args || t.args.size() > s.max_args)
      semantic(at, "task " + t.kind + " takes " +
                       (s.min_args == s.max_args ? std::to_string(s.min_args)
                                                 : std::to_string(s.min_args) + " to " + std::to_string(s.max_args)) +
                       " argument(s), found " + std::to_string(t.args.size()));
  }
  std::vector<Value> v;
  for (const auto& a : t.args) v.push_back(env.evaluate(a));
  if (t.kind == "ch") {
    if (!std::holds_alternative<Idempotent>(v[0])) env.to_connection(v[0], t.args[0]);
  } else if (t.kind == "cs" || t.kind == "equiv") {
    const Connection a = env.to_connection(v[0], t.args[0]);
    const Connection b = env.to_connection(v[1], t.args[1]);
    if (t.kind == "cs" && a.rank() != b.rank()) semantic(at, "task cs needs connections of equal rank");
  } else if (t.kind == "realize") {
    const Form rho = env.to_form(v[0], t.args[0]);
    if (!rho.has_only_odd_degrees()) semantic(t.args[0], "realize needs an odd form");
  } else if (t.kind == "holonomy") {
    env.to_connection(v[0], t.args[0]);
  } else if (t.kind == "lambda") {
    env.to_form(v[0], t.args[0]);
    for (std::size_t k = 1; k < v.size(); ++k) env.to_gauge(v[k], t.args[k]);
  } else if (t.kind == "suite" && !v.empty()) {
    if (env.to_integer(v[0], t.args[0]) < 0) semantic(t.args[0], "suite seed must be non-negative");
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s = parse_syntax(text);
  Environment env(s);
  for (const auto& t : s.tasks) check_task(env, t);
  return s;
}

}  // namespace khat::dsl
