#include <cstdio>

#include <json.hpp>

#include "khat/chern_simons.hpp"
#include "khat/gauge_theta.hpp"
#include "khat/holonomy.hpp"
#include "khat/scenario.hpp"
#include "khat/struct_khat.hpp"
#include "khat/text.hpp"

namespace khat::dsl {

namespace {

std::string cycle_text(const Cycle& z) {
  std::string out;
  for (int j : z.torus_subset) out += (out.empty() ? "" : " x ") + std::string("th") + std::to_string(j + 1);
  return out;
}

std::string scientific(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string task_label(const Task& t) {
  std::string out = t.kind;
  for (const auto& a : t.args) {
    const std::string r = render(a);
    const bool atomic = a.kind == Expr::Kind::name || a.kind == Expr::Kind::number || a.kind == Expr::Kind::call ||
                        a.kind == Expr::Kind::matrix;
    out += " " + (atomic ? r : "(" + r + ")");
  }
  return out;
}

// First odd coordinate cycle on which the closed form w has a nonzero period.
std::optional<std::pair<Cycle, TauScalar>> period_witness(const MatrixForm& w) {
  for (const Cycle& z : coordinate_cycles(w.base())) {
    if (z.dimension() % 2 == 0) continue;
    TauScalar p = period(w, z);
    if (!p.is_zero()) return std::make_pair(z, p);
  }
  return std::nullopt;
}

void ch_task(Environment& env, const Task& t, Check& c) {
  const Value v = env.evaluate(t.args[0]);
  c.anchor = "Chern character form is closed";
  MatrixForm ch;
  int rank;
  if (const auto* p = std::get_if<Idempotent>(&v)) {
    StructuredBundle b = StructuredBundle::image(*p);
    ch = chern_character(b);
    rank = b.rank();
  } else {
    const Connection conn = env.to_connection(v, t.args[0]);
    ch = chern_character(conn);
    rank = conn.rank();
  }
  c.verdict = is_closed(ch) ? Verdict::pass : Verdict::fail;
  c.details = {{"rank", std::to_string(rank)}, {"ch", to_string(ch)}};
}

void cs_task(Environment& env, const Task& t, Report& r, Check c) {
  const Connection a = env.to_connection(env.evaluate(t.args[0]), t.args[0]);
  const Connection b = env.to_connection(env.evaluate(t.args[1]), t.args[1]);
  const ConnectionPath path = ConnectionPath::straight(a, b);
  const MatrixForm cs = cs_path(path);
  c.anchor = "transgression: d cs = ch(end) - ch(start)";
  c.verdict = exterior_d(cs) == chern_character(b) - chern_character(a) ? Verdict::pass : Verdict::fail;
  c.details = {{"cs", to_string(cs)}, {"normal form", to_string(normal_form(cs))}};
  r.checks.push_back(c);
  c.anchor = "cylinder formula agrees with the path integral";
  c.verdict = cs_via_cylinder(path) == cs ? Verdict::pass : Verdict::fail;
  c.details.clear();
  r.checks.push_back(c);
}

void equiv_task(Environment& env, const Task& t, Check& c) {
  const Connection a = env.to_connection(env.evaluate(t.args[0]), t.args[0]);
  const Connection b = env.to_connection(env.evaluate(t.args[1]), t.args[1]);
  c.anchor = "equivalence: the CS class vanishes";
  if (a.rank() != b.rank()) {
    c.verdict = Verdict::fail;
    c.details = {{"reason", "ranks differ (" + std::to_string(a.rank()) + " and " + std::to_string(b.rank()) + ")"}};
    return;
  }
  const MatrixForm cs = cs_path(ConnectionPath::straight(a, b));
  if (!is_closed(cs)) {
    c.verdict = Verdict::fail;
    c.details = {{"reason", "Chern character forms differ"}, {"d cs", to_string(exterior_d(cs))}};
    return;
  }
  const OddClass cls(cs);
  c.details = {{"CS class", to_string(cls.representative())}};
  if (cls.is_zero()) {
    c.verdict = Verdict::pass;
    return;
  }
  c.verdict = Verdict::fail;
  if (auto w = period_witness(cls.representative())) {
    c.details.emplace_back("witness cycle", cycle_text(w->first));
    c.details.emplace_back("witness period", to_string(w->second));
  }
}

void realize_task(Environment& env, const Task& t, Check& c) {
  const MatrixForm rho = MatrixForm::scalar(env.to_form(env.evaluate(t.args[0]), t.args[0]));
  c.anchor = "realization: CS-hat of the realized bundle is the class of the form";
  try {
    const StructuredBundle v = realize_odd_form(rho);
    const OddClass got = cs_hat(v);
    c.verdict = got == OddClass(rho) ? Verdict::pass : Verdict::fail;
    c.details = {{"rank", std::to_string(v.rank())},
                 {"connection", to_string(v.connection().form())},
                 {"class", to_string(got.representative())}};
  } catch (const UnsupportedError& e) {
    c.verdict = Verdict::unknown;
    c.details = {{"reason", e.what()}};
  }
}

void holonomy_task(Environment& env, const Task& t, const RunOptions& o, Check& c) {
  const Connection conn = env.to_connection(env.evaluate(t.args[0]), t.args[0]);
  const HolonomyCheck h = check_holonomy(conn, o.tol);
  c.anchor = "holonomy around every angle is the identity";
  c.verdict = h.trivial ? Verdict::pass : Verdict::fail;
  c.details = {{"tolerance", scientific(o.tol)},
               {"max defect", scientific(h.max_defect)},
               {"steps", std::to_string(h.max_steps)},
               {"converged", h.converged ? "yes" : "no"}};
}

void lambda_task(Environment& env, const Task& t, const RunOptions& o, Check& c) {
  const MatrixForm w = MatrixForm::scalar(env.to_form(env.evaluate(t.args[0]), t.args[0]));
  std::vector<GaugeTransform> certs;
  for (std::size_t k = 1; k < t.args.size(); ++k) certs.push_back(env.to_gauge(env.evaluate(t.args[k]), t.args[k]));
  const LambdaVerdict v = lambda_gl_test(w, certs, o.lambda_bound);
  c.anchor = "membership in the lattice of gauge pullbacks";
  c.verdict = v.kind == LambdaVerdict::Kind::member      ? Verdict::pass
              : v.kind == LambdaVerdict::Kind::nonmember ? Verdict::fail
                                                         : Verdict::unknown;
  c.details = {{"verdict", to_string(v.kind)}};
  if (!v.combination.empty()) {
    std::string comb;
    for (int m : v.combination) comb += (comb.empty() ? "" : ", ") + std::to_string(m);
    c.details.emplace_back("combination", "(" + comb + ")");
  }
  if (v.witness_cycle) c.details.emplace_back("witness cycle", cycle_text(*v.witness_cycle));
  if (v.witness_period) c.details.emplace_back("witness period", to_string(*v.witness_period));
  if (!v.reason.empty()) c.details.emplace_back("reason", v.reason);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::unknown: return "UNKNOWN";
  }
  return "?";
}

int Report::count(Verdict v) const {
  int n = 0;
  for (const auto& c : checks) n += c.verdict == v;
  return n;
}

std::string Report::text() const {
  std::string out = "report: " + title + "\n";
  for (const auto& c : checks) {
    out += std::string("[") + to_string(c.verdict) + "] " + c.task + ": " + c.anchor + "\n";
    for (const auto& [k, v] : c.details) out += "    " + k + ": " + v + "\n";
  }
  out += "summary: " + std::to_string(count(Verdict::pass)) + " passed, " + std::to_string(count(Verdict::fail)) +
         " failed, " + std::to_string(count(Verdict::unknown)) + " unknown\n";
  return out;
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["title"] = title;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["task"] = c.task;
    e["anchor"] = c.anchor;
    e["verdict"] = to_string(c.verdict);
    e["details"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.details) e["details"][k] = v;
    j["checks"].push_back(std::move(e));
  }
  j["summary"] = {{"passed", count(Verdict::pass)}, {"failed", count(Verdict::fail)},
                  {"unknown", count(Verdict::unknown)}};
  return j.dump(2) + "\n";
}

Report run(const Scenario& s, const RunOptions& options) {
  Report r;
  r.title = "scenario";
  Environment env(s);
  for (const auto& t : s.tasks) {
    Check c;
    c.task = task_label(t);
    if (t.kind == "cs") {
      cs_task(env, t, r, c);
      continue;
    }
    if (t.kind == "suite") {
      RunOptions o = options;
      if (!t.args.empty()) o.seed = static_cast<std::uint64_t>(env.to_integer(env.evaluate(t.args[0]), t.args[0]));
      for (Check& sc : run_suite(o).checks) {
        sc.task = c.task + ": " + sc.task;
        r.checks.push_back(std::move(sc));
      }
      continue;
    }
    if (t.kind == "ch") ch_task(env, t, c);
    else if (t.kind == "equiv") equiv_task(env, t, c);
    else if (t.kind == "realize") realize_task(env, t, c);
    else if (t.kind == "holonomy") holonomy_task(env, t, options, c);
    else if (t.kind == "lambda") lambda_task(env, t, options, c);
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace khat::dsl
