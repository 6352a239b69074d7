#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "khat/scenario.hpp"
#include "khat/text.hpp"

using namespace khat;
using namespace khat::dsl;

namespace {

using Category = ScenarioError::Category;

ScenarioError error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e;
  }
  FAIL("no error for: " << text);
  return ScenarioError(Category::lexical, 0, 0, "");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Check& find(const Report& r, const std::string& task) {
  for (const auto& c : r.checks)
    if (c.task == task) return c;
  FAIL("no check for " << task);
  return r.checks.front();
}

std::string detail(const Check& c, const std::string& key) {
  for (const auto& [k, v] : c.details)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST_CASE("parse examples") {
  Scenario s = parse_scenario("space R 2; form w = x1*dx2; conn L = line(w); task ch L;");
  CHECK(s.tasks.size() == 1);
  CHECK(s.definitions.size() == 2);
  CHECK(s.space->chart_dim == 2);

  ScenarioError e = error_of("space R 2; conn L = line(x1*dx2); task ch M;");
  CHECK(e.category() == Category::semantic);
  CHECK(e.detail().find("'M'") != std::string::npos);
  CHECK(e.line() == 1);
  CHECK(e.column() == 43);

  Scenario g = parse_scenario("space T 1; gauge g = fourier(1); task equiv flat(1) apply(g,flat(1));");
  CHECK(parse_syntax(render(g)) == g);
  CHECK(render(g) == "space T 1;\ngauge g = fourier(1);\ntask equiv flat(1) apply(g, flat(1));\n");
}

TEST_CASE("error categories carry positions and expected tokens") {
  ScenarioError lex = error_of("space R 1;\nform w = x1 $ dx1;");
  CHECK(lex.category() == Category::lexical);
  CHECK(lex.line() == 2);
  CHECK(lex.column() == 13);

  ScenarioError syn = error_of("space R 1; form w = (x1 + dx1;");
  CHECK(syn.category() == Category::syntactic);
  CHECK(syn.expected() == std::vector<std::string>{"')'", "operator"});

  ScenarioError kind = error_of("space R 1; task frob x1;");
  CHECK(kind.category() == Category::syntactic);
  CHECK(kind.expected().size() == task_kinds().size());

  ScenarioError stmt = error_of("space R 1; banana w = 1;");
  CHECK(stmt.category() == Category::syntactic);
  CHECK(std::string(stmt.what()).find("expected 'space', 'task'") != std::string::npos);

  CHECK(error_of("space R 1; form w = 1; form w = 2;").category() == Category::semantic);
  CHECK(error_of("space R 1; form a = b; form b = a;").detail().find("cyclic") != std::string::npos);
  CHECK(error_of("space R 1; form x1 = 1;").detail().find("reserved") != std::string::npos);
  CHECK(error_of("space R 1; form w = dx2;").detail().find("out of range") != std::string::npos);
  CHECK(error_of("space R 2; form w = [[1, 2]] + [[1], [2]];").detail().find("shape mismatch") != std::string::npos);
  CHECK(error_of("space R 1; idem P = [[1, 1], [1, 1]];").category() == Category::semantic);
  CHECK(error_of("space R 1; conn c = flat(1); task cs c flat(2);").category() == Category::semantic);
  CHECK(error_of("form w = 1;").detail().find("missing space") != std::string::npos);
  CHECK(error_of("space R 1; task realize x1*dx1*dx1 + 1;").category() == Category::syntactic);
  CHECK(error_of("space R 1; task realize (1 + dx1);").detail().find("odd") != std::string::npos);
  CHECK(error_of("space R 1; form w = x1 / x1;").category() == Category::semantic);
}

TEST_CASE("forward references resolve") {
  Scenario s = parse_scenario("space R 2; conn L = line(w); form w = x1*dx2; task ch L;");
  Report r = run(s);
  CHECK(detail(r.checks[0], "ch") == "1 + (1/τ) dx1^dx2");
}

TEST_CASE("expression semantics") {
  Environment env(BaseSpace(2, 1));
  auto eval = [&](const std::string& s) { return env.evaluate(parse_expression(s)); };
  auto text = [&](const std::string& s) { return to_string(env.to_matrix(eval(s), Expr())); };
  CHECK(text("x1^2 * dx2 - dx2*x1^2") == "0");
  CHECK(text("dx1^dx2 + dx2*dx1") == "0");
  CHECK(text("(x1 + 1)^2") == "1 + 2 x1 + x1^2");
  CHECK(text("d(x1*x2)") == "x2 dx1 + x1 dx2");
  CHECK(text("tau / tau + i*i") == "0");
  CHECK(text("cos(th1)") == "(1/2) e^(-i th1) + (1/2) e^(i th1)");
  CHECK(text("2*expi(2*th1 - th1)") == "2 e^(i th1)");
  CHECK(text("[[1, x1], [0, 0]] * [[1, x1], [0, 0]]") == "[[1, x1], [0, 0]]");
  CHECK(text("x2 * [[dx1]]") == "x2 dx1");
  CHECK(std::holds_alternative<Connection>(eval("apply(fourier(1), flat(1))")));
  CHECK(std::holds_alternative<GaugeTransform>(eval("compose(perm(2, 1), inverse(perm(2, 1)))")));
  CHECK(std::holds_alternative<Phase>(eval("th1 - 3*th1")));
  CHECK_THROWS_AS(eval("line(dx1) + 1"), ScenarioError);
  CHECK_THROWS_AS(eval("unknown(1)"), ScenarioError);
  CHECK_THROWS_AS(eval("perm(1, 1)"), ScenarioError);
}

TEST_CASE("render and parse are inverse on tricky expressions") {
  for (const char* s : {"a^(2)", "-x1^2", "(-x1)^2", "a - (b - c)", "a - b - c", "a*(b + c)", "-(a + b)*c",
                        "a^-b", "a/(b*c)", "a^b^2", "[[1, -x1], [x2^3, a*b]]", "f(a, -b, (c))", "2^3^x",
                        "(a^2)^3"}) {
    Expr e = parse_expression(s);
    CHECK_MESSAGE(parse_expression(render(e)) == e, s << " -> " << render(e));
  }
}

TEST_CASE("task verdicts") {
  Report r = run(parse_scenario(R"(
space T 1;
conn A = line(i*dth1);
gauge g = fourier(2);
gauge h = fourier(1);
task equiv flat(1) A;
task equiv flat(1) apply(g, flat(1));
task holonomy A;
task holonomy line(i/2*dth1);
task lambda (dth1/tau);
task lambda (i*dth1/tau) h;
task realize (i*cos(th1)*dth1);
)"));
  REQUIRE(r.checks.size() == 7);
  CHECK(r.checks[0].verdict == Verdict::fail);
  CHECK(detail(r.checks[0], "witness period") == "1");
  CHECK(detail(r.checks[0], "witness cycle") == "th1");
  CHECK(r.checks[1].verdict == Verdict::fail);
  CHECK(detail(r.checks[1], "witness period") == "2");
  CHECK(r.checks[2].verdict == Verdict::pass);
  CHECK(r.checks[3].verdict == Verdict::fail);
  CHECK(r.checks[4].verdict == Verdict::fail);
  CHECK(r.checks[5].verdict == Verdict::pass);
  CHECK(r.checks[6].verdict == Verdict::pass);
  CHECK(r.failures() == 4);
  CHECK(find(r, "equiv flat(1) A").anchor.find("CS class") != std::string::npos);
}

TEST_CASE("reports are deterministic and JSON is well formed") {
  const std::string src = "space R 2; conn L = line(x1*dx2); task ch L; task cs flat(1) L;";
  Report a = run(parse_scenario(src)), b = run(parse_scenario(src));
  CHECK(a.text() == b.text());
  CHECK(a.json() == b.json());
  CHECK(a.json().find("\"verdict\": \"PASS\"") != std::string::npos);
  CHECK(a.text().find("summary: 3 passed, 0 failed, 0 unknown") != std::string::npos);
}

TEST_CASE("suite passes and is reproducible") {
  RunOptions o;
  o.seed = 7;
  Report a = run_suite(o);
  CHECK(a.failures() == 0);
  if (a.failures() != 0) MESSAGE(a.text());
  CHECK(run_suite(o).text() == a.text());
}

TEST_CASE("scenario corpus parses, runs and round-trips") {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(KHAT_SCENARIO_DIR)) {
    if (entry.path().extension() != ".khat") continue;
    ++files;
    const std::string src = slurp(entry.path());
    Scenario s;
    REQUIRE_NOTHROW(s = parse_scenario(src));
    CHECK_MESSAGE(parse_syntax(render(s)) == s, entry.path());
    CHECK_MESSAGE(parse_scenario(render(s)) == s, entry.path());
    Report r;
    REQUIRE_NOTHROW(r = run(s));
    CHECK(!r.checks.empty());
  }
  CHECK(files >= 10);
}
