#include "khat/khat.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "khat/chern_simons.hpp"
#include "khat/holonomy.hpp"
#include "khat/scenario.hpp"
#include "khat/struct_khat.hpp"
#include "khat/text.hpp"

struct khat_scenario {
  khat::dsl::Scenario value;
};
struct khat_report {
  khat::dsl::Report value;
};
struct khat_space {
  khat::BaseSpace value;
};
struct khat_form {
  khat::MatrixForm value;
};
struct khat_connection {
  khat::Connection value;
};

namespace {

thread_local std::string last_error;

khat_status record(khat_status s, const char* message) {
  last_error = message;
  return s;
}

void clear_error(khat_error* err) {
  if (!err) return;
  err->category = KHAT_ERROR_NONE;
  err->line = 0;
  err->column = 0;
  err->message[0] = '\0';
}

void fill_error(khat_error* err, const khat::dsl::ScenarioError& e) {
  if (!err) return;
  using C = khat::dsl::ScenarioError::Category;
  err->category = e.category() == C::lexical     ? KHAT_ERROR_LEXICAL
                  : e.category() == C::syntactic ? KHAT_ERROR_SYNTAX
                                                 : KHAT_ERROR_SEMANTIC;
  err->line = e.line();
  err->column = e.column();
  std::strncpy(err->message, e.what(), sizeof err->message - 1);
  err->message[sizeof err->message - 1] = '\0';
}

// Runs f, translating exceptions into status codes.
template <class F>
khat_status guard(F&& f, khat_error* err = nullptr) {
  clear_error(err);
  try {
    f();
    last_error.clear();
    return KHAT_OK;
  } catch (const khat::dsl::ScenarioError& e) {
    fill_error(err, e);
    return record(KHAT_ERR_PARSE, e.what());
  } catch (const khat::DomainError& e) {
    return record(KHAT_ERR_DOMAIN, e.what());
  } catch (const khat::UnsupportedError& e) {
    return record(KHAT_ERR_UNSUPPORTED, e.what());
  } catch (const std::bad_alloc&) {
    return record(KHAT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(KHAT_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

khat::dsl::RunOptions convert(const khat_run_options* o) {
  khat::dsl::RunOptions r;
  if (!o) return r;
  if (!(o->tol > 0) || o->bound_coords < 1 || o->bound_rank < 1 || o->bound_degree < 0)
    throw khat::DomainError("invalid run options");
  if (o->bound_coords > 6 || o->bound_rank > 4 || o->bound_degree > 4)
    throw khat::DomainError("suite bounds too large (coords <= 6, rank <= 4, degree <= 4)");
  r.seed = o->seed;
  r.tol = o->tol;
  r.bounds.coords = o->bound_coords;
  r.bounds.rank = o->bound_rank;
  r.bounds.degree = o->bound_degree;
  return r;
}

#define REQUIRE_ARGS(cond) \
  if (!(cond)) return record(KHAT_ERR_ARGUMENT, "null argument")

}  // namespace

extern "C" {

const char* khat_status_string(khat_status s) {
  switch (s) {
    case KHAT_OK: return "ok";
    case KHAT_ERR_ARGUMENT: return "invalid argument";
    case KHAT_ERR_PARSE: return "parse error";
    case KHAT_ERR_DOMAIN: return "domain error";
    case KHAT_ERR_UNSUPPORTED: return "unsupported";
    case KHAT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* khat_last_error(void) { return last_error.c_str(); }

void khat_string_free(char* s) { std::free(s); }

void khat_run_options_default(khat_run_options* o) {
  if (!o) return;
  const khat::dsl::RunOptions d;
  o->seed = d.seed;
  o->tol = d.tol;
  o->bound_coords = d.bounds.coords;
  o->bound_rank = d.bounds.rank;
  o->bound_degree = d.bounds.degree;
}

khat_status khat_scenario_parse(const char* text, khat_scenario** out, khat_error* err) {
  REQUIRE_ARGS(text && out);
  *out = nullptr;
  return guard([&] { *out = new khat_scenario{khat::dsl::parse_scenario(text)}; }, err);
}

void khat_scenario_free(khat_scenario* s) { delete s; }

khat_status khat_scenario_render(const khat_scenario* s, char** out) {
  REQUIRE_ARGS(s && out);
  return guard([&] { *out = copy_string(khat::dsl::render(s->value)); });
}

int khat_scenario_task_count(const khat_scenario* s) { return s ? static_cast<int>(s->value.tasks.size()) : -1; }

khat_status khat_scenario_run(const khat_scenario* s, const khat_run_options* o, khat_report** out) {
  REQUIRE_ARGS(s && out);
  *out = nullptr;
  return guard([&] { *out = new khat_report{khat::dsl::run(s->value, convert(o))}; });
}

khat_status khat_suite_run(const khat_run_options* o, khat_report** out) {
  REQUIRE_ARGS(out);
  *out = nullptr;
  return guard([&] { *out = new khat_report{khat::dsl::run_suite(convert(o))}; });
}

khat_status khat_report_render(const khat_report* r, khat_format f, char** out) {
  REQUIRE_ARGS(r && out);
  if (f != KHAT_FORMAT_TEXT && f != KHAT_FORMAT_JSON) return record(KHAT_ERR_ARGUMENT, "unknown format");
  return guard([&] { *out = copy_string(f == KHAT_FORMAT_JSON ? r->value.json() : r->value.text()); });
}

int khat_report_count(const khat_report* r, khat_verdict v) {
  if (!r) return -1;
  switch (v) {
    case KHAT_PASS: return r->value.count(khat::dsl::Verdict::pass);
    case KHAT_FAIL: return r->value.count(khat::dsl::Verdict::fail);
    case KHAT_UNKNOWN: return r->value.count(khat::dsl::Verdict::unknown);
  }
  return -1;
}

void khat_report_free(khat_report* r) { delete r; }

khat_status khat_space_new(int chart_dim, int torus_dim, khat_space** out) {
  REQUIRE_ARGS(out);
  *out = nullptr;
  return guard([&] {
    if (chart_dim + torus_dim > khat::kMaxCoords - 1) throw khat::DomainError("too many coordinates");
    *out = new khat_space{khat::BaseSpace(chart_dim, torus_dim)};
  });
}

void khat_space_free(khat_space* s) { delete s; }

khat_status khat_form_parse(const khat_space* s, const char* expr, khat_form** out, khat_error* err) {
  REQUIRE_ARGS(s && expr && out);
  *out = nullptr;
  return guard(
      [&] {
        khat::dsl::Environment env(s->value);
        const khat::dsl::Expr e = khat::dsl::parse_expression(expr);
        *out = new khat_form{env.to_matrix(env.evaluate(e), e)};
      },
      err);
}

void khat_form_free(khat_form* f) { delete f; }

khat_status khat_form_print(const khat_form* f, char** out) {
  REQUIRE_ARGS(f && out);
  return guard([&] { *out = copy_string(khat::to_string(f->value)); });
}

khat_status khat_form_add(const khat_form* a, const khat_form* b, khat_form** out) {
  REQUIRE_ARGS(a && b && out);
  return guard([&] {
    if (a->value.rows() != b->value.rows() || a->value.cols() != b->value.cols())
      throw khat::DomainError("shape mismatch");
    khat::require_same_base(a->value.base(), b->value.base(), "add");
    *out = new khat_form{a->value + b->value};
  });
}

khat_status khat_form_wedge(const khat_form* a, const khat_form* b, khat_form** out) {
  REQUIRE_ARGS(a && b && out);
  return guard([&] {
    if (a->value.cols() != b->value.rows()) throw khat::DomainError("shape mismatch");
    khat::require_same_base(a->value.base(), b->value.base(), "wedge");
    *out = new khat_form{khat::wedge(a->value, b->value)};
  });
}

khat_status khat_form_d(const khat_form* f, khat_form** out) {
  REQUIRE_ARGS(f && out);
  return guard([&] { *out = new khat_form{khat::exterior_d(f->value)}; });
}

khat_status khat_form_normal(const khat_form* f, khat_form** out) {
  REQUIRE_ARGS(f && out);
  return guard([&] { *out = new khat_form{khat::normal_form(f->value)}; });
}

khat_status khat_form_is_closed(const khat_form* f, int* out) {
  REQUIRE_ARGS(f && out);
  return guard([&] { *out = khat::is_closed(f->value) ? 1 : 0; });
}

khat_status khat_form_is_exact(const khat_form* f, int* out) {
  REQUIRE_ARGS(f && out);
  return guard([&] { *out = khat::is_exact(f->value) ? 1 : 0; });
}

khat_status khat_form_equal(const khat_form* a, const khat_form* b, int* out) {
  REQUIRE_ARGS(a && b && out);
  *out = a->value == b->value ? 1 : 0;
  return KHAT_OK;
}

khat_status khat_connection_parse(const khat_space* s, const char* expr, khat_connection** out, khat_error* err) {
  REQUIRE_ARGS(s && expr && out);
  *out = nullptr;
  return guard(
      [&] {
        khat::dsl::Environment env(s->value);
        const khat::dsl::Expr e = khat::dsl::parse_expression(expr);
        *out = new khat_connection{env.to_connection(env.evaluate(e), e)};
      },
      err);
}

void khat_connection_free(khat_connection* c) { delete c; }

int khat_connection_rank(const khat_connection* c) { return c ? c->value.rank() : -1; }

khat_status khat_connection_print(const khat_connection* c, char** out) {
  REQUIRE_ARGS(c && out);
  return guard([&] { *out = copy_string(khat::to_string(c->value.form())); });
}

khat_status khat_connection_ch(const khat_connection* c, khat_form** out) {
  REQUIRE_ARGS(c && out);
  return guard([&] { *out = new khat_form{khat::chern_character(c->value)}; });
}

khat_status khat_connection_cs(const khat_connection* from, const khat_connection* to, khat_form** out) {
  REQUIRE_ARGS(from && to && out);
  return guard([&] { *out = new khat_form{khat::cs_path(khat::ConnectionPath::straight(from->value, to->value))}; });
}

khat_status khat_connection_equivalent(const khat_connection* a, const khat_connection* b, int* out) {
  REQUIRE_ARGS(a && b && out);
  return guard([&] { *out = khat::equivalent(a->value, b->value) ? 1 : 0; });
}

khat_status khat_connection_holonomy(const khat_connection* c, double tol, int* trivial, double* defect) {
  REQUIRE_ARGS(c && trivial);
  return guard([&] {
    const khat::HolonomyCheck h = khat::check_holonomy(c->value, tol);
    *trivial = h.trivial ? 1 : 0;
    if (defect) *defect = h.max_defect;
  });
}

khat_status khat_realize(const khat_form* rho, khat_connection** out) {
  REQUIRE_ARGS(rho && out);
  *out = nullptr;
  return guard([&] { *out = new khat_connection{khat::realize_odd_form(rho->value).connection()}; });
}

}  // extern "C"
