#include <algorithm>
#include <functional>
#include <optional>

#include "khat/chern_simons.hpp"
#include "khat/gauge_theta.hpp"
#include "khat/holonomy.hpp"
#include "khat/random.hpp"
#include "khat/scenario.hpp"
#include "khat/struct_khat.hpp"
#include "khat/text.hpp"

namespace khat::dsl {

namespace {

// A property returns an empty string when it holds, otherwise a description.
using Property = std::function<std::string(Sampler&)>;

struct Group {
  const char* module;
  const char* anchor;
  int cases;
  Property property;
};

MatrixForm S(const Form& f) { return MatrixForm::scalar(f); }

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

class Battery {
 public:
  explicit Battery(const RunOptions& o) : opt_(o) {
    b_.poly_degree = std::max(0, o.bounds.degree);
    b_.coeff_range = 2;
  }

  BaseSpace base(Sampler& s, bool chart_only = false) const {
    const int dim = std::max(1, opt_.bounds.coords);
    if (chart_only) return BaseSpace(s.integer(1, dim), 0);
    return s.base_space(dim, dim, std::min(dim, 2));
  }
  int rank(Sampler& s) const { return s.integer(1, std::max(1, opt_.bounds.rank)); }
  const SampleBounds& bounds() const { return b_; }

 private:
  RunOptions opt_;
  SampleBounds b_;
};

std::vector<Group> groups(const Battery& B, const RunOptions& o) {
  const SampleBounds& b = B.bounds();
  std::vector<Group> g;

  g.push_back({"coeff_algebra", "tau-scalars form a commutative ring; monomials are invertible", 60, [&B, b](Sampler& s) {
                 SampleBounds tb = b;
                 tb.tau = true;
                 const TauScalar x = s.tau_scalar(tb), y = s.tau_scalar(tb), z = s.tau_scalar(tb);
                 if (!(x * (y + z) == x * y + x * z)) return std::string("distributivity");
                 if (!((x * y) * z == x * (y * z)) || !(x * y == y * x)) return std::string("associativity");
                 const TauScalar m = TauScalar::monomial(s.integer(-3, 3), s.gaussian(3, true));
                 if (m.is_zero()) return std::string();
                 return expect(m.inverse() && *m.inverse() * m == TauScalar(1), "monomial inverse");
               }});

  g.push_back({"forms", "d d = 0 and the graded Leibniz rule", 40, [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const int p = s.integer(0, base.dim());
                 const Form a = s.form(base, p, b), c = s.mixed_form(base, {0, 1, 2}, b);
                 if (!a.d().d().is_zero() || !c.d().d().is_zero()) return std::string("d d != 0");
                 const Form lhs = wedge(a, c).d();
                 const Form rhs = wedge(a.d(), c) + (p % 2 == 0 ? wedge(a, c.d()) : -wedge(a, c.d()));
                 return expect(lhs == rhs, "Leibniz rule fails for degree " + std::to_string(p));
               }});

  g.push_back({"forms", "homotopy formula w = d h w + h d w + r w; normal forms", 40, [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const MatrixForm w = S(s.mixed_form(base, {0, 1, 2, 3}, b));
                 const MatrixForm h = poincare_homotopy(w);
                 if (!(exterior_d(h) + poincare_homotopy(exterior_d(w)) + retract_to_torus(w) == w))
                   return std::string("homotopy formula");
                 const MatrixForm n = normal_form(w);
                 if (!(normal_form(n) == n)) return std::string("normal form is not idempotent");
                 return expect(is_exact(w - n), "w - N(w) is not exact");
               }});

  g.push_back({"connections", "ch is closed, gauge invariant, additive and multiplicative", 30, [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const Connection c = s.connection(base, B.rank(s), b), e = s.connection(base, B.rank(s), b);
                 const MatrixForm ch = chern_character(c);
                 if (!is_closed(ch)) return std::string("ch not closed");
                 if (!(chern_character(gauge_apply(s.gauge(base, c.rank(), b), c)) == ch))
                   return std::string("ch changes under a gauge transform");
                 if (!(chern_character(direct_sum(c, e)) == ch + chern_character(e))) return std::string("ch(c + e)");
                 return expect(chern_character(tensor(c, e)) == wedge(ch, chern_character(e)), "ch(c x e)");
               }});

  g.push_back({"connections", "Hermitian connections have conjugation-invariant ch", 25, [&B, b](Sampler& s) {
                 const Connection c = s.skew_hermitian_connection(B.base(s), B.rank(s), b);
                 if (!hermitian_check(c)) return std::string("sample is not skew-Hermitian");
                 const MatrixForm ch = chern_character(c);
                 return expect(ch.conj() == ch, "conj ch != ch");
               }});

  g.push_back({"chern_simons", "transgression d cs = ch(end) - ch(start); cylinder formula agrees", 30,
               [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const int r = B.rank(s);
                 const Connection c0 = s.connection(base, r, b), c1 = s.connection(base, r, b);
                 const ConnectionPath path = ConnectionPath::straight(c0, c1);
                 const MatrixForm cs = cs_path(path);
                 if (!(exterior_d(cs) == chern_character(c1) - chern_character(c0))) return std::string("transgression");
                 return expect(cs_via_cylinder(path) == cs, "cylinder formula differs");
               }});

  g.push_back({"chern_simons", "path independence of the CS class", 25, [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const int r = B.rank(s);
                 const Connection c0 = s.connection(base, r, b), c1 = s.connection(base, r, b);
                 const MatrixForm detour = s.one_form_matrix(base, r, b);
                 const MatrixForm a = cs_path(ConnectionPath::straight(c0, c1));
                 const MatrixForm d = cs_path(ConnectionPath::detour(c0, c1, detour));
                 return expect(normal_form(a) == normal_form(d), "straight and detour classes differ");
               }});

  g.push_back({"chern_simons", "CS classes add over direct sums", 25, [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const int r = B.rank(s), q = B.rank(s);
                 const Connection a0 = s.connection(base, r, b), a1 = s.connection(base, r, b);
                 const Connection b0 = s.connection(base, q, b), b1 = s.connection(base, q, b);
                 const MatrixForm lhs = cs_path(ConnectionPath::straight(direct_sum(a0, b0), direct_sum(a1, b1)));
                 const MatrixForm rhs = cs_path(ConnectionPath::straight(a0, a1)) + cs_path(ConnectionPath::straight(b0, b1));
                 return expect(is_exact(lhs - rhs), "sum of classes");
               }});

  g.push_back({"gauge_theta", "b_j closed form matches the expanded integral", 8, [j = 0](Sampler&) mutable {
                 ++j;
                 return expect(b_coefficient(j) == b_coefficient_by_expansion(j), "b_" + std::to_string(j));
               }});

  g.push_back({"gauge_theta", "CS(flat, g flat) - g*Theta is exact; periods of g*Theta are integers", 25,
               [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const int r = B.rank(s);
                 const GaugeTransform gt = s.gauge(base, r, b);
                 const MatrixForm th = theta_pullback(gt).form;
                 const Connection flat = Connection::flat(base, r);
                 if (!is_exact(cs_path(ConnectionPath::straight(flat, gauge_apply(gt, flat))) - th))
                   return std::string("cs - theta not exact");
                 for (const Cycle& z : coordinate_cycles(base))
                   if (z.dimension() % 2 == 1 && !period(th, z).is_integer()) return std::string("non-integer period");
                 return expect(lambda_gl_test(th, {gt}, 1).kind == LambdaVerdict::Kind::member, "pullback not a member");
               }});

  g.push_back({"struct_khat", "realization round trip and ch of the i-map is d", 25, [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s, true);
                 const MatrixForm rho = S(s.odd_polynomial_form(base, std::min(3, base.dim()), b));
                 const StructuredBundle v = realize_odd_form(rho);
                 if (!(normal_form(cs_hat(v).representative()) == normal_form(rho))) return std::string("round trip");
                 return expect(ch_khat(i_map(rho)) == exterior_d(rho) && delta(i_map(rho)).is_zero(), "ch(i(rho))");
               }});

  g.push_back({"struct_khat", "CS-hat is additive; K-hat products respect ch", 25, [&B, b](Sampler& s) {
                 const BaseSpace base = B.base(s);
                 const StructuredBundle v(s.connection(base, B.rank(s), b)), w(s.connection(base, B.rank(s), b));
                 if (!(cs_hat(struct_sum(v, w)) == cs_hat(v) + cs_hat(w))) return std::string("CS-hat of a sum");
                 const KHatElement mu(base, {v}, {StructuredBundle::flat(base, 1)}), nu(w);
                 return expect(ch_khat(mu * nu) == wedge(ch_khat(mu), ch_khat(nu)), "ch of a product");
               }});

  g.push_back({"struct_khat", "Grassmann connection of an idempotent is equivalent to flat", 25, [&B, b](Sampler& s) {
                 const Idempotent p = s.idempotent(B.base(s), b);
                 return expect(equivalent(Connection::flat(p.base(), p.size()), grassmann_sum(p)), "not equivalent");
               }});

  g.push_back({"holonomy", "gauge transforms of flat connections have trivial holonomy", 6, [&B, tol = o.tol](Sampler& s) {
                 const BaseSpace base(s.integer(0, 1), s.integer(1, 2));
                 const GaugeTransform gt = s.fourier_gauge(base, B.rank(s), 2);
                 const HolonomyCheck h = check_holonomy(gauge_apply(gt, Connection::flat(base, gt.size())), tol);
                 return expect(h.trivial, "defect " + std::to_string(h.max_defect));
               }});
  return g;
}

}  // namespace

Report run_suite(const RunOptions& options) {
  Report r;
  r.title = "suite seed " + std::to_string(options.seed);
  Battery battery(options);
  std::uint64_t stream = 0;
  for (const Group& g : groups(battery, options)) {
    // one stream per group
    Sampler s(options.seed * 1000003ULL + ++stream);
    Check c;
    c.task = g.module;
    c.anchor = g.anchor;
    std::string failure;
    int k = 0;
    for (; k < g.cases && failure.empty(); ++k) {
      try {
        failure = g.property(s);
      } catch (const std::exception& e) {
        failure = std::string("exception: ") + e.what();
      }
    }
    c.verdict = failure.empty() ? Verdict::pass : Verdict::fail;
    c.details.emplace_back("cases", std::to_string(k));
    if (!failure.empty()) c.details.emplace_back("first failure", "case " + std::to_string(k) + ": " + failure);
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace khat::dsl
