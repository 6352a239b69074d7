#include <doctest.h>

#include <vector>

#include "khat/forms.hpp"
#include "khat/random.hpp"

using namespace khat;

namespace {

Form dx(BaseSpace b, int i) { return Form::differential(b, i); }
ChartFunction x(BaseSpace b, int i) { return ChartFunction::coordinate(b, i); }
ChartFunction one(BaseSpace b) { return ChartFunction::constant(b, TauScalar(1)); }
ChartFunction expi(BaseSpace b, std::vector<int> k) { return ChartFunction::fourier(b, k); }
MatrixForm S(const Form& f) { return MatrixForm::scalar(f); }

// Gauss-Legendre on [0,1], 5 nodes: exact for polynomials of degree <= 9.
double integrate01(auto&& g) {
  static const double nodes[] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
  static const double weights[] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                   0.4786286704993665, 0.2369268850561891};
  double sum = 0;
  for (int i = 0; i < 5; ++i) sum += weights[i] * g(0.5 * (nodes[i] + 1.0));
  return 0.5 * sum;
}

}  // namespace

TEST_CASE("wedge signs and matrix products") {
  BaseSpace r2(2, 0);
  const Form d12 = Form::monomial(0b11, one(r2));
  CHECK(wedge(dx(r2, 0), dx(r2, 1)) == d12);
  CHECK(wedge(dx(r2, 1), dx(r2, 0)) == -d12);
  CHECK(wedge(dx(r2, 0).times(x(r2, 0)), dx(r2, 0)).is_zero());
  // (x1 dx2) ^ dx1 = -x1 dx1 dx2
  CHECK(wedge(dx(r2, 1).times(x(r2, 0)), dx(r2, 0)) == -d12.times(x(r2, 0)));

  // nilpotent N = [[0,1],[0,0]]:  (N dx1) ^ (N dx2) = N^2 dx1dx2 = 0
  MatrixForm n1(r2, 2, 2), n2(r2, 2, 2);
  n1.at(0, 1) = dx(r2, 0);
  n2.at(0, 1) = dx(r2, 1);
  CHECK(wedge(n1, n2).is_zero());
  CHECK_THROWS_AS(wedge(n1, MatrixForm(r2, 3, 3)), DomainError);
  CHECK_THROWS_AS(wedge(n1, MatrixForm(BaseSpace(1, 1), 2, 2)), DomainError);
}

TEST_CASE("wedge_sign counts inversions") {
  CHECK(wedge_sign(0b001, 0b010) == 1);
  CHECK(wedge_sign(0b010, 0b001) == -1);
  CHECK(wedge_sign(0b110, 0b001) == 1);
  CHECK(wedge_sign(0b100, 0b011) == 1);
  CHECK(wedge_sign(0b010, 0b101) == -1);
  CHECK(wedge_sign(0b011, 0b010) == 0);
}

TEST_CASE("exterior derivative") {
  BaseSpace r2(2, 0);
  CHECK(exterior_d(S(dx(r2, 1).times(x(r2, 0)))) == S(Form::monomial(0b11, one(r2))));
  BaseSpace t1(0, 1);
  auto e = expi(t1, {1});
  CHECK(exterior_d(S(Form::function(e))) == S(dx(t1, 0).times(e.scaled(TauScalar(Gaussian::unit_i())))));
  // d(x2 dx1 + x1 dx2) = 0
  Form closed = dx(r2, 0).times(x(r2, 1)) + dx(r2, 1).times(x(r2, 0));
  CHECK(exterior_d(S(closed)).is_zero());
}

TEST_CASE("trace") {
  BaseSpace r1(1, 0);
  CHECK(trace(MatrixForm::identity(r1, 3)) == S(Form::constant(r1, TauScalar(3))));
  MatrixForm n(r1, 2, 2);
  n.at(0, 1) = dx(r1, 0);
  CHECK(trace(n).is_zero());
  CHECK_THROWS_AS(trace(MatrixForm(r1, 2, 3)), DomainError);

  // tr(P dP) = (1/2) d tr(P) for an idempotent; here tr P = 1.
  MatrixForm p(r1, 2, 2);
  p.at(0, 0) = Form::function(one(r1));
  p.at(0, 1) = Form::function(x(r1, 0));
  REQUIRE(wedge(p, p) == p);
  CHECK(trace(wedge(p, exterior_d(p))) == exterior_d(trace(p)).scaled(TauScalar(frac(1, 2))));
  CHECK(trace(wedge(p, exterior_d(p))).is_zero());
}

TEST_CASE("interior product with a chart coordinate") {
  // coordinates: x1 = 0, t = 1
  BaseSpace r2(2, 0);
  const int t = 1;
  auto f = x(r2, 0) * x(r2, 0) + one(r2);
  CHECK(interior_t(S(wedge(dx(r2, t), dx(r2, 0))), t) == S(dx(r2, 0)));
  CHECK(interior_t(S(Form::monomial(0b11, one(r2))), t) == S(-dx(r2, 0)));
  BaseSpace r3(3, 0);
  CHECK(interior_t(S(Form::monomial(0b011, one(r3))), 2).is_zero());
  CHECK(interior_t(S(wedge(dx(r2, 0), dx(r2, t)).times(f)), t) == S(-dx(r2, 0).times(f)));
  CHECK_THROWS_AS(interior_t(S(dx(BaseSpace(1, 1), 1)), 1), DomainError);
}

TEST_CASE("poincare homotopy examples against the scaling integral") {
  BaseSpace r1(1, 0);
  auto xx = x(r1, 0);
  CHECK(poincare_homotopy(S(dx(r1, 0).times(xx))) ==
        S(Form::function((xx * xx).scaled(TauScalar(frac(1, 2))))));
  CHECK(poincare_homotopy(S(dx(r1, 0))) == S(Form::function(xx)));
  BaseSpace t1(0, 1);
  CHECK(poincare_homotopy(S(dx(t1, 0).times(expi(t1, {1})))).is_zero());

  // Quadrature oracle on R^2: for w = f1 dx1 + f2 dx2,
  //   h(w)(p) = int_0^1 (p1 f1(s p) + p2 f2(s p)) ds
  BaseSpace r2(2, 0);
  Sampler s(7);
  SampleBounds b;
  b.gaussian = false;
  for (int n = 0; n < 20; ++n) {
    Form w = s.form(r2, 1, b, 2);
    auto hw = poincare_homotopy(S(w)).as_scalar().coefficient(0);
    auto f1 = w.coefficient(0b01), f2 = w.coefficient(0b10);
    for (auto [p1, p2] : {std::pair{0.3, -0.7}, std::pair{1.1, 0.4}}) {
      double expected = integrate01([&](double sv) {
        std::vector<double> q{sv * p1, sv * p2};
        return p1 * f1.evaluate(q).real() + p2 * f2.evaluate(q).real();
      });
      std::vector<double> p{p1, p2};
      CHECK(hw.evaluate(p).real() == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("normal form and exactness examples") {
  BaseSpace r1t1(1, 1);
  const int th = 1;
  auto xx = x(r1t1, 0);
  SUBCASE("exact forms reduce to zero") {
    Sampler s(3);
    SampleBounds b;
    for (int n = 0; n < 20; ++n) {
      Form eta = s.mixed_form(r1t1, {0, 1}, b);
      CHECK(normal_form(exterior_d(S(eta))).is_zero());
    }
  }
  CHECK(normal_form(S(dx(r1t1, th))) == S(dx(r1t1, th)));
  CHECK(normal_form(S(dx(r1t1, 0).times(xx) + dx(r1t1, th))) == S(dx(r1t1, th)));

  BaseSpace r3(3, 0);
  Form d123 = Form::monomial(0b111, one(r3));
  CHECK_FALSE(is_exact(S(Form::monomial(0b011, x(r3, 2)))));
  CHECK(is_exact(S(d123.times(x(r3, 0).scaled(TauScalar(2))))));
  CHECK_FALSE(is_exact(S(dx(BaseSpace(0, 1), 0))));
}

TEST_CASE("periods over coordinate sub-tori") {
  BaseSpace t1(0, 1);
  Cycle z(t1, {0});
  // int dtheta = 2 pi = -i tau
  CHECK(period(S(dx(t1, 0)), z) == TauScalar::monomial(1, Gaussian(0, -1)));
  // (1/2pi) dtheta written as i/tau dtheta
  CHECK(period(S(dx(t1, 0).scaled(TauScalar::monomial(-1, Gaussian::unit_i()))), z) == TauScalar(1));
  CHECK(period(S(dx(t1, 0).times(expi(t1, {1}))), z).is_zero());

  BaseSpace t2(0, 2);
  Form vol = Form::monomial(0b11, one(t2));
  // -1 = (-i)^2 ; swapped orientation flips the sign
  CHECK(period(S(vol), Cycle(t2, {0, 1})) == TauScalar::monomial(2, -1));
  CHECK(period(S(vol), Cycle(t2, {1, 0})) == TauScalar::monomial(2, 1));
  CHECK_THROWS_AS(Cycle(t2, {0, 0}), DomainError);
  CHECK_THROWS_AS(Cycle(t2, {}), DomainError);
  CHECK_THROWS_AS(Cycle(t2, {2}), DomainError);
  CHECK(coordinate_cycles(BaseSpace(1, 3)).size() == 7);
}

TEST_CASE("property: d d = 0, graded Leibniz, homotopy identity, Stokes") {
  Sampler s(2024);
  SampleBounds b;
  b.tau = true;
  for (int n = 0; n < 150; ++n) {
    BaseSpace base = s.base_space(4, 3, 2);
    int k = s.integer(0, base.dim());
    int l = s.integer(0, base.dim());
    Form w = s.form(base, k, b, 3);
    Form eta = s.form(base, l, b, 3);
    REQUIRE(w.d().d().is_zero());
    Form lhs = wedge(w, eta).d();
    Form rhs = wedge(w.d(), eta) + (k % 2 ? -wedge(w, eta.d()) : wedge(w, eta.d()));
    REQUIRE(lhs == rhs);

    MatrixForm mw = MatrixForm::scalar(w);
    if (base.chart_dim >= 1) {
      auto recon = exterior_d(poincare_homotopy(mw)) + poincare_homotopy(exterior_d(mw)) + retract_to_torus(mw);
      REQUIRE(recon == mw);
    }
    for (const Cycle& z : coordinate_cycles(base)) REQUIRE(period(exterior_d(mw), z).is_zero());
  }
}

TEST_CASE("property: normal form is canonical modulo exact forms") {
  Sampler s(77);
  SampleBounds b;
  for (int n = 0; n < 150; ++n) {
    BaseSpace base = s.base_space(4, 2, 2);
    std::vector<int> degrees;
    for (int k = 0; k <= base.dim(); ++k) degrees.push_back(k);
    MatrixForm w = MatrixForm::scalar(s.mixed_form(base, degrees, b));
    MatrixForm eta = MatrixForm::scalar(s.mixed_form(base, degrees, b));
    MatrixForm nf = normal_form(w);
    REQUIRE(normal_form(nf) == nf);
    REQUIRE(normal_form(w + exterior_d(eta)) == nf);
    // w - nf(w) is exact
    REQUIRE(normal_form(w - nf).is_zero());
    REQUIRE(is_exact(w) == (is_closed(w) && nf.is_zero()));
  }
}

TEST_CASE("property: closed forms are exact iff every coordinate period vanishes") {
  Sampler s(5150);
  SampleBounds b;
  b.fourier_degree = 2;
  int exact_seen = 0, inexact_seen = 0;
  for (int n = 0; n < 200; ++n) {
    BaseSpace base(s.integer(0, 2), s.integer(1, 2));
    int k = s.integer(1, base.torus_dim);
    Form w = s.form(base, k - 1, b, 2).d();
    // sometimes add a harmonic generator, sometimes one with zero period
    for (const Cycle& z : coordinate_cycles(base, k)) {
      if (!s.coin()) continue;
      Mask m = 0;
      for (int j : z.torus_subset) m |= Mask{1} << (base.chart_dim + j);
      w.add(m, ChartFunction::constant(base, TauScalar(s.integer(-2, 2))));
    }
    MatrixForm mw = MatrixForm::scalar(w);
    REQUIRE(is_closed(mw));
    bool periods_vanish = true;
    for (const Cycle& z : coordinate_cycles(base, k)) periods_vanish = periods_vanish && period(mw, z).is_zero();
    REQUIRE(is_exact(mw) == periods_vanish);
    (periods_vanish ? exact_seen : inexact_seen)++;
  }
  CHECK(exact_seen > 10);
  CHECK(inexact_seen > 10);
}
