#include <doctest.h>

#include "khat/connections.hpp"
#include "khat/random.hpp"

using namespace khat;

namespace {

Form dx(BaseSpace b, int i) { return Form::differential(b, i); }
ChartFunction x(BaseSpace b, int i) { return ChartFunction::coordinate(b, i); }
MatrixForm S(const Form& f) { return MatrixForm::scalar(f); }
TauScalar I() { return TauScalar(Gaussian::unit_i()); }

MatrixForm upper_x(BaseSpace r1) {
  MatrixForm p(r1, 2, 2);
  p.at(0, 0) = Form::constant(r1, TauScalar(1));
  p.at(0, 1) = Form::function(x(r1, 0));
  return p;
}

}  // namespace

TEST_CASE("curvature examples") {
  BaseSpace r2(2, 0);
  CHECK(curvature(Connection::flat(r2, 3)).is_zero());
  Form w = dx(r2, 1).times(x(r2, 0));
  CHECK(curvature(Connection::line(w)) == S(w.d()));
  BaseSpace r1(1, 0);
  CHECK(curvature(grassmann_sum(Idempotent(upper_x(r1)))).is_zero());
}

TEST_CASE("chern character examples") {
  BaseSpace r2(2, 0);
  CHECK(chern_character(Connection::flat(r2, 4)) == S(Form::constant(r2, TauScalar(4))));
  Connection l = Connection::line(dx(r2, 1).times(x(r2, 0)));
  MatrixForm expected =
      S(Form::constant(r2, TauScalar(1)) + Form::monomial(0b11, ChartFunction::constant(r2, TauScalar::tau(-1))));
  CHECK(chern_character(l) == expected);
  CHECK(chern_character(l, 0) == S(Form::constant(r2, TauScalar(1))));
}

TEST_CASE("direct sum and tensor examples") {
  BaseSpace r2(2, 0);
  CHECK(direct_sum(Connection::flat(r2, 2), Connection::flat(r2, 1)) == Connection::flat(r2, 3));
  Form w = dx(r2, 1).times(x(r2, 0));
  Form w2 = dx(r2, 0).scaled(TauScalar(3));
  Connection l = Connection::line(w), l2 = Connection::line(w2);
  CHECK(direct_sum(l, l2).rank() == 2);
  CHECK(tensor(Connection::flat(r2, 1), l) == l);
  CHECK(tensor(l, l2) == Connection::line(w + w2));
  CHECK_THROWS_AS(direct_sum(l, Connection::flat(BaseSpace(1, 1), 1)), DomainError);
}

TEST_CASE("gauge action examples") {
  BaseSpace t1(0, 1);
  for (int k : {-2, 1, 3}) {
    auto g = GaugeTransform::fourier_diagonal(t1, {{k}});
    CHECK(gauge_apply(g, Connection::flat(t1, 1)) == Connection::line(dx(t1, 0).scaled(I() * TauScalar(k))));
  }
  BaseSpace r2(2, 0);
  Connection l = Connection::line(dx(r2, 1).times(x(r2, 0)));
  CHECK(gauge_apply(GaugeTransform::identity(r2, 1), l) == l);
  MatrixForm bad = MatrixForm::identity(r2, 2);
  CHECK_THROWS_AS(GaugeTransform(bad, bad.scaled(TauScalar(2))), DomainError);
  MatrixForm not_nil = MatrixForm::identity(r2, 2);
  CHECK_THROWS_AS(GaugeTransform::unipotent(not_nil), DomainError);
}

TEST_CASE("grassmann connection examples") {
  BaseSpace r1(1, 0);
  MatrixForm diag(r1, 2, 2);
  diag.at(0, 0) = Form::constant(r1, TauScalar(1));
  CHECK(grassmann_sum(Idempotent(diag)).is_frame_flat());

  MatrixForm p = upper_x(r1);
  MatrixForm dp(r1, 2, 2);
  dp.at(0, 1) = dx(r1, 0);
  MatrixForm expected = wedge(p.scaled(TauScalar(2)) - MatrixForm::identity(r1, 2), dp);
  CHECK(grassmann_sum(Idempotent(p)).form() == expected);
  CHECK_THROWS_AS(Idempotent(p.scaled(TauScalar(2))), DomainError);

  BaseSpace t1(0, 1);
  Sampler s(11);
  SampleBounds b;
  for (int n = 0; n < 20; ++n) CHECK(trace(grassmann_sum(s.idempotent(t1, b)).form()).is_zero());
}

TEST_CASE("hermitian check examples") {
  BaseSpace t1(0, 1);
  CHECK(hermitian_check(Connection::line(dx(t1, 0).scaled(I() * TauScalar(2)))));
  BaseSpace r2(2, 0);
  CHECK_FALSE(hermitian_check(Connection::line(dx(r2, 1).times(x(r2, 0)))));
  CHECK_THROWS_AS(Connection(S(dx(r2, 1).times(x(r2, 0))), true), DomainError);
  // tau is imaginary: tau dx is skew
  CHECK(hermitian_check(Connection::line(dx(r2, 0).scaled(TauScalar::tau()))));
}

TEST_CASE("property: Bianchi, gauge covariance, sums and tensors") {
  Sampler s(31337);
  SampleBounds b;
  b.tau = true;
  for (int n = 0; n < 60; ++n) {
    BaseSpace base = s.base_space(4, 3, 2);
    int rank = s.integer(1, 3);
    Connection c = s.connection(base, rank, b);
    MatrixForm r = curvature(c);
    MatrixForm rj = r;
    for (int j = 1; 2 * j <= base.dim(); ++j, rj = wedge(rj, r)) REQUIRE(exterior_d(trace(rj)).is_zero());

    GaugeTransform g = s.gauge(base, rank, b);
    Connection gc = gauge_apply(g, c);
    REQUIRE(curvature(gc) == wedge(wedge(g.inverse_matrix(), r), g.matrix()));
    REQUIRE(chern_character(gc) == chern_character(c));

    Connection c2 = s.connection(base, s.integer(1, 2), b);
    REQUIRE(chern_character(direct_sum(c, c2)) == chern_character(c) + chern_character(c2));
    REQUIRE(chern_character(tensor(c, c2)) == wedge(chern_character(c), chern_character(c2)));
  }
}

TEST_CASE("property: grassmann connections preserve the splitting") {
  Sampler s(4242);
  SampleBounds b;
  for (int n = 0; n < 40; ++n) {
    BaseSpace base = s.base_space(3, 2, 2);
    Idempotent e = s.idempotent(base, b);
    MatrixForm p = e.matrix();
    MatrixForm q = e.complement().matrix();
    MatrixForm r = curvature(grassmann_sum(e));
    REQUIRE(wedge(wedge(p, r), q).is_zero());
    REQUIRE(wedge(wedge(q, r), p).is_zero());
  }
}

TEST_CASE("property: skew-Hermitian connections have real ch") {
  Sampler s(555);
  SampleBounds b;
  b.tau = true;
  for (int n = 0; n < 40; ++n) {
    BaseSpace base = s.base_space(4, 2, 2);
    Connection c = s.skew_hermitian_connection(base, s.integer(1, 3), b);
    REQUIRE(hermitian_check(c));
    MatrixForm ch = chern_character(c);
    REQUIRE(ch.conj() == ch);
  }
}
