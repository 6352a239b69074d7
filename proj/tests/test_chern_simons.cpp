#include <doctest.h>

#include "khat/chern_simons.hpp"
#include "khat/random.hpp"

using namespace khat;

namespace {

Form dx(BaseSpace b, int i) { return Form::differential(b, i); }
ChartFunction x(BaseSpace b, int i) { return ChartFunction::coordinate(b, i); }
MatrixForm S(const Form& f) { return MatrixForm::scalar(f); }
TauScalar I() { return TauScalar(Gaussian::unit_i()); }

// sum_j (1/j!) tau^-j w (dw)^{j-1}
MatrixForm line_cs(const Form& w) {
  Form out(w.base());
  Form chain = w;
  for (int j = 1; 2 * j - 1 <= w.base().dim(); ++j) {
    if (j > 1) chain = wedge(chain, w.d());
    out += chain.scaled(TauScalar::monomial(-j, Gaussian(1 / factorial(j))));
  }
  return S(out);
}

}  // namespace

TEST_CASE("cs_path examples") {
  BaseSpace r3(3, 0);
  CHECK(cs_path(ConnectionPath::straight(Connection::flat(r3, 2), Connection::flat(r3, 2))).is_zero());

  // w with w ^ dw != 0
  Form w = dx(r3, 1).times(x(r3, 0)) + dx(r3, 2).times(x(r3, 1));
  REQUIRE_FALSE(wedge(w, w.d()).is_zero());
  auto path = ConnectionPath::straight(Connection::flat(r3, 1), Connection::line(w));
  CHECK(cs_path(path) == line_cs(w));
  CHECK(cs_via_cylinder(path) == line_cs(w));

  auto f = x(r3, 0) * x(r3, 2) + ChartFunction::constant(r3, TauScalar(2));
  Form fdx = dx(r3, 0).times(f);
  CHECK(cs_path(ConnectionPath::straight(Connection::flat(r3, 1), Connection::line(fdx))) ==
        S(fdx.scaled(TauScalar::tau(-1))));
}

TEST_CASE("cs_class and equivalence examples") {
  BaseSpace t1(0, 1);
  Sampler s(8);
  SampleBounds b;
  Connection c = s.connection(BaseSpace(2, 1), 2, b);
  CHECK(cs_class(c, c).is_zero());
  CHECK(equivalent(c, c));

  for (int k = -3; k <= 3; ++k) {
    Connection l = Connection::line(dx(t1, 0).scaled(I() * TauScalar(k)));
    OddClass cls = cs_class(Connection::flat(t1, 1), l);
    CHECK(period(cls.representative(), Cycle(t1, {0})) == TauScalar(k));
    CHECK(equivalent(Connection::flat(t1, 1), l) == (k == 0));
  }

  BaseSpace r2(2, 0);
  for (int n = 0; n < 10; ++n) {
    Connection c0 = s.connection(r2, 2, b);
    CHECK(equivalent(c0, gauge_apply(s.unipotent_gauge(r2, 2, b), c0)));
  }
  CHECK_THROWS_AS(cs_class(Connection::flat(t1, 1), Connection::flat(t1, 2)), DomainError);
}

TEST_CASE("cs_via_cylinder examples") {
  BaseSpace r1t1(1, 1);
  Sampler s(19);
  SampleBounds b;
  Connection c = s.connection(r1t1, 2, b);
  CHECK(cs_via_cylinder(ConnectionPath::constant(c)).is_zero());
  for (int n = 0; n < 5; ++n) {
    MatrixForm a1 = s.one_form_matrix(r1t1, 2, b);
    ConnectionPath p({MatrixForm(r1t1, 2, 2), a1});
    CHECK(cs_via_cylinder(p) == cs_path(p));
  }
}

TEST_CASE("property: transgression, path independence, additivity") {
  Sampler s(1001);
  SampleBounds b;
  b.tau = true;
  for (int n = 0; n < 40; ++n) {
    BaseSpace base = s.base_space(4, 3, 2);
    const int rank = s.integer(1, 3);
    Connection c0 = s.connection(base, rank, b), c1 = s.connection(base, rank, b), c2 = s.connection(base, rank, b);
    MatrixForm cs01 = cs_path(ConnectionPath::straight(c0, c1));
    REQUIRE(exterior_d(cs01) == chern_character(c1) - chern_character(c0));

    auto detour = ConnectionPath::detour(c0, c1, s.one_form_matrix(base, rank, b));
    MatrixForm cs_detour = cs_path(detour);
    REQUIRE(exterior_d(cs_detour) == chern_character(c1) - chern_character(c0));
    REQUIRE(normal_form(cs_detour) == normal_form(cs01));
    REQUIRE(cs_via_cylinder(detour) == cs_detour);

    REQUIRE(cs_class(c0, c1) + cs_class(c1, c2) == cs_class(c0, c2));
  }
}

TEST_CASE("property: CS classes of sums and tensor products") {
  Sampler s(2002);
  SampleBounds b;
  for (int n = 0; n < 25; ++n) {
    BaseSpace base = s.base_space(3, 2, 2);
    const int rv = s.integer(1, 2), rw = s.integer(1, 2);
    Connection v0 = s.connection(base, rv, b), v1 = s.connection(base, rv, b);
    Connection w0 = s.connection(base, rw, b), w1 = s.connection(base, rw, b);
    REQUIRE(cs_class(direct_sum(v0, w0), direct_sum(v1, w1)) == cs_class(v0, v1) + cs_class(w0, w1));
    const MatrixForm lhs = cs_path(ConnectionPath::straight(tensor(v0, w0), tensor(v1, w1)));
    const MatrixForm rhs = wedge(chern_character(v0), cs_path(ConnectionPath::straight(w0, w1))) +
                           wedge(chern_character(w1), cs_path(ConnectionPath::straight(v0, v1)));
    REQUIRE(normal_form(lhs) == normal_form(rhs));
  }
}

TEST_CASE("property: closed gauge loops and block compression") {
  Sampler s(3003);
  SampleBounds b;
  for (int n = 0; n < 25; ++n) {
    BaseSpace base = s.base_space(3, 2, 2);
    const int rank = s.integer(1, 3);
    Connection c = s.connection(base, rank, b);
    GaugeTransform g = s.gauge(base, rank, b);
    Connection gc = gauge_apply(g, c);
    MatrixForm loop = cs_path(ConnectionPath::straight(c, gc)) +
                      cs_path(ConnectionPath::detour(gc, c, s.one_form_matrix(base, rank, b)));
    REQUIRE(is_exact(loop));

    Idempotent e = s.idempotent(base, b);
    REQUIRE(equivalent(Connection::flat(base, e.size()), grassmann_sum(e)));
  }
}
