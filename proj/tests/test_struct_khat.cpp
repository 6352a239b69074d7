#include <doctest.h>

#include "khat/gauge_theta.hpp"
#include "khat/random.hpp"
#include "khat/struct_khat.hpp"

using namespace khat;

namespace {

Form dx(BaseSpace b, int i) { return Form::differential(b, i); }
ChartFunction x(BaseSpace b, int i) { return ChartFunction::coordinate(b, i); }
MatrixForm S(const Form& f) { return MatrixForm::scalar(f); }

// w = x_{i1} dx_{i2} + ... + f dx_{i(2k+1)} for I = {0, ..., 2k}
Form claim_w(BaseSpace base, int k, const ChartFunction& f) {
  Form w(base);
  for (int m = 0; m < k; ++m) w += dx(base, 2 * m + 1).times(x(base, 2 * m));
  return w + dx(base, 2 * k).times(f);
}

// block-reversing constant connection for P = diag(1, .., 1, 0, .., 0), then a gauge
std::pair<Idempotent, Connection> block_preserving_ambient(Sampler& s, BaseSpace base, const SampleBounds& b) {
  const int n = s.integer(2, 3), split = s.integer(1, n - 1);
  MatrixForm p(base, n, n), c(base, n, n);
  for (int i = 0; i < split; ++i) p.at(i, i) = Form::constant(base, TauScalar(1));
  SampleBounds constant = b;
  constant.poly_degree = 0;
  constant.fourier_degree = 0;
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col)
      if ((r < split) != (col < split) && s.coin()) c.at(r, col) = s.form(base, 1, constant, 2);
  GaugeTransform g = s.gauge(base, n, b);
  Idempotent pg(wedge(wedge(g.inverse_matrix(), p), g.matrix()));
  return {pg, gauge_apply(g, Connection(c))};
}

}  // namespace

TEST_CASE("structured sums and tensors") {
  BaseSpace r2(2, 0);
  StructuredBundle l(Connection::line(dx(r2, 1).times(x(r2, 0))));
  CHECK(struct_sum(l, StructuredBundle::flat(r2, 0)) == l);
  CHECK(struct_sum(StructuredBundle::flat(r2, 2), StructuredBundle::flat(r2, 3)) == StructuredBundle::flat(r2, 5));
  StructuredBundle l2(Connection::line(dx(r2, 0).times(x(r2, 1) * x(r2, 1))));
  CHECK(chern_character(struct_tensor(l, l2)) == wedge(chern_character(l), chern_character(l2)));
  CHECK_THROWS_AS(struct_sum(l, StructuredBundle::flat(BaseSpace(1, 1), 1)), DomainError);

  MatrixForm pm(r2, 2, 2);
  pm.at(0, 0) = Form::constant(r2, TauScalar(1));
  pm.at(0, 1) = Form::function(x(r2, 0));
  StructuredBundle im = StructuredBundle::image(Idempotent(pm));
  CHECK(im.rank() == 1);
  CHECK(struct_sum(im, l).rank() == 2);
  CHECK(chern_character(struct_sum(im, l)) == chern_character(im) + chern_character(l));
  CHECK(chern_character(struct_tensor(im, l)) == wedge(chern_character(im), chern_character(l)));
}

TEST_CASE("cs_hat examples") {
  BaseSpace r3(3, 0);
  CHECK(cs_hat(StructuredBundle::flat(r3, 3)).is_zero());
  Form w = dx(r3, 1).times(x(r3, 0)) + dx(r3, 2).times(x(r3, 1) * x(r3, 0));
  MatrixForm expected = S(w.scaled(TauScalar::tau(-1)) + wedge(w, w.d()).scaled(TauScalar::monomial(-2, frac(1, 2))));
  CHECK(cs_hat(StructuredBundle(Connection::line(w))).representative() == normal_form(expected));
  MatrixForm pm(r3, 2, 2);
  pm.at(0, 0) = Form::constant(r3, TauScalar(1));
  CHECK_THROWS_AS(cs_hat(StructuredBundle::image(Idempotent(pm))), DomainError);
}

TEST_CASE("realization examples") {
  BaseSpace r2(2, 0);
  Form fdx = dx(r2, 0).times(x(r2, 1) * x(r2, 0) + ChartFunction::constant(r2, TauScalar(4)));
  StructuredBundle v = realize_odd_form(S(fdx));
  CHECK(v.connection() == Connection::line(fdx.scaled(TauScalar::tau())));
  CHECK(cs_path(ConnectionPath::straight(Connection::flat(r2, 1), v.connection())) == S(fdx));

  BaseSpace r1(1, 0);
  CHECK(realize_odd_form(S(dx(r1, 0).times(x(r1, 0)))).rank() == 0);

  BaseSpace r3(3, 0);
  MatrixForm rho = S(Form::monomial(0b111, x(r3, 1).scaled(TauScalar(2))));
  StructuredBundle r = realize_odd_form(rho);
  CHECK(cs_hat(r).representative() == normal_form(rho));

  CHECK_THROWS_AS(realize_odd_form(S(Form::constant(r3, TauScalar(1)))), DomainError);
  BaseSpace r1t1(1, 1);
  CHECK_THROWS_AS(realize_odd_form(S(Form::monomial(0b11, x(r1t1, 0)).d() + Form::monomial(0b11, x(r1t1, 0)))),
                  DomainError);
  BaseSpace t3(0, 3);
  // w ^ dw = 2i dth1 dth2 dth3 is not exact
  Form twisted = dx(t3, 2).times(ChartFunction::fourier(t3, std::vector<int>{-1, 0, 0})) +
                 dx(t3, 1).times(ChartFunction::fourier(t3, std::vector<int>{1, 0, 0}));
  CHECK_THROWS_AS(realize_odd_form(S(twisted)), UnsupportedError);
  BaseSpace t1(0, 1);
  MatrixForm unit = S(dx(t1, 0).scaled(TauScalar::monomial(-1, Gaussian::unit_i())));
  CHECK(cs_hat(realize_odd_form(unit)).representative() == unit);
}

TEST_CASE("the line bundle claim: w (dw)^k = (k+1)! f dx_I + exact") {
  Sampler s(606);
  SampleBounds b;
  b.fourier_degree = 0;
  for (int k = 1; k <= 2; ++k) {
    BaseSpace base(2 * k + 1, 0);
    Mask all = (Mask{1} << (2 * k + 1)) - 1;
    for (int n = 0; n < 10; ++n) {
      ChartFunction f = s.function(base, b);
      Form w = claim_w(base, k, f);
      Form power = w;
      for (int m = 0; m < k; ++m) power = wedge(power, w.d());
      CHECK(is_exact(S(power - Form::monomial(all, f.scaled(TauScalar(factorial(k + 1)))))));
    }
  }
}

TEST_CASE("K-hat arithmetic") {
  BaseSpace r2(2, 0);
  StructuredBundle l(Connection::line(dx(r2, 1).times(x(r2, 0))));
  KHatElement mu(r2, {l}, {StructuredBundle::flat(r2, 1)});
  CHECK((mu - mu).is_zero());
  CHECK(mu * KHatElement(StructuredBundle::flat(r2, 1)) == mu);
  CHECK(ch_khat(mu) == chern_character(l) - S(Form::constant(r2, TauScalar(1))));
  CHECK(ch_khat(KHatElement(r2)) == S(Form(r2)));
  CHECK(delta(mu).is_zero());

  KHatElement flats(r2, {StructuredBundle::flat(r2, 2), StructuredBundle::flat(r2, 1)}, {StructuredBundle::flat(r2, 1)});
  CHECK(flats == KHatElement(StructuredBundle::flat(r2, 2)));

  MatrixForm pm(r2, 2, 2);
  pm.at(0, 0) = Form::constant(r2, TauScalar(1));
  pm.at(0, 1) = Form::function(x(r2, 1));
  StructuredBundle im = StructuredBundle::image(Idempotent(pm));
  BundleDifference d = delta(KHatElement(r2, {im}, {StructuredBundle::flat(r2, 1)}));
  CHECK(d.trivial_rank == -1);
  REQUIRE(d.images.size() == 1);
  CHECK(d.images[0].second == 1);
}

TEST_CASE("i-map and even-form realization") {
  BaseSpace r2(2, 0);
  ChartFunction f = x(r2, 1) * x(r2, 1);
  MatrixForm theta = S(dx(r2, 0).times(f));
  KHatElement i = i_map(theta);
  CHECK(i.plus().size() == 1);
  CHECK(ch_khat(i) == exterior_d(theta));
  CHECK(delta(i).is_zero());
  CHECK(i_map(S(dx(r2, 0).times(x(r2, 0)))).is_zero());

  KHatElement three(StructuredBundle::flat(r2, 3));
  MatrixForm mu = S(Form::constant(r2, TauScalar(3))) + exterior_d(theta);
  KHatElement e = realize_even_form(mu, three, theta);
  CHECK(ch_khat(e) == mu);
  CHECK(realize_even_form(ch_khat(three), three, S(Form(r2))) == three);
  CHECK_THROWS_AS(realize_even_form(mu, three, S(Form(r2))), DomainError);
}

TEST_CASE("property: CS-hat is additive and detects gauge-trivial bundles") {
  Sampler s(909);
  SampleBounds b;
  for (int n = 0; n < 30; ++n) {
    BaseSpace base = s.base_space(3, 2, 2);
    StructuredBundle v(s.connection(base, s.integer(1, 2), b)), w(s.connection(base, s.integer(1, 2), b));
    REQUIRE(cs_hat(struct_sum(v, w)) == cs_hat(v) + cs_hat(w));

    // V + [k] = g . flat: CS-hat(V) lies in Lambda_GL with certificate g
    const int k = s.integer(0, 1), rank = s.integer(1, 2);
    GaugeTransform g = s.gauge(base, rank + k, b);
    Connection gc = gauge_apply(g, Connection::flat(base, rank + k));
    MatrixForm cs = cs_hat(StructuredBundle(gc)).representative();
    auto verdict = lambda_gl_test(cs, {g}, 1);
    REQUIRE(verdict.kind == LambdaVerdict::Kind::member);
  }
}

TEST_CASE("property: realization round trip and ch of the i-map") {
  Sampler s(1212);
  SampleBounds b;
  b.gaussian = true;
  for (int n = 0; n < 25; ++n) {
    BaseSpace base(s.integer(1, 4), 0);
    MatrixForm rho = S(s.odd_polynomial_form(base, 3, b));
    StructuredBundle v = realize_odd_form(rho);
    REQUIRE(normal_form(cs_hat(v).representative()) == normal_form(rho));
    REQUIRE(ch_khat(i_map(rho)) == exterior_d(rho));
    REQUIRE(delta(i_map(rho)).is_zero());
  }
}

TEST_CASE("property: ch on K-hat respects products and is class-invariant") {
  Sampler s(3434);
  SampleBounds b;
  for (int n = 0; n < 20; ++n) {
    BaseSpace base = s.base_space(3, 2, 2);
    StructuredBundle v(s.connection(base, s.integer(1, 2), b)), w(s.connection(base, s.integer(1, 2), b));
    StructuredBundle fv = StructuredBundle::flat(base, s.integer(0, 2)), fw = StructuredBundle::flat(base, 1);
    KHatElement mu(base, {v}, {fv}), nu(base, {w}, {fw});
    REQUIRE(ch_khat(mu * nu) == wedge(ch_khat(mu), ch_khat(nu)));
    REQUIRE(is_closed(ch_khat(mu)));
    StructuredBundle gv(gauge_apply(s.gauge(base, v.rank(), b), v.connection()));
    REQUIRE(ch_khat(KHatElement(base, {gv}, {fv})) == ch_khat(mu));
  }
}

TEST_CASE("property: block-preserving curvature makes the compression equivalent") {
  Sampler s(5656);
  SampleBounds b;
  for (int n = 0; n < 25; ++n) {
    BaseSpace base = s.base_space(3, 2, 2);
    auto [p, ambient] = block_preserving_ambient(s, base, b);
    MatrixForm r = curvature(ambient);
    REQUIRE(wedge(wedge(p.matrix(), r), p.complement().matrix()).is_zero());
    Connection compressed = block_compression(p, ambient);
    // every trace term of the integrand vanishes, so the form itself is zero
    MatrixForm diff = ambient.form() - compressed.form();
    MatrixForm rt = curvature(ConnectionPath::straight(compressed, ambient).at(frac(1, 2)));
    MatrixForm chain = diff;
    for (int j = 1; 2 * j - 1 <= base.dim(); ++j, chain = wedge(chain, rt)) REQUIRE(trace(chain).is_zero());
    REQUIRE(cs_path(ConnectionPath::straight(compressed, ambient)).is_zero());
    REQUIRE(equivalent(compressed, ambient));
    REQUIRE(same_class(StructuredBundle(p, ambient), StructuredBundle(p, compressed)));

    Idempotent e = s.idempotent(base, b);
    REQUIRE(cs_path(ConnectionPath::straight(grassmann_sum(e), Connection::flat(base, e.size()))).is_zero());
  }
}
