#include <doctest.h>

#include <cmath>
#include <numbers>

#include "khat/holonomy.hpp"
#include "khat/random.hpp"

using namespace khat;

namespace {

Form dth(BaseSpace b, int i) { return Form::differential(b, i); }
TauScalar I() { return TauScalar(Gaussian::unit_i()); }

// exp(-oint A) for a scalar A = i c dtheta
std::complex<double> closed_form(double c) { return std::exp(std::complex<double>(0, -2.0 * std::numbers::pi * c)); }

Connection cos_connection(BaseSpace t1) {
  // i (1/3 + cos theta) dtheta
  auto cosf = (ChartFunction::fourier(t1, std::vector<int>{1}) + ChartFunction::fourier(t1, std::vector<int>{-1}))
                  .scaled(TauScalar(frac(1, 2)));
  auto f = ChartFunction::constant(t1, TauScalar(frac(1, 3))) + cosf;
  return Connection::line(dth(t1, 0).times(f).scaled(I()));
}

}  // namespace

TEST_CASE("transport examples against the closed form") {
  BaseSpace t1(0, 1);
  Loop loop(t1, 0);
  auto id = NumericMatrix::identity(2);
  CHECK(max_distance(parallel_transport(Connection::flat(t1, 2), loop), id) == 0.0);
  for (int k = -3; k <= 3; ++k) {
    auto t = adaptive_transport(Connection::line(dth(t1, 0).scaled(I() * TauScalar(k))), loop);
    CHECK(t.converged);
    const auto& s = t.value;
    CHECK(std::abs(s.at(0, 0) - closed_form(k)) < 1e-8);
    CHECK(std::abs(s.at(0, 0) - 1.0) < 1e-8);
  }
  auto third = adaptive_transport(Connection::line(dth(t1, 0).scaled(I() * TauScalar(frac(1, 3)))), loop).value;
  CHECK(std::abs(third.at(0, 0) - closed_form(1.0 / 3)) < 1e-8);
  CHECK(std::abs(third.at(0, 0) - 1.0) > 0.5);
  CHECK_THROWS_AS(parallel_transport(Connection::flat(t1, 1), loop, 8), DomainError);
  CHECK_THROWS_AS(Loop(BaseSpace(1, 1), 0), DomainError);
}

TEST_CASE("trivial holonomy examples") {
  BaseSpace t1(0, 1);
  CHECK(is_trivial_holonomy(Connection::flat(t1, 3)));
  auto g = GaugeTransform::fourier_diagonal(t1, {{1}});
  CHECK(is_trivial_holonomy(gauge_apply(g, Connection::flat(t1, 1))));
  CHECK_FALSE(is_trivial_holonomy(Connection::line(dth(t1, 0).scaled(I() * TauScalar(frac(1, 2))))));
  auto half = adaptive_transport(Connection::line(dth(t1, 0).scaled(I() * TauScalar(frac(1, 2)))), Loop(t1, 0)).value;
  CHECK(std::abs(half.at(0, 0) + 1.0) < 1e-8);

  BaseSpace r1t2(1, 2);
  auto h = GaugeTransform::fourier_diagonal(r1t2, {{1, -2}, {0, 3}});
  HolonomyCheck check = check_holonomy(gauge_apply(h, Connection::flat(r1t2, 2)));
  CHECK(check.trivial);
  CHECK(check.converged);
}

TEST_CASE("RK4 convergence order") {
  BaseSpace t1(0, 1);
  Connection c = cos_connection(t1);
  const auto exact = closed_form(1.0 / 3);
  double e16 = std::abs(parallel_transport(c, Loop(t1, 0), 16).at(0, 0) - exact);
  double e32 = std::abs(parallel_transport(c, Loop(t1, 0), 32).at(0, 0) - exact);
  CHECK(std::log2(e16 / e32) >= 3.5);
}

TEST_CASE("property: gauge covariance of transport") {
  Sampler s(88);
  SampleBounds b;
  b.coeff_range = 1;
  b.gaussian = true;
  for (int n = 0; n < 10; ++n) {
    BaseSpace base(s.integer(0, 1), s.integer(1, 2));
    const int rank = s.integer(1, 2);
    // skew-Hermitian keeps the transport bounded
    Connection c = s.skew_hermitian_connection(base, rank, b);
    GaugeTransform g = s.gauge(base, rank, b);
    Loop loop(base, base.chart_dim);
    auto p = loop.point(0.0);
    auto lhs = parallel_transport(gauge_apply(g, c), loop, 2048);
    auto rhs = evaluate(g.inverse_matrix(), p) * parallel_transport(c, loop, 2048) * evaluate(g.matrix(), p);
    CHECK(max_distance(lhs, rhs) < 1e-7);
  }
}
