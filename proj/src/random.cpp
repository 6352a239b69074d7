#include "khat/random.hpp"

#include <algorithm>

namespace khat {

int Sampler::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng_() % span);
}

Rational Sampler::rational(int range) {
  int num = integer(-range, range);
  int den = integer(1, 3);
  return frac(num, den);
}

Gaussian Sampler::gaussian(int range, bool imaginary) {
  Gaussian g(rational(range));
  if (imaginary && integer(0, 2) == 0) g.im = rational(range);
  if (g.is_zero()) g.re = Rational(1);
  return g;
}

TauScalar Sampler::tau_scalar(const SampleBounds& b) {
  int power = b.tau ? integer(-1, 1) : 0;
  return TauScalar::monomial(power, gaussian(b.coeff_range, b.gaussian));
}

ChartFunction Sampler::function(BaseSpace base, const SampleBounds& b) {
  ChartFunction f(base);
  const int terms = integer(1, std::max(1, b.max_terms));
  for (int t = 0; t < terms; ++t) {
    ChartFunction::Key key{};
    int budget = integer(0, b.poly_degree);
    for (int i = 0; i < base.chart_dim && budget > 0; ++i) {
      int e = integer(0, budget);
      key[i] = static_cast<std::int16_t>(e);
      budget -= e;
    }
    if (base.chart_dim > 0 && budget > 0) key[integer(0, base.chart_dim - 1)] += static_cast<std::int16_t>(budget);
    for (int j = base.chart_dim; j < base.dim(); ++j)
      key[j] = static_cast<std::int16_t>(integer(-b.fourier_degree, b.fourier_degree));
    f.add_term(key, tau_scalar(b));
  }
  return f;
}

Form Sampler::form(BaseSpace base, int degree, const SampleBounds& b, int max_monomials) {
  Form out(base);
  if (degree < 0 || degree > base.dim()) return out;
  std::vector<Mask> masks;
  for (Mask m = 0; m < (Mask{1} << base.dim()); ++m)
    if (mask_degree(m) == degree) masks.push_back(m);
  const int count = integer(1, std::max(1, max_monomials));
  for (int i = 0; i < count; ++i) {
    Mask m = masks[static_cast<std::size_t>(integer(0, static_cast<int>(masks.size()) - 1))];
    out.add(m, function(base, b));
  }
  return out;
}

Form Sampler::mixed_form(BaseSpace base, const std::vector<int>& degrees, const SampleBounds& b) {
  Form out(base);
  for (int k : degrees)
    if (coin()) out += form(base, k, b);
  if (out.is_zero() && !degrees.empty()) out += form(base, degrees.front(), b);
  return out;
}

MatrixForm Sampler::one_form_matrix(BaseSpace base, int n, const SampleBounds& b, double density) {
  MatrixForm out(base, n, n);
  if (base.dim() == 0) return out;
  const auto threshold = static_cast<int>(density * 1000.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (integer(0, 999) < threshold) out.at(r, c) = form(base, 1, b, 2);
  return out;
}

Connection Sampler::connection(BaseSpace base, int rank, const SampleBounds& b, double density) {
  return Connection(one_form_matrix(base, rank, b, density));
}

Connection Sampler::skew_hermitian_connection(BaseSpace base, int rank, const SampleBounds& b) {
  MatrixForm m = one_form_matrix(base, rank, b);
  return Connection(m - m.conj_transpose(), true);
}

GaugeTransform Sampler::permutation_gauge(BaseSpace base, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[integer(0, i)]);
  return GaugeTransform::permutation(base, perm);
}

GaugeTransform Sampler::fourier_gauge(BaseSpace base, int n, int max_k) {
  std::vector<std::vector<int>> freqs(static_cast<std::size_t>(n), std::vector<int>(base.torus_dim));
  for (auto& row : freqs)
    for (int& k : row) k = integer(-max_k, max_k);
  return GaugeTransform::fourier_diagonal(base, freqs);
}

GaugeTransform Sampler::unipotent_gauge(BaseSpace base, int n, const SampleBounds& b) {
  MatrixForm nil(base, n, n);
  const bool upper = coin();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if ((upper ? r < c : r > c) && coin()) nil.at(r, c) = Form::function(function(base, b));
  return GaugeTransform::unipotent(nil);
}

GaugeTransform Sampler::gauge(BaseSpace base, int n, const SampleBounds& b) {
  auto pick = [&]() {
    switch (integer(0, 2)) {
      case 0: return permutation_gauge(base, n);
      case 1: return fourier_gauge(base, n, b.fourier_degree);
      default: return unipotent_gauge(base, n, b);
    }
  };
  GaugeTransform g = pick();
  if (integer(0, 2) == 0) g = compose(g, pick());
  return g;
}

Idempotent Sampler::idempotent(BaseSpace base, const SampleBounds& b) {
  const int family = integer(0, base.torus_dim > 0 ? 2 : 1);
  MatrixForm p;
  if (family == 0) {
    const int n = integer(2, 3);
    p = MatrixForm(base, n, n);
    for (int i = 0; i < n; ++i)
      if (coin()) p.at(i, i) = Form::constant(base, TauScalar(1));
  } else if (family == 1) {
    p = MatrixForm(base, 2, 2);
    p.at(0, 0) = Form::constant(base, TauScalar(1));
    p.at(0, 1) = Form::function(function(base, b));
  } else {
    std::vector<int> k2(static_cast<std::size_t>(base.torus_dim), 0), km2 = k2;
    k2[0] = 2;
    km2[0] = -2;
    const auto e2 = ChartFunction::fourier(base, k2), em2 = ChartFunction::fourier(base, km2);
    const auto half = ChartFunction::constant(base, TauScalar(frac(1, 2)));
    const auto cos2 = (e2 + em2).scaled(TauScalar(frac(1, 4)));
    p = MatrixForm(base, 2, 2);
    p.at(0, 0) = Form::function(half + cos2);
    p.at(1, 1) = Form::function(half - cos2);
    const auto sincos = (e2 - em2).scaled(TauScalar(Gaussian(Rational(0), frac(-1, 4))));
    p.at(0, 1) = Form::function(sincos);
    p.at(1, 0) = Form::function(sincos);
  }
  if (coin()) {
    GaugeTransform g = unipotent_gauge(base, p.rows(), b);
    p = wedge(wedge(g.matrix(), p), g.inverse_matrix());
  }
  return Idempotent(p);
}

Form Sampler::odd_polynomial_form(BaseSpace base, int max_degree, const SampleBounds& b) {
  if (base.torus_dim != 0) throw DomainError("odd polynomial forms live on chart-only bases");
  SampleBounds poly = b;
  poly.fourier_degree = 0;
  std::vector<int> degrees;
  for (int k = 1; k <= std::min(max_degree, base.dim()); k += 2) degrees.push_back(k);
  return mixed_form(base, degrees, poly);
}

BaseSpace Sampler::base_space(int max_dim, int max_chart, int max_torus) {
  for (;;) {
    int a = integer(0, max_chart);
    int t = integer(0, max_torus);
    if (a + t >= 1 && a + t <= max_dim) return {a, t};
  }
}

}  // namespace khat
