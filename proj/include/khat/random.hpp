#pragma once

// Seeded generators for the property checks (unit tests, acceptance suite and
// the CLI `suite` verb).  Only the raw 64-bit output of std::mt19937_64 is
// used so a seed produces the same objects on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "khat/connections.hpp"

namespace khat {

struct SampleBounds {
  int poly_degree = 2;     // max total chart degree of a monomial
  int fourier_degree = 2;  // max |k_j| per angle
  int max_terms = 2;       // terms per coefficient function
  int coeff_range = 3;     // numerators in [-range, range]
  bool gaussian = true;    // allow imaginary parts
  bool tau = false;        // allow tau^{+-1} factors
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi].
  int integer(int lo, int hi);
  bool coin() { return integer(0, 1) == 1; }
  Rational rational(int range);
  Gaussian gaussian(int range, bool imaginary);
  TauScalar tau_scalar(const SampleBounds& b);

  ChartFunction function(BaseSpace base, const SampleBounds& b);
  /// Homogeneous form of the given degree with up to `max_monomials` monomials.
  Form form(BaseSpace base, int degree, const SampleBounds& b, int max_monomials = 2);
  /// Mixed-degree form: each degree appears with probability 1/2.
  Form mixed_form(BaseSpace base, const std::vector<int>& degrees, const SampleBounds& b);
  /// n x n matrix of 1-forms; each entry is nonzero with probability `density`.
  MatrixForm one_form_matrix(BaseSpace base, int n, const SampleBounds& b, double density = 0.6);

  Connection connection(BaseSpace base, int rank, const SampleBounds& b, double density = 0.6);
  /// B - B^* for a random B.
  Connection skew_hermitian_connection(BaseSpace base, int rank, const SampleBounds& b);

  GaugeTransform permutation_gauge(BaseSpace base, int n);
  GaugeTransform fourier_gauge(BaseSpace base, int n, int max_k);
  /// I + N with N strictly upper or lower triangular with random function entries.
  GaugeTransform unipotent_gauge(BaseSpace base, int n, const SampleBounds& b);
  /// One of the three families above, or a product of two of them.
  GaugeTransform gauge(BaseSpace base, int n, const SampleBounds& b);

  /// Constant diagonal projection, [[1, f], [0, 0]], or the projection onto
  /// (cos theta, sin theta) when the base has an angle; optionally conjugated by a
  /// unipotent gauge.
  Idempotent idempotent(BaseSpace base, const SampleBounds& b);

  /// Odd form on a chart-only base with polynomial coefficients and degrees <= max_degree.
  Form odd_polynomial_form(BaseSpace base, int max_degree, const SampleBounds& b);

  /// A random base R^a x T^b with a+b in [1, max_dim], a <= max_chart, b <= max_torus.
  BaseSpace base_space(int max_dim, int max_chart, int max_torus);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace khat
