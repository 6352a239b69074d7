#pragma once

// Exact coefficient ring Q(i)[tau, 1/tau] (tau stands for 2*pi*i) and the
// function ring on R^a x T^b: polynomials in the chart coordinates times
// finite Fourier sums in the angles.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "khat/error.hpp"

namespace khat {

using Rational = mpq_class;

/// Number of coordinates (chart + torus) a base space may carry, including
/// the extra cylinder coordinate adjoined by the transgression cross-check.
inline constexpr int kMaxCoords = 12;

struct Gaussian {
  Rational re;
  Rational im;

  Gaussian() = default;
  Gaussian(Rational real) : re(std::move(real)) {}  // NOLINT: implicit by design of the ring
  Gaussian(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  Gaussian(long real) : re(real) {}  // NOLINT

  static Gaussian unit_i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  Gaussian conj() const { return {re, -im}; }
  /// Throws DomainError for zero.
  Gaussian inverse() const;

  Gaussian operator-() const { return {-re, -im}; }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Finite Laurent sum  sum_n c_n tau^n  with Gaussian-rational c_n.
/// Terms are kept sorted by exponent with no zero coefficients.
class TauScalar {
 public:
  using Term = std::pair<int, Gaussian>;

  TauScalar() = default;
  TauScalar(const Gaussian& c);  // NOLINT
  TauScalar(const Rational& c) : TauScalar(Gaussian(c)) {}  // NOLINT
  TauScalar(long c) : TauScalar(Gaussian(c)) {}  // NOLINT

  /// c * tau^power
  static TauScalar monomial(int power, const Gaussian& c = Gaussian(1));
  static TauScalar tau(int power = 1) { return monomial(power); }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// The tau^0 coefficient.
  Gaussian constant_term() const;
  /// Set when the value is a plain rational (no tau, no imaginary part).
  std::optional<Rational> as_rational() const;
  bool is_integer() const;

  TauScalar mul_tau_power(int shift) const;
  TauScalar conj() const;
  /// Only monomials c*tau^n are units of the Laurent ring.
  std::optional<TauScalar> inverse() const;
  /// Numerical value with tau = 2*pi*i.
  std::complex<double> evaluate() const;

  TauScalar operator-() const;
  TauScalar& operator+=(const TauScalar& o);
  TauScalar& operator-=(const TauScalar& o);
  TauScalar& operator*=(const TauScalar& o) { return *this = *this * o; }
  TauScalar& operator*=(const Gaussian& c);

  friend TauScalar operator+(TauScalar a, const TauScalar& b) { return a += b; }
  friend TauScalar operator-(TauScalar a, const TauScalar& b) { return a -= b; }
  friend TauScalar operator*(const TauScalar& a, const TauScalar& b);
  friend bool operator==(const TauScalar& a, const TauScalar& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term> terms_;
};

/// R^a x T^b.  Coordinates 0..a-1 are chart coordinates x_i, a..a+b-1 are
/// angles theta_j.
struct BaseSpace {
  int chart_dim = 0;
  int torus_dim = 0;

  BaseSpace() = default;
  BaseSpace(int a, int b);

  int dim() const { return chart_dim + torus_dim; }
  bool is_chart(int coord) const { return coord >= 0 && coord < chart_dim; }
  bool is_torus(int coord) const { return coord >= chart_dim && coord < dim(); }
  std::uint32_t chart_mask() const { return (1u << chart_dim) - 1u; }

  friend bool operator==(const BaseSpace&, const BaseSpace&) = default;
};

void require_same_base(const BaseSpace& a, const BaseSpace& b, const char* what);

/// Exact function on R^a x T^b: a finite sum of
///   c * x^alpha * exp(i k . theta)
/// The key packs alpha (chart slots, >= 0) followed by k (torus slots).
class ChartFunction {
 public:
  using Key = std::array<std::int16_t, kMaxCoords>;
  using TermMap = std::map<Key, TauScalar>;

  ChartFunction() = default;
  explicit ChartFunction(BaseSpace base) : base_(base) {}

  static ChartFunction constant(BaseSpace base, const TauScalar& c);
  /// The chart coordinate x_coord.
  static ChartFunction coordinate(BaseSpace base, int coord);
  /// exp(i k . theta); `freq` has one entry per torus coordinate.
  static ChartFunction fourier(BaseSpace base, std::span<const int> freq);
  static ChartFunction term(BaseSpace base, const Key& key, const TauScalar& c);

  const BaseSpace& base() const { return base_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Zero when the function is zero; throws unless constant.
  TauScalar constant_value() const;

  void add_term(const Key& key, const TauScalar& c);

  ChartFunction operator-() const;
  ChartFunction& operator+=(const ChartFunction& o);
  ChartFunction& operator-=(const ChartFunction& o);
  ChartFunction scaled(const TauScalar& c) const;

  friend ChartFunction operator+(ChartFunction a, const ChartFunction& b) { return a += b; }
  friend ChartFunction operator-(ChartFunction a, const ChartFunction& b) { return a -= b; }
  friend ChartFunction operator*(const ChartFunction& a, const ChartFunction& b);
  friend bool operator==(const ChartFunction& a, const ChartFunction& b) {
    return a.base_ == b.base_ && a.terms_ == b.terms_;
  }

  /// d/dx_i for chart coordinates, d/dtheta_j for torus coordinates.
  ChartFunction partial(int coord) const;
  /// (1/2pi) * integral over the torus coordinate: keeps frequency-0 terms.
  ChartFunction circle_average(int torus_coord) const;
  /// Restriction to x = 0 (the retraction onto the torus).
  ChartFunction at_chart_origin() const;
  /// Complex conjugation: i -> -i, tau -> -tau, k -> -k.
  ChartFunction conj() const;
  /// Numerical value at a point (one entry per coordinate), tau = 2*pi*i.
  std::complex<double> evaluate(std::span<const double> point) const;

  /// Total chart degree |alpha| of a key.
  int chart_degree(const Key& key) const;

 private:
  BaseSpace base_;
  TermMap terms_;
};

/// num/den in canonical form (den may be negative).
Rational frac(long num, long den);

/// j! as a rational.
Rational factorial(int j);

}  // namespace khat
