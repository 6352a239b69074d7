#pragma once

// Numerical parallel transport around coordinate circles.  The only module
// that works in floating point; nothing here feeds back into exact values.

#include <complex>
#include <vector>

#include "khat/connections.hpp"

namespace khat {

struct NumericMatrix {
  int n = 0;
  std::vector<std::complex<double>> entries;  // row-major

  explicit NumericMatrix(int size = 0) : n(size), entries(static_cast<std::size_t>(size) * size) {}
  static NumericMatrix identity(int size);

  std::complex<double>& at(int r, int c) { return entries[static_cast<std::size_t>(r) * n + c]; }
  std::complex<double> at(int r, int c) const { return entries[static_cast<std::size_t>(r) * n + c]; }

  friend NumericMatrix operator*(const NumericMatrix& a, const NumericMatrix& b);
  /// max |a_ij - b_ij|
  friend double max_distance(const NumericMatrix& a, const NumericMatrix& b);
};

/// Values of a matrix of functions (0-forms) at a point, tau = 2 pi i.
NumericMatrix evaluate(const MatrixForm& m, const std::vector<double>& point);

/// The circle swept by one angle, all other coordinates fixed at the basepoint.
struct Loop {
  BaseSpace base;
  int torus_coord = 0;            // absolute coordinate index, must be an angle
  std::vector<Rational> basepoint;  // one value per coordinate; the swept one is ignored

  Loop(BaseSpace b, int coord, std::vector<Rational> point);
  /// Loop through the origin.
  Loop(BaseSpace b, int coord);
  std::vector<double> point(double u) const;
};

/// RK4 solution of S' = -A(gamma)[gamma'] S, S(0) = I, returning S(2 pi).
NumericMatrix parallel_transport(const Connection& c, const Loop& loop, int steps = 256);

/// Transport with the step count doubled from 256 (up to 2^14) until two
/// successive results agree within tol/10.
struct AdaptiveTransport {
  NumericMatrix value;
  int steps = 0;
  bool converged = false;
};
AdaptiveTransport adaptive_transport(const Connection& c, const Loop& loop, double tol = 1e-8);

struct HolonomyCheck {
  bool trivial = true;
  double max_defect = 0.0;  // max over loops of |S - I|
  int max_steps = 0;        // finest resolution used
  bool converged = true;
};

/// Transport around every coordinate circle through a fixed grid of basepoints,
/// doubling the step count from 256 until successive results agree within tol/10.
HolonomyCheck check_holonomy(const Connection& c, double tol = 1e-8);
bool is_trivial_holonomy(const Connection& c, double tol = 1e-8);

}  // namespace khat
