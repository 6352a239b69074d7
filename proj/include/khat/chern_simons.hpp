#pragma once

// Chern-Simons transgression forms along polynomial paths of connections.

#include <vector>

#include "khat/connections.hpp"

namespace khat {

/// A(t) = sum_k coefficients[k] t^k for t in [0, 1].
class ConnectionPath {
 public:
  ConnectionPath() = default;
  explicit ConnectionPath(std::vector<MatrixForm> coefficients);

  /// A0 + t (A1 - A0).
  static ConnectionPath straight(const Connection& from, const Connection& to);
  /// Straight path plus t(1 - t) B: same endpoints, different interior.
  static ConnectionPath detour(const Connection& from, const Connection& to, const MatrixForm& b);
  static ConnectionPath constant(const Connection& c);

  const BaseSpace& base() const { return coeffs_.front().base(); }
  int rank() const { return coeffs_.front().rows(); }
  const std::vector<MatrixForm>& coefficients() const { return coeffs_; }
  /// The connection at a rational parameter value.
  Connection at(const Rational& t) const;
  Connection start() const { return at(0); }
  Connection end() const { return at(1); }

 private:
  std::vector<MatrixForm> coeffs_;
};

/// int_0^1 sum_j 1/(j-1)! tau^-j tr(A'(t) R(t)^{j-1}) dt, integrated exactly.
MatrixForm cs_path(const ConnectionPath& path);
/// Same form computed on the cylinder base x [0,1]: int_0^1 i_{d/dt} ch(A-bar).
MatrixForm cs_via_cylinder(const ConnectionPath& path);
/// Class of cs along the straight path, as a canonical representative.
OddClass cs_class(const Connection& from, const Connection& to);
bool equivalent(const Connection& from, const Connection& to);

}  // namespace khat
