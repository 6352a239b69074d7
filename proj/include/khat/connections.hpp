#pragma once

// Connections d + A on trivial bundles over R^a x T^b, gauge transforms with
// stored inverses, and idempotents.

#include <vector>

#include "khat/forms.hpp"

namespace khat {

class Connection {
 public:
  Connection() = default;
  /// A must be square with degree-1 entries.  With `hermitian` set, A must be
  /// skew-Hermitian under the symbolic conjugation.
  explicit Connection(MatrixForm a, bool hermitian = false);

  static Connection flat(BaseSpace base, int rank);
  /// Line bundle with connection form w (a scalar 1-form).
  static Connection line(const Form& w);

  const BaseSpace& base() const { return a_.base(); }
  int rank() const { return a_.rows(); }
  const MatrixForm& form() const { return a_; }
  bool hermitian() const { return hermitian_; }
  bool is_frame_flat() const { return a_.is_zero(); }

  friend bool operator==(const Connection& x, const Connection& y) { return x.a_ == y.a_; }

 private:
  MatrixForm a_;
  bool hermitian_ = false;
};

MatrixForm curvature(const Connection& c);
/// rank + sum_j (1/j!) tau^-j tr(R^j), truncated to forms of degree <= top_degree
/// (negative: the full series).
MatrixForm chern_character(const Connection& c, int top_degree = -1);
Connection direct_sum(const Connection& x, const Connection& y);
Connection tensor(const Connection& x, const Connection& y);
/// A + A^* == 0 under conjugation i -> -i, tau -> -tau, k -> -k.
bool hermitian_check(const Connection& c);

class GaugeTransform {
 public:
  GaugeTransform() = default;
  /// Checks g g_inv = g_inv g = I and that both are 0-forms.
  GaugeTransform(MatrixForm g, MatrixForm g_inv);

  static GaugeTransform identity(BaseSpace base, int n);
  /// Sends basis vector e_i to e_{perm[i]}.
  static GaugeTransform permutation(BaseSpace base, const std::vector<int>& perm);
  /// diag(e^{i k_r . theta}); one frequency vector per row.
  static GaugeTransform fourier_diagonal(BaseSpace base, const std::vector<std::vector<int>>& freqs);
  /// I + N with N a nilpotent 0-form matrix; the inverse is the finite Neumann series.
  static GaugeTransform unipotent(const MatrixForm& n);
  /// I + N f for a constant nilpotent N.
  static GaugeTransform unipotent(const MatrixForm& n, const ChartFunction& f);

  const BaseSpace& base() const { return g_.base(); }
  int size() const { return g_.rows(); }
  const MatrixForm& matrix() const { return g_; }
  const MatrixForm& inverse_matrix() const { return g_inv_; }
  GaugeTransform inverse() const;

  friend GaugeTransform compose(const GaugeTransform& g, const GaugeTransform& h);
  friend GaugeTransform direct_sum(const GaugeTransform& g, const GaugeTransform& h);

 private:
  struct Trusted {};
  GaugeTransform(MatrixForm g, MatrixForm g_inv, Trusted) : g_(std::move(g)), g_inv_(std::move(g_inv)) {}

  MatrixForm g_;
  MatrixForm g_inv_;
};

/// g^-1 A g + g^-1 dg.
Connection gauge_apply(const GaugeTransform& g, const Connection& c);
/// g^-1 dg.
MatrixForm maurer_cartan(const GaugeTransform& g);

class Idempotent {
 public:
  Idempotent() = default;
  /// Checks that p is a square 0-form with p p = p.
  explicit Idempotent(MatrixForm p);

  const BaseSpace& base() const { return p_.base(); }
  int size() const { return p_.rows(); }
  const MatrixForm& matrix() const { return p_; }
  Idempotent complement() const;

  friend bool operator==(const Idempotent&, const Idempotent&) = default;

 private:
  MatrixForm p_;
};

/// Connection of the splitting im P + im (I-P) inside a flat trivial bundle:
/// A = (2P - I) dP.
Connection grassmann_sum(const Idempotent& p);
/// P A P + (I-P) A (I-P) + (2P - I) dP: the compressed connections on im P and
/// im (I-P), summed.  Equals grassmann_sum when c is flat.
Connection block_compression(const Idempotent& p, const Connection& c);

}  // namespace khat
