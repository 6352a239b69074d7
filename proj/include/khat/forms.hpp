#pragma once

// Graded exterior algebra over the function ring, matrix-valued forms, the
// chart homotopy operator and canonical representatives modulo exact forms.

#include <cstdint>
#include <map>
#include <vector>

#include "khat/coeff.hpp"

namespace khat {

/// Exterior monomial: bit c set means dx_c (or dtheta_c) is present.  The
/// monomial is read in increasing coordinate order.
using Mask = std::uint32_t;

int mask_degree(Mask m);
/// Sign of dx_{m1} ^ dx_{m2} relative to dx_{m1|m2}; zero when they overlap.
int wedge_sign(Mask m1, Mask m2);

/// Scalar differential form: exterior monomial -> coefficient function.
class Form {
 public:
  using ComponentMap = std::map<Mask, ChartFunction>;

  Form() = default;
  explicit Form(BaseSpace base) : base_(base) {}

  static Form function(const ChartFunction& f);
  static Form constant(BaseSpace base, const TauScalar& c);
  /// The 1-form d(coordinate).
  static Form differential(BaseSpace base, int coord);
  static Form monomial(Mask mask, const ChartFunction& f);

  const BaseSpace& base() const { return base_; }
  const ComponentMap& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }
  /// Coefficient of the given monomial (zero function when absent).
  ChartFunction coefficient(Mask mask) const;

  void add(Mask mask, const ChartFunction& f);

  /// Homogeneous part of the given degree.
  Form component(int degree) const;
  /// Largest degree present, -1 for the zero form.
  int top_degree() const;
  bool has_only_odd_degrees() const;
  bool has_only_even_degrees() const;
  bool is_homogeneous(int degree) const;

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form scaled(const TauScalar& c) const;
  Form times(const ChartFunction& f) const;

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend bool operator==(const Form& a, const Form& b) {
    return a.base_ == b.base_ && a.components_ == b.components_;
  }

  friend Form wedge(const Form& a, const Form& b);
  Form d() const;
  /// Contraction with the coordinate vector field d/d(coord).
  Form interior(int coord) const;
  Form conj() const;

 private:
  BaseSpace base_;
  ComponentMap components_;
};

/// rows x cols matrix of scalar forms; a scalar form is the 1x1 case.
class MatrixForm {
 public:
  MatrixForm() = default;
  MatrixForm(BaseSpace base, int rows, int cols);

  static MatrixForm zero(BaseSpace base, int rows, int cols) { return {base, rows, cols}; }
  static MatrixForm identity(BaseSpace base, int n);
  static MatrixForm scalar(const Form& f);
  /// Constant-coefficient matrix (0-form entries).
  static MatrixForm constant(BaseSpace base, const std::vector<std::vector<TauScalar>>& m);

  const BaseSpace& base() const { return base_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_scalar() const { return rows_ == 1 && cols_ == 1; }

  const Form& at(int r, int c) const { return entries_[index(r, c)]; }
  Form& at(int r, int c) { return entries_[index(r, c)]; }
  /// The single entry of a 1x1 form.
  const Form& as_scalar() const;

  bool is_zero() const;
  int top_degree() const;
  /// True when every entry is homogeneous of the given degree (zero entries count).
  bool is_homogeneous(int degree) const;
  MatrixForm component(int degree) const;

  MatrixForm operator-() const;
  MatrixForm& operator+=(const MatrixForm& o);
  MatrixForm& operator-=(const MatrixForm& o);
  MatrixForm scaled(const TauScalar& c) const;
  MatrixForm transpose() const;
  /// Entrywise conjugation (no transpose).
  MatrixForm conj() const;
  MatrixForm conj_transpose() const { return conj().transpose(); }
  /// Entrywise map.
  template <class F>
  MatrixForm map(F&& f) const {
    MatrixForm out(base_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = f(entries_[i]);
    return out;
  }

  friend MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
  friend MatrixForm operator-(MatrixForm a, const MatrixForm& b) { return a -= b; }
  friend bool operator==(const MatrixForm&, const MatrixForm&) = default;

 private:
  std::size_t index(int r, int c) const;

  BaseSpace base_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Form> entries_;
};

/// Matrix product with entrywise graded wedge.
MatrixForm wedge(const MatrixForm& lhs, const MatrixForm& rhs);
MatrixForm exterior_d(const MatrixForm& w);
/// 1x1 sum of the diagonal entries.
MatrixForm trace(const MatrixForm& w);
/// Contraction with d/d(coord); coord must be a chart coordinate.
MatrixForm interior_t(const MatrixForm& w, int coord);
/// Block-diagonal matrix.
MatrixForm block_diagonal(const MatrixForm& a, const MatrixForm& b);
/// Kronecker product a (x) b with the entries multiplied by wedge.
MatrixForm kronecker(const MatrixForm& a, const MatrixForm& b);

/// Scaling homotopy in the chart directions:
///   w = d h(w) + h(dw) + r(w).
MatrixForm poincare_homotopy(const MatrixForm& w);
/// Pullback along the retraction R^a x T^b -> {0} x T^b.
MatrixForm retract_to_torus(const MatrixForm& w);
/// Canonical representative of w modulo exact forms.
MatrixForm normal_form(const MatrixForm& w);
bool is_closed(const MatrixForm& w);
bool is_exact(const MatrixForm& w);

/// Coordinate sub-torus through the origin, swept by the listed angles
/// (torus indices 0..b-1).  Orientation follows the listed order.
struct Cycle {
  BaseSpace base;
  std::vector<int> torus_subset;

  Cycle(BaseSpace b, std::vector<int> subset);
  int dimension() const { return static_cast<int>(torus_subset.size()); }
};

/// All coordinate sub-tori of the base with increasing index order.
std::vector<Cycle> coordinate_cycles(BaseSpace base);
std::vector<Cycle> coordinate_cycles(BaseSpace base, int dimension);

/// Exact integral of a 1x1 form over the cycle.
TauScalar period(const MatrixForm& w, const Cycle& z);

/// A class in odd forms modulo exact forms, stored as its canonical
/// representative.
class OddClass {
 public:
  OddClass() = default;
  /// Reduces to normal form; throws unless the form is 1x1 with odd degrees only.
  explicit OddClass(const MatrixForm& w);

  const MatrixForm& representative() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }

  OddClass operator-() const;
  friend OddClass operator+(const OddClass& a, const OddClass& b);
  friend OddClass operator-(const OddClass& a, const OddClass& b);
  friend bool operator==(const OddClass&, const OddClass&) = default;

 private:
  MatrixForm rep_;
};

}  // namespace khat
