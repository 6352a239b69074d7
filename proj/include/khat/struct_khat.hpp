#pragma once

// Structured bundles, the CS-hat invariant, realization of odd forms and
// formal differences in K-hat.

#include <optional>
#include <vector>

#include "khat/chern_simons.hpp"

namespace khat {

/// A bundle with a representative connection.  Either a trivial frame with the
/// connection acting on it directly, or the image of an idempotent P inside a
/// trivial bundle with an ambient connection (compressed onto im P).
class StructuredBundle {
 public:
  StructuredBundle() = default;
  explicit StructuredBundle(Connection c) : conn_(std::move(c)) {}
  StructuredBundle(Idempotent p, Connection ambient);

  /// The frame-flat [n].
  static StructuredBundle flat(BaseSpace base, int n) { return StructuredBundle(Connection::flat(base, n)); }
  /// im P with the flat ambient connection.
  static StructuredBundle image(const Idempotent& p);

  const BaseSpace& base() const { return conn_.base(); }
  const Connection& connection() const { return conn_; }
  const std::optional<Idempotent>& projection() const { return proj_; }
  bool is_trivial_frame() const { return !proj_.has_value(); }
  bool is_frame_flat() const { return is_trivial_frame() && conn_.is_frame_flat(); }
  int rank() const;

  friend bool operator==(const StructuredBundle&, const StructuredBundle&) = default;

 private:
  Connection conn_;
  std::optional<Idempotent> proj_;
};

MatrixForm chern_character(const StructuredBundle& v);
StructuredBundle struct_sum(const StructuredBundle& v, const StructuredBundle& w);
StructuredBundle struct_tensor(const StructuredBundle& v, const StructuredBundle& w);
/// Same class: equal descriptors and equivalent representatives.
bool same_class(const StructuredBundle& v, const StructuredBundle& w);

/// CS(flat, connection) for a trivial-frame bundle.
OddClass cs_hat(const StructuredBundle& v);

/// Direct sum of line bundles whose CS-hat class is that of rho.  Chart-only
/// bases in general; on bases with angles only 1-forms whose line bundle
/// already realizes them.
StructuredBundle realize_odd_form(const MatrixForm& rho);

/// Formal difference plus - minus.
class KHatElement {
 public:
  KHatElement() = default;
  explicit KHatElement(BaseSpace base) : base_(base) {}
  KHatElement(const StructuredBundle& v);  // NOLINT: a bundle is an element
  KHatElement(BaseSpace base, std::vector<StructuredBundle> plus, std::vector<StructuredBundle> minus);

  const BaseSpace& base() const { return base_; }
  const std::vector<StructuredBundle>& plus() const { return plus_; }
  const std::vector<StructuredBundle>& minus() const { return minus_; }
  bool is_zero() const { return plus_.empty() && minus_.empty(); }

  KHatElement operator-() const;
  friend KHatElement operator+(const KHatElement& a, const KHatElement& b);
  friend KHatElement operator-(const KHatElement& a, const KHatElement& b);
  friend KHatElement operator*(const KHatElement& a, const KHatElement& b);
  friend bool operator==(const KHatElement&, const KHatElement&) = default;

 private:
  void normalize();

  BaseSpace base_;
  std::vector<StructuredBundle> plus_;
  std::vector<StructuredBundle> minus_;
};

/// Underlying bundles with the connections forgotten.
struct BundleDifference {
  /// Net rank of trivial-frame bundles.
  int trivial_rank = 0;
  /// Idempotent-image bundles with multiplicity +1 or -1 after cancellation.
  std::vector<std::pair<Idempotent, int>> images;

  bool is_zero() const { return trivial_rank == 0 && images.empty(); }
  friend bool operator==(const BundleDifference&, const BundleDifference&) = default;
};

BundleDifference delta(const KHatElement& mu);
MatrixForm ch_khat(const KHatElement& mu);
/// realize_odd_form(theta) - [rank].
KHatElement i_map(const MatrixForm& theta);
/// v + i_map(theta) after checking mu == ch(v) + d theta.
KHatElement realize_even_form(const MatrixForm& mu, const KHatElement& v, const MatrixForm& theta);

}  // namespace khat
