#include "khat/struct_khat.hpp"

#include <algorithm>
#include <stdexcept>

namespace khat {

namespace {

Idempotent identity_projection(BaseSpace base, int n) { return Idempotent(MatrixForm::identity(base, n)); }

// The bundle as (P, ambient connection); trivial frames use P = I.
std::pair<Idempotent, Connection> as_image(const StructuredBundle& v) {
  if (v.projection()) return {*v.projection(), v.connection()};
  return {identity_projection(v.base(), v.connection().rank()), v.connection()};
}

StructuredBundle combine(const StructuredBundle& v, const StructuredBundle& w, bool tensor_product) {
  require_same_base(v.base(), w.base(), tensor_product ? "structured tensor" : "structured sum");
  if (v.is_trivial_frame() && w.is_trivial_frame())
    return StructuredBundle(tensor_product ? tensor(v.connection(), w.connection())
                                           : direct_sum(v.connection(), w.connection()));
  auto [p, a] = as_image(v);
  auto [q, b] = as_image(w);
  if (tensor_product) return {Idempotent(kronecker(p.matrix(), q.matrix())), tensor(a, b)};
  return {Idempotent(block_diagonal(p.matrix(), q.matrix())), direct_sum(a, b)};
}

// The compressed connection on im P, placed next to a fixed connection on im (I-P).
Connection compressed_with_complement(const Idempotent& p, const Connection& on_image, const Connection& on_complement) {
  const MatrixForm& pm = p.matrix();
  const MatrixForm q = p.complement().matrix();
  MatrixForm a = wedge(pm.scaled(TauScalar(2)) - MatrixForm::identity(p.base(), p.size()), exterior_d(pm)) +
                 wedge(wedge(pm, on_image.form()), pm) + wedge(wedge(q, on_complement.form()), q);
  return Connection(std::move(a));
}

}  // namespace

StructuredBundle::StructuredBundle(Idempotent p, Connection ambient) : conn_(std::move(ambient)), proj_(std::move(p)) {
  require_same_base(proj_->base(), conn_.base(), "structured bundle");
  if (proj_->size() != conn_.rank()) throw DomainError("structured bundle: idempotent and connection sizes differ");
}

StructuredBundle StructuredBundle::image(const Idempotent& p) {
  return StructuredBundle(p, Connection::flat(p.base(), p.size()));
}

int StructuredBundle::rank() const {
  if (!proj_) return conn_.rank();
  const MatrixForm tr = trace(proj_->matrix());
  auto r = tr.as_scalar().coefficient(0).constant_value().as_rational();
  if (!r || r->get_den() != 1) throw DomainError("idempotent trace is not an integer constant");
  return static_cast<int>(r->get_num().get_si());
}

MatrixForm chern_character(const StructuredBundle& v) {
  if (v.is_trivial_frame()) return chern_character(v.connection());
  const BaseSpace base = v.base();
  const MatrixForm& p = v.projection()->matrix();
  MatrixForm ch = MatrixForm::scalar(Form::constant(base, TauScalar(v.rank())));
  const MatrixForm r = curvature(block_compression(*v.projection(), v.connection()));
  if (r.is_zero()) return ch;
  MatrixForm prj = p;
  for (int j = 1; 2 * j <= base.dim(); ++j) {
    prj = wedge(prj, r);
    if (prj.is_zero()) break;
    ch += trace(prj).scaled(TauScalar::monomial(-j, Gaussian(1 / factorial(j))));
  }
  return ch;
}

StructuredBundle struct_sum(const StructuredBundle& v, const StructuredBundle& w) { return combine(v, w, false); }

StructuredBundle struct_tensor(const StructuredBundle& v, const StructuredBundle& w) { return combine(v, w, true); }

bool same_class(const StructuredBundle& v, const StructuredBundle& w) {
  if (!(v.projection() == w.projection())) return false;
  if (v.connection().rank() != w.connection().rank()) return false;
  if (v.is_trivial_frame()) return equivalent(v.connection(), w.connection());
  const Idempotent& p = *v.projection();
  return equivalent(compressed_with_complement(p, v.connection(), v.connection()),
                    compressed_with_complement(p, w.connection(), v.connection()));
}

OddClass cs_hat(const StructuredBundle& v) {
  if (!v.is_trivial_frame()) throw DomainError("cs_hat needs a bundle on a trivial frame");
  const Connection& c = v.connection();
  return cs_class(Connection::flat(c.base(), c.rank()), c);
}

// ---------------------------------------------------------------------------

StructuredBundle realize_odd_form(const MatrixForm& rho) {
  if (!rho.is_scalar()) throw DomainError("realize: target must be a scalar form");
  if (!rho.as_scalar().has_only_odd_degrees()) throw DomainError("realize: target has even-degree components");
  const BaseSpace base = rho.base();
  const TauScalar tau = TauScalar::tau();

  if (base.torus_dim > 0) {
    if (!rho.is_homogeneous(1))
      throw UnsupportedError("realize: on bases with angles only 1-form targets are supported");
    Connection line = Connection::line(rho.as_scalar().scaled(tau));
    if (!(cs_hat(StructuredBundle(line)).representative() == normal_form(rho)))
      throw UnsupportedError("realize: the line bundle of this 1-form does not realize it");
    return StructuredBundle(line);
  }

  Connection out = Connection::flat(base, 0);
  MatrixForm remainder = normal_form(rho).is_zero() ? normal_form(rho) : rho;
  while (!remainder.is_zero()) {
    const int top = remainder.top_degree();
    const int k = (top - 1) / 2;
    Connection added = Connection::flat(base, 0);
    const Form top_part = remainder.component(top).as_scalar();
    for (const auto& [mask, f] : top_part.components()) {
      std::vector<int> idx;
      for (int c = 0; c < base.dim(); ++c)
        if (mask & (Mask{1} << c)) idx.push_back(c);
      // w = x_{i1} dx_{i2} + ... + x_{i(2k-1)} dx_{i(2k)} + f dx_{i(2k+1)}
      Form w(base);
      for (int m = 0; m < k; ++m)
        w += Form::differential(base, idx[2 * m + 1]).times(ChartFunction::coordinate(base, idx[2 * m]));
      w += Form::differential(base, idx[2 * k]).times(f);
      added = direct_sum(added, Connection::line(w.scaled(tau)));
    }
    remainder = normal_form(remainder - cs_hat(StructuredBundle(added)).representative());
    if (!remainder.is_zero() && remainder.top_degree() >= top)
      throw std::logic_error("realize: top degree did not drop");
    out = direct_sum(out, added);
  }
  return StructuredBundle(out);
}

// ---------------------------------------------------------------------------

KHatElement::KHatElement(const StructuredBundle& v) : base_(v.base()), plus_{v} { normalize(); }

KHatElement::KHatElement(BaseSpace base, std::vector<StructuredBundle> plus, std::vector<StructuredBundle> minus)
    : base_(base), plus_(std::move(plus)), minus_(std::move(minus)) {
  for (const auto& v : plus_) require_same_base(base_, v.base(), "K-hat element");
  for (const auto& v : minus_) require_same_base(base_, v.base(), "K-hat element");
  normalize();
}

void KHatElement::normalize() {
  int flat_rank = 0;
  auto take_flat = [&](std::vector<StructuredBundle>& side, int sign) {
    std::erase_if(side, [&](const StructuredBundle& v) {
      if (!v.is_frame_flat()) return false;
      flat_rank += sign * v.rank();
      return true;
    });
  };
  take_flat(plus_, 1);
  take_flat(minus_, -1);
  for (auto it = plus_.begin(); it != plus_.end();) {
    auto match = std::find(minus_.begin(), minus_.end(), *it);
    if (match != minus_.end()) {
      minus_.erase(match);
      it = plus_.erase(it);
    } else {
      ++it;
    }
  }
  if (flat_rank > 0) plus_.push_back(StructuredBundle::flat(base_, flat_rank));
  if (flat_rank < 0) minus_.push_back(StructuredBundle::flat(base_, -flat_rank));
}

KHatElement KHatElement::operator-() const { return KHatElement(base_, minus_, plus_); }

KHatElement operator+(const KHatElement& a, const KHatElement& b) {
  require_same_base(a.base_, b.base_, "K-hat sum");
  auto plus = a.plus_, minus = a.minus_;
  plus.insert(plus.end(), b.plus_.begin(), b.plus_.end());
  minus.insert(minus.end(), b.minus_.begin(), b.minus_.end());
  return KHatElement(a.base_, std::move(plus), std::move(minus));
}

KHatElement operator-(const KHatElement& a, const KHatElement& b) { return a + (-b); }

KHatElement operator*(const KHatElement& a, const KHatElement& b) {
  require_same_base(a.base_, b.base_, "K-hat product");
  std::vector<StructuredBundle> plus, minus;
  auto products = [](const std::vector<StructuredBundle>& x, const std::vector<StructuredBundle>& y,
                     std::vector<StructuredBundle>& into) {
    for (const auto& v : x)
      for (const auto& w : y) into.push_back(struct_tensor(v, w));
  };
  products(a.plus_, b.plus_, plus);
  products(a.minus_, b.minus_, plus);
  products(a.minus_, b.plus_, minus);
  products(a.plus_, b.minus_, minus);
  return KHatElement(a.base_, std::move(plus), std::move(minus));
}

BundleDifference delta(const KHatElement& mu) {
  BundleDifference out;
  auto collect = [&](const std::vector<StructuredBundle>& side, int sign) {
    for (const auto& v : side) {
      if (v.is_trivial_frame()) {
        out.trivial_rank += sign * v.rank();
        continue;
      }
      auto it = std::find_if(out.images.begin(), out.images.end(),
                             [&](const auto& e) { return e.first == *v.projection() && e.second == -sign; });
      if (it != out.images.end()) out.images.erase(it);
      else out.images.emplace_back(*v.projection(), sign);
    }
  };
  collect(mu.plus(), 1);
  collect(mu.minus(), -1);
  return out;
}

MatrixForm ch_khat(const KHatElement& mu) {
  MatrixForm out = MatrixForm::scalar(Form(mu.base()));
  for (const auto& v : mu.plus()) out += chern_character(v);
  for (const auto& v : mu.minus()) out -= chern_character(v);
  return out;
}

KHatElement i_map(const MatrixForm& theta) {
  StructuredBundle v = realize_odd_form(theta);
  return KHatElement(theta.base(), {v}, {StructuredBundle::flat(theta.base(), v.rank())});
}

KHatElement realize_even_form(const MatrixForm& mu, const KHatElement& v, const MatrixForm& theta) {
  require_same_base(mu.base(), v.base(), "realize even form");
  if (!(mu == ch_khat(v) + exterior_d(theta)))
    throw DomainError("realize even form: mu differs from ch(v) + d theta");
  return v + i_map(theta);
}

}  // namespace khat
