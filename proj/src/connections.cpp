#include "khat/connections.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace khat {

namespace {

bool is_zero_form_matrix(const MatrixForm& m) { return m.is_homogeneous(0); }

MatrixForm power(const MatrixForm& m, int k) {
  MatrixForm out = MatrixForm::identity(m.base(), m.rows());
  for (int i = 0; i < k; ++i) out = wedge(out, m);
  return out;
}

}  // namespace

Connection::Connection(MatrixForm a, bool hermitian) : a_(std::move(a)), hermitian_(hermitian) {
  if (!a_.is_square()) throw DomainError("connection form must be square");
  if (!a_.is_homogeneous(1)) throw DomainError("connection form must consist of 1-forms");
  if (hermitian_ && !hermitian_check(*this))
    throw DomainError("connection flagged Hermitian is not skew-Hermitian");
}

Connection Connection::flat(BaseSpace base, int rank) {
  if (rank < 0) throw DomainError("negative rank");
  return Connection(MatrixForm(base, rank, rank), true);
}

Connection Connection::line(const Form& w) { return Connection(MatrixForm::scalar(w)); }

MatrixForm curvature(const Connection& c) {
  const MatrixForm& a = c.form();
  return exterior_d(a) + wedge(a, a);
}

MatrixForm chern_character(const Connection& c, int top_degree) {
  const BaseSpace base = c.base();
  const int top = top_degree < 0 ? base.dim() : std::min(top_degree, base.dim());
  MatrixForm ch = MatrixForm::scalar(Form::constant(base, TauScalar(c.rank())));
  if (c.is_frame_flat()) return ch;
  const MatrixForm r = curvature(c);
  if (r.is_zero()) return ch;
  MatrixForm rj = r;
  for (int j = 1; 2 * j <= top; ++j) {
    if (j > 1) rj = wedge(rj, r);
    if (rj.is_zero()) break;
    ch += trace(rj).scaled(TauScalar::monomial(-j, Gaussian(1 / factorial(j))));
  }
  if (!is_closed(ch)) throw std::logic_error("chern character form is not closed");
  return ch;
}

Connection direct_sum(const Connection& x, const Connection& y) {
  require_same_base(x.base(), y.base(), "direct sum");
  return Connection(block_diagonal(x.form(), y.form()), x.hermitian() && y.hermitian());
}

Connection tensor(const Connection& x, const Connection& y) {
  require_same_base(x.base(), y.base(), "tensor product");
  const BaseSpace base = x.base();
  MatrixForm a = kronecker(x.form(), MatrixForm::identity(base, y.rank())) +
                 kronecker(MatrixForm::identity(base, x.rank()), y.form());
  return Connection(std::move(a), x.hermitian() && y.hermitian());
}

bool hermitian_check(const Connection& c) { return (c.form() + c.form().conj_transpose()).is_zero(); }

// ---------------------------------------------------------------------------

GaugeTransform::GaugeTransform(MatrixForm g, MatrixForm g_inv) : g_(std::move(g)), g_inv_(std::move(g_inv)) {
  if (!g_.is_square() || !(g_.base() == g_inv_.base()) || g_.rows() != g_inv_.rows() ||
      !g_inv_.is_square())
    throw DomainError("gauge transform: shape or base mismatch with its inverse");
  if (!is_zero_form_matrix(g_) || !is_zero_form_matrix(g_inv_))
    throw DomainError("gauge transform entries must be functions");
  const MatrixForm id = MatrixForm::identity(g_.base(), g_.rows());
  if (!(wedge(g_, g_inv_) == id) || !(wedge(g_inv_, g_) == id))
    throw DomainError("gauge transform: stored inverse does not satisfy g g^-1 = I");
}

GaugeTransform GaugeTransform::identity(BaseSpace base, int n) {
  auto id = MatrixForm::identity(base, n);
  return {id, id, Trusted{}};
}

GaugeTransform GaugeTransform::permutation(BaseSpace base, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw DomainError("permutation: not a permutation of 0..n-1");
    seen[p] = true;
  }
  MatrixForm g(base, n, n);
  for (int i = 0; i < n; ++i) g.at(perm[i], i) = Form::constant(base, TauScalar(1));
  return {g, g.transpose(), Trusted{}};
}

GaugeTransform GaugeTransform::fourier_diagonal(BaseSpace base, const std::vector<std::vector<int>>& freqs) {
  const int n = static_cast<int>(freqs.size());
  MatrixForm g(base, n, n), gi(base, n, n);
  for (int r = 0; r < n; ++r) {
    std::vector<int> neg(freqs[r].size());
    std::transform(freqs[r].begin(), freqs[r].end(), neg.begin(), [](int k) { return -k; });
    g.at(r, r) = Form::function(ChartFunction::fourier(base, freqs[r]));
    gi.at(r, r) = Form::function(ChartFunction::fourier(base, neg));
  }
  return {g, gi, Trusted{}};
}

GaugeTransform GaugeTransform::unipotent(const MatrixForm& n) {
  if (!n.is_square()) throw DomainError("unipotent: N must be square");
  if (!is_zero_form_matrix(n)) throw DomainError("unipotent: N must consist of functions");
  const int size = n.rows();
  if (!power(n, size).is_zero()) throw DomainError("unipotent: N is not nilpotent");
  const BaseSpace base = n.base();
  MatrixForm g = MatrixForm::identity(base, size) + n;
  MatrixForm inv = MatrixForm::identity(base, size);
  MatrixForm term = MatrixForm::identity(base, size);
  for (int k = 1; k < size; ++k) {
    term = -wedge(term, n);
    inv += term;
  }
  return {g, inv, Trusted{}};
}

GaugeTransform GaugeTransform::unipotent(const MatrixForm& n, const ChartFunction& f) {
  return unipotent(n.map([&](const Form& e) { return e.times(f); }));
}

GaugeTransform GaugeTransform::inverse() const { return {g_inv_, g_, Trusted{}}; }

GaugeTransform compose(const GaugeTransform& g, const GaugeTransform& h) {
  require_same_base(g.base(), h.base(), "gauge composition");
  if (g.size() != h.size()) throw DomainError("gauge composition: size mismatch");
  return {wedge(g.g_, h.g_), wedge(h.g_inv_, g.g_inv_), GaugeTransform::Trusted{}};
}

GaugeTransform direct_sum(const GaugeTransform& g, const GaugeTransform& h) {
  require_same_base(g.base(), h.base(), "gauge direct sum");
  return {block_diagonal(g.g_, h.g_), block_diagonal(g.g_inv_, h.g_inv_), GaugeTransform::Trusted{}};
}

MatrixForm maurer_cartan(const GaugeTransform& g) { return wedge(g.inverse_matrix(), exterior_d(g.matrix())); }

Connection gauge_apply(const GaugeTransform& g, const Connection& c) {
  require_same_base(g.base(), c.base(), "gauge action");
  if (g.size() != c.rank()) throw DomainError("gauge action: size does not match the rank");
  const MatrixForm& gi = g.inverse_matrix();
  MatrixForm a = wedge(wedge(gi, c.form()), g.matrix()) + maurer_cartan(g);
  Connection out(std::move(a));
  if (!(curvature(out) == wedge(wedge(gi, curvature(c)), g.matrix())))
    throw std::logic_error("gauge action: curvature failed to transform by conjugation");
  return out;
}

// ---------------------------------------------------------------------------

Idempotent::Idempotent(MatrixForm p) : p_(std::move(p)) {
  if (!p_.is_square()) throw DomainError("idempotent must be square");
  if (!is_zero_form_matrix(p_)) throw DomainError("idempotent entries must be functions");
  if (!(wedge(p_, p_) == p_)) throw DomainError("matrix is not idempotent: P P != P");
}

Idempotent Idempotent::complement() const {
  return Idempotent(MatrixForm::identity(base(), size()) - p_);
}

Connection grassmann_sum(const Idempotent& p) {
  return block_compression(p, Connection::flat(p.base(), p.size()));
}

Connection block_compression(const Idempotent& p, const Connection& c) {
  require_same_base(p.base(), c.base(), "block compression");
  if (p.size() != c.rank()) throw DomainError("block compression: size mismatch");
  const MatrixForm& pm = p.matrix();
  const MatrixForm id = MatrixForm::identity(p.base(), p.size());
  const MatrixForm q = id - pm;
  MatrixForm a = wedge(pm.scaled(TauScalar(2)) - id, exterior_d(pm));
  if (!c.is_frame_flat()) a += wedge(wedge(pm, c.form()), pm) + wedge(wedge(q, c.form()), q);
  return Connection(std::move(a));
}

}  // namespace khat
