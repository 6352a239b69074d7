#include "khat/chern_simons.hpp"

#include <algorithm>

namespace khat {

namespace {

// Polynomial in t with matrix-form coefficients.
using TPoly = std::vector<MatrixForm>;

TPoly tpoly_add(const TPoly& a, const TPoly& b) {
  TPoly out = a.size() >= b.size() ? a : b;
  const TPoly& shorter = a.size() >= b.size() ? b : a;
  for (std::size_t k = 0; k < shorter.size(); ++k) out[k] += shorter[k];
  return out;
}

TPoly tpoly_wedge(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  const MatrixForm& ra = a.front();
  const MatrixForm& cb = b.front();
  TPoly out(a.size() + b.size() - 1, MatrixForm(ra.base(), ra.rows(), cb.cols()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += wedge(a[i], b[j]);
  }
  return out;
}

// int_0^1 sum_k c_k t^k dt
MatrixForm integrate_unit(const TPoly& p) {
  MatrixForm out(p.front().base(), p.front().rows(), p.front().cols());
  for (std::size_t k = 0; k < p.size(); ++k)
    if (!p[k].is_zero()) out += p[k].scaled(TauScalar(frac(1, static_cast<long>(k) + 1)));
  return out;
}

// Embedding R^a x T^b -> R^{a+1} x T^b with the new chart coordinate t at index a.
struct Cylinder {
  BaseSpace base;
  BaseSpace ext;
  int t;

  explicit Cylinder(BaseSpace b) : base(b), ext(b.chart_dim + 1, b.torus_dim), t(b.chart_dim) {}

  Mask lift(Mask m) const {
    const Mask low = m & base.chart_mask();
    return low | ((m & ~base.chart_mask()) << 1);
  }
  Mask drop(Mask m) const {
    const Mask low = m & base.chart_mask();
    return low | ((m >> 1) & ~base.chart_mask());
  }

  ChartFunction lift(const ChartFunction& f, int t_power) const {
    ChartFunction out(ext);
    for (const auto& [k, c] : f.terms()) {
      ChartFunction::Key nk{};
      for (int i = 0; i < base.chart_dim; ++i) nk[i] = k[i];
      nk[t] = static_cast<std::int16_t>(t_power);
      for (int j = base.chart_dim; j < base.dim(); ++j) nk[j + 1] = k[j];
      out.add_term(nk, c);
    }
    return out;
  }

  Form lift(const Form& w, int t_power) const {
    Form out(ext);
    for (const auto& [m, f] : w.components()) out.add(lift(m), lift(f, t_power));
    return out;
  }

  // Integrates t over [0,1] and drops the t coordinate; w must have no dt.
  Form integrate_t(const Form& w) const {
    Form out(base);
    for (const auto& [m, f] : w.components()) {
      ChartFunction g(base);
      for (const auto& [k, c] : f.terms()) {
        ChartFunction::Key nk{};
        for (int i = 0; i < base.chart_dim; ++i) nk[i] = k[i];
        for (int j = base.chart_dim; j < base.dim(); ++j) nk[j] = k[j + 1];
        g.add_term(nk, c * TauScalar(frac(1, k[t] + 1)));
      }
      out.add(drop(m), g);
    }
    return out;
  }
};

}  // namespace

ConnectionPath::ConnectionPath(std::vector<MatrixForm> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw DomainError("connection path needs at least one coefficient");
  for (const auto& c : coeffs_) {
    require_same_base(coeffs_.front().base(), c.base(), "connection path");
    if (!c.is_square() || c.rows() != coeffs_.front().rows())
      throw DomainError("connection path: coefficient shapes differ");
    if (!c.is_homogeneous(1)) throw DomainError("connection path: coefficients must be 1-forms");
  }
}

ConnectionPath ConnectionPath::straight(const Connection& from, const Connection& to) {
  require_same_base(from.base(), to.base(), "straight path");
  if (from.rank() != to.rank()) throw DomainError("straight path: rank mismatch");
  return ConnectionPath({from.form(), to.form() - from.form()});
}

ConnectionPath ConnectionPath::detour(const Connection& from, const Connection& to, const MatrixForm& b) {
  require_same_base(from.base(), to.base(), "detour path");
  if (from.rank() != to.rank()) throw DomainError("detour path: rank mismatch");
  return ConnectionPath({from.form(), to.form() - from.form() + b, -b});
}

ConnectionPath ConnectionPath::constant(const Connection& c) { return ConnectionPath({c.form()}); }

Connection ConnectionPath::at(const Rational& t) const {
  MatrixForm a(base(), rank(), rank());
  Rational tk(1);
  for (const auto& c : coeffs_) {
    if (sgn(tk) == 0) break;
    a += c.scaled(TauScalar(tk));
    tk *= t;
  }
  return Connection(std::move(a));
}

MatrixForm cs_path(const ConnectionPath& path) {
  const BaseSpace base = path.base();
  const auto& a = path.coefficients();
  TPoly da, deriv;
  for (std::size_t k = 0; k < a.size(); ++k) da.push_back(exterior_d(a[k]));
  for (std::size_t k = 1; k < a.size(); ++k) deriv.push_back(a[k].scaled(TauScalar(static_cast<long>(k))));
  MatrixForm out = MatrixForm::scalar(Form(base));
  if (deriv.empty()) return out;
  const TPoly r = tpoly_add(da, tpoly_wedge(a, a));

  TPoly chain = deriv;  // A' R^{j-1}
  for (int j = 1; 2 * j - 1 <= base.dim(); ++j) {
    if (j > 1) chain = tpoly_wedge(chain, r);
    TPoly traced;
    for (const auto& c : chain) traced.push_back(trace(c));
    out += integrate_unit(traced).scaled(TauScalar::monomial(-j, Gaussian(1 / factorial(j - 1))));
  }
  return out;
}

MatrixForm cs_via_cylinder(const ConnectionPath& path) {
  const Cylinder cyl(path.base());
  const int n = path.rank();
  MatrixForm a(cyl.ext, n, n);
  const auto& coeffs = path.coefficients();
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a.at(r, c) += cyl.lift(coeffs[k].at(r, c), static_cast<int>(k));
  const MatrixForm ch = chern_character(Connection(std::move(a)));
  const MatrixForm contracted = interior_t(ch, cyl.t);
  return MatrixForm::scalar(cyl.integrate_t(contracted.as_scalar()));
}

OddClass cs_class(const Connection& from, const Connection& to) {
  return OddClass(cs_path(ConnectionPath::straight(from, to)));
}

bool equivalent(const Connection& from, const Connection& to) {
  return is_exact(cs_path(ConnectionPath::straight(from, to)));
}

}  // namespace khat
