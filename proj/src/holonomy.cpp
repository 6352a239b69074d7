#include "khat/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace khat {

namespace {

constexpr int kMinSteps = 256;
constexpr int kMaxSteps = 1 << 14;

struct CompiledTerm {
  std::complex<double> coeff;
  ChartFunction::Key key;
};

// A chart function flattened for repeated numeric evaluation.
struct CompiledFunction {
  int chart_dim = 0;
  int dim = 0;
  std::vector<CompiledTerm> terms;

  explicit CompiledFunction(const ChartFunction& f) : chart_dim(f.base().chart_dim), dim(f.base().dim()) {
    for (const auto& [k, c] : f.terms()) terms.push_back({c.evaluate(), k});
  }

  std::complex<double> operator()(const std::vector<double>& p) const {
    std::complex<double> sum;
    for (const auto& t : terms) {
      std::complex<double> v = t.coeff;
      double phase = 0.0;
      for (int i = 0; i < chart_dim; ++i)
        if (t.key[i] != 0) v *= std::pow(p[i], t.key[i]);
      for (int j = chart_dim; j < dim; ++j) phase += t.key[j] * p[j];
      sum += phase == 0.0 ? v : v * std::polar(1.0, phase);
    }
    return sum;
  }
};

// A(gamma)[d/d coord] as a matrix of compiled functions.
struct CompiledComponent {
  int n;
  std::vector<CompiledFunction> entries;

  CompiledComponent(const MatrixForm& a, int coord) : n(a.rows()) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) entries.emplace_back(a.at(r, c).coefficient(Mask{1} << coord));
  }

  NumericMatrix operator()(const std::vector<double>& p) const {
    NumericMatrix m(n);
    for (std::size_t i = 0; i < entries.size(); ++i) m.entries[i] = entries[i](p);
    return m;
  }
};

NumericMatrix axpy(const NumericMatrix& s, double h, const NumericMatrix& k) {
  NumericMatrix out = s;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += h * k.entries[i];
  return out;
}

NumericMatrix transport(const CompiledComponent& a, const Loop& loop, int steps) {
  const int n = a.n;
  const double h = 2.0 * std::numbers::pi / steps;
  NumericMatrix s = NumericMatrix::identity(n);
  auto rhs = [&](const NumericMatrix& m, double u) {
    NumericMatrix am = a(loop.point(u));
    for (auto& e : am.entries) e = -e;
    return am * m;
  };
  for (int i = 0; i < steps; ++i) {
    const double u = i * h;
    NumericMatrix k1 = rhs(s, u);
    NumericMatrix k2 = rhs(axpy(s, h / 2, k1), u + h / 2);
    NumericMatrix k3 = rhs(axpy(s, h / 2, k2), u + h / 2);
    NumericMatrix k4 = rhs(axpy(s, h, k3), u + h);
    for (std::size_t e = 0; e < s.entries.size(); ++e)
      s.entries[e] += h / 6 * (k1.entries[e] + 2.0 * k2.entries[e] + 2.0 * k3.entries[e] + k4.entries[e]);
  }
  return s;
}

AdaptiveTransport adaptive(const CompiledComponent& a, const Loop& loop, double tol) {
  int steps = kMinSteps;
  NumericMatrix coarse = transport(a, loop, steps);
  NumericMatrix fine = transport(a, loop, 2 * steps);
  while (max_distance(coarse, fine) >= tol / 10 && 2 * steps < kMaxSteps) {
    steps *= 2;
    coarse = std::move(fine);
    fine = transport(a, loop, 2 * steps);
  }
  const bool converged = max_distance(coarse, fine) < tol / 10;
  return {std::move(fine), 2 * steps, converged};
}

}  // namespace

NumericMatrix NumericMatrix::identity(int size) {
  NumericMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
  return m;
}

NumericMatrix operator*(const NumericMatrix& a, const NumericMatrix& b) {
  NumericMatrix out(a.n);
  for (int r = 0; r < a.n; ++r)
    for (int k = 0; k < a.n; ++k) {
      const auto v = a.at(r, k);
      if (v == 0.0) continue;
      for (int c = 0; c < a.n; ++c) out.at(r, c) += v * b.at(k, c);
    }
  return out;
}

double max_distance(const NumericMatrix& a, const NumericMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) d = std::max(d, std::abs(a.entries[i] - b.entries[i]));
  return d;
}

NumericMatrix evaluate(const MatrixForm& m, const std::vector<double>& point) {
  if (!m.is_square() || !m.is_homogeneous(0)) throw DomainError("evaluate: expected a square matrix of functions");
  NumericMatrix out(m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(r, c) = m.at(r, c).coefficient(0).evaluate(point);
  return out;
}

Loop::Loop(BaseSpace b, int coord, std::vector<Rational> point)
    : base(b), torus_coord(coord), basepoint(std::move(point)) {
  if (!base.is_torus(coord)) throw DomainError("loop: coordinate is not an angle");
  if (static_cast<int>(basepoint.size()) != base.dim()) throw DomainError("loop: basepoint dimension mismatch");
}

Loop::Loop(BaseSpace b, int coord) : Loop(b, coord, std::vector<Rational>(static_cast<std::size_t>(b.dim()))) {}

std::vector<double> Loop::point(double u) const {
  std::vector<double> p;
  for (const auto& q : basepoint) p.push_back(q.get_d());
  p[torus_coord] += u;
  return p;
}

NumericMatrix parallel_transport(const Connection& c, const Loop& loop, int steps) {
  require_same_base(c.base(), loop.base, "parallel transport");
  if (steps < 16) throw DomainError("parallel transport needs at least 16 steps");
  if (c.is_frame_flat()) return NumericMatrix::identity(c.rank());
  return transport(CompiledComponent(c.form(), loop.torus_coord), loop, steps);
}

AdaptiveTransport adaptive_transport(const Connection& c, const Loop& loop, double tol) {
  require_same_base(c.base(), loop.base, "parallel transport");
  if (!(tol > 0)) throw DomainError("holonomy tolerance must be positive");
  if (c.is_frame_flat()) return {NumericMatrix::identity(c.rank()), kMinSteps, true};
  return adaptive(CompiledComponent(c.form(), loop.torus_coord), loop, tol);
}

HolonomyCheck check_holonomy(const Connection& c, double tol) {
  if (!(tol > 0)) throw DomainError("holonomy tolerance must be positive");
  HolonomyCheck out;
  if (c.is_frame_flat()) return out;
  const BaseSpace base = c.base();
  const NumericMatrix id = NumericMatrix::identity(c.rank());
  for (int coord = base.chart_dim; coord < base.dim(); ++coord) {
    const CompiledComponent a(c.form(), coord);
    // basepoints: each fixed coordinate at 0 or at an offset
    const int others = base.dim() - 1;
    for (int pattern = 0; pattern < (1 << others); ++pattern) {
      std::vector<Rational> point(static_cast<std::size_t>(base.dim()));
      for (int i = 0, bit = 0; i < base.dim(); ++i) {
        if (i == coord) continue;
        if (pattern & (1 << bit++)) point[i] = base.is_chart(i) ? frac(7, 10) : frac(21, 10);
      }
      const AdaptiveTransport t = adaptive(a, Loop(base, coord, point), tol);
      out.converged = out.converged && t.converged;
      out.max_steps = std::max(out.max_steps, t.steps);
      const NumericMatrix& fine = t.value;
      out.max_defect = std::max(out.max_defect, max_distance(fine, id));
    }
  }
  out.trivial = out.max_defect < tol;
  return out;
}

bool is_trivial_holonomy(const Connection& c, double tol) { return check_holonomy(c, tol).trivial; }

}  // namespace khat
