#include "khat/gauge_theta.hpp"

#include <cstdint>

namespace khat {

TauScalar b_coefficient(int j) {
  if (j < 1) throw DomainError("b_j is defined for j >= 1");
  const Rational f = factorial(j - 1);
  Rational v = f / factorial(2 * j - 1);  // ((j-1)!)^2 / (2j-1)! / (j-1)!
  if ((j - 1) % 2 == 1) v = -v;
  return TauScalar::monomial(-j, Gaussian(v));
}

TauScalar b_coefficient_by_expansion(int j) {
  if (j < 1) throw DomainError("b_j is defined for j >= 1");
  // (t^2 - t)^{j-1} as coefficients of t^k
  std::vector<Rational> poly{Rational(1)};
  for (int m = 1; m < j; ++m) {
    std::vector<Rational> next(poly.size() + 2);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 2] += poly[k];
      next[k + 1] -= poly[k];
    }
    poly = std::move(next);
  }
  Rational integral(0);
  for (std::size_t k = 0; k < poly.size(); ++k) integral += poly[k] / Rational(static_cast<long>(k) + 1);
  return TauScalar::monomial(-j, Gaussian(integral / factorial(j - 1)));
}

ThetaPullback theta_pullback(const GaugeTransform& g, int top_degree) {
  const BaseSpace base = g.base();
  const int top = top_degree < 0 ? base.dim() : std::min(top_degree, base.dim());
  const MatrixForm m = maurer_cartan(g);
  const MatrixForm m2 = wedge(m, m);
  MatrixForm out = MatrixForm::scalar(Form(base));
  MatrixForm odd_power = m;
  for (int j = 1; 2 * j - 1 <= top; ++j) {
    if (j > 1) odd_power = wedge(odd_power, m2);
    if (odd_power.is_zero()) break;
    out += trace(odd_power).scaled(b_coefficient(j));
  }
  return {g, out};
}

const char* to_string(LambdaVerdict::Kind kind) {
  switch (kind) {
    case LambdaVerdict::Kind::member: return "member";
    case LambdaVerdict::Kind::nonmember: return "nonmember";
    case LambdaVerdict::Kind::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t kSearchBudget = 200000;

}  // namespace

LambdaVerdict lambda_gl_test(const MatrixForm& w, const std::vector<GaugeTransform>& certificates, int bound) {
  if (!w.is_scalar()) throw DomainError("lambda test expects a scalar form");
  LambdaVerdict v;
  const bool closed = is_closed(w);
  if (closed) {
    const MatrixForm target = normal_form(w);
    const std::size_t m = certificates.size();
    v.combination.assign(m, 0);
    if (target.is_zero()) {
      v.kind = LambdaVerdict::Kind::member;
      v.reason = "exact";
      return v;
    }
    std::vector<MatrixForm> nf;
    for (const auto& g : certificates) {
      require_same_base(g.base(), w.base(), "lambda test certificate");
      nf.push_back(normal_form(theta_pullback(g).form));
    }
    if (m > 0 && bound > 0) {
      std::vector<int> n(m, -bound);
      std::uint64_t visited = 0;
      for (;;) {
        MatrixForm sum = MatrixForm::scalar(Form(w.base()));
        for (std::size_t i = 0; i < m; ++i)
          if (n[i] != 0) sum += nf[i].scaled(TauScalar(n[i]));
        if (sum == target) {
          v.kind = LambdaVerdict::Kind::member;
          v.combination = n;
          v.reason = "certificate combination";
          return v;
        }
        if (++visited >= kSearchBudget) break;
        std::size_t i = 0;
        while (i < m && n[i] == bound) n[i++] = -bound;
        if (i == m) break;
        ++n[i];
      }
    }
    v.combination.clear();
  }
  if (!closed) {
    v.kind = LambdaVerdict::Kind::nonmember;
    v.reason = "form is not closed";
    return v;
  }
  for (const Cycle& z : coordinate_cycles(w.base())) {
    if (z.dimension() % 2 == 0) continue;
    TauScalar p = period(w, z);
    if (!p.is_integer()) {
      v.kind = LambdaVerdict::Kind::nonmember;
      v.witness_cycle = z;
      v.witness_period = p;
      v.reason = "non-integral period";
      return v;
    }
  }
  v.kind = LambdaVerdict::Kind::unknown;
  v.reason = "integral periods but no certificate combination found";
  return v;
}

}  // namespace khat
