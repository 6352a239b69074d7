#include "khat/coeff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace khat {

Gaussian Gaussian::inverse() const {
  Rational norm = re * re + im * im;
  if (sgn(norm) == 0) throw DomainError("division by zero Gaussian rational");
  return {re / norm, -im / norm};
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

// ---------------------------------------------------------------------------

TauScalar::TauScalar(const Gaussian& c) {
  if (!c.is_zero()) terms_.emplace_back(0, c);
}

TauScalar TauScalar::monomial(int power, const Gaussian& c) {
  TauScalar out;
  if (!c.is_zero()) out.terms_.emplace_back(power, c);
  return out;
}

Gaussian TauScalar::constant_term() const {
  for (const auto& [p, c] : terms_)
    if (p == 0) return c;
  return {};
}

std::optional<Rational> TauScalar::as_rational() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() != 1 || terms_[0].first != 0 || sgn(terms_[0].second.im) != 0)
    return std::nullopt;
  return terms_[0].second.re;
}

bool TauScalar::is_integer() const {
  auto r = as_rational();
  return r && r->get_den() == 1;
}

TauScalar TauScalar::mul_tau_power(int shift) const {
  TauScalar out = *this;
  for (auto& t : out.terms_) t.first += shift;
  return out;
}

TauScalar TauScalar::conj() const {
  TauScalar out = *this;
  for (auto& [p, c] : out.terms_) {
    c = c.conj();
    if (p % 2 != 0) c = -c;
  }
  return out;
}

std::optional<TauScalar> TauScalar::inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  return monomial(-terms_[0].first, terms_[0].second.inverse());
}

std::complex<double> TauScalar::evaluate() const {
  const std::complex<double> tau(0.0, 2.0 * std::numbers::pi);
  std::complex<double> sum;
  for (const auto& [p, c] : terms_)
    sum += std::complex<double>(c.re.get_d(), c.im.get_d()) * std::pow(tau, p);
  return sum;
}

TauScalar TauScalar::operator-() const {
  TauScalar out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

namespace {

template <bool Subtract>
void merge_into(std::vector<TauScalar::Term>& lhs, const std::vector<TauScalar::Term>& rhs) {
  if (rhs.empty()) return;
  std::vector<TauScalar::Term> out;
  out.reserve(lhs.size() + rhs.size());
  auto a = lhs.begin();
  auto b = rhs.begin();
  while (a != lhs.end() || b != rhs.end()) {
    if (b == rhs.end() || (a != lhs.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == lhs.end() || b->first < a->first) {
      out.emplace_back(b->first, Subtract ? -b->second : b->second);
      ++b;
    } else {
      Gaussian c = std::move(a->second);
      if constexpr (Subtract) c -= b->second;
      else c += b->second;
      if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  lhs = std::move(out);
}

}  // namespace

TauScalar& TauScalar::operator+=(const TauScalar& o) {
  merge_into<false>(terms_, o.terms_);
  return *this;
}

TauScalar& TauScalar::operator-=(const TauScalar& o) {
  merge_into<true>(terms_, o.terms_);
  return *this;
}

TauScalar& TauScalar::operator*=(const Gaussian& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

TauScalar operator*(const TauScalar& a, const TauScalar& b) {
  TauScalar out;
  if (a.terms_.empty() || b.terms_.empty()) return out;
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    Gaussian c = a.terms_[0].second * b.terms_[0].second;
    out.terms_.emplace_back(a.terms_[0].first + b.terms_[0].first, std::move(c));
    return out;
  }
  std::map<int, Gaussian> acc;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) acc[pa + pb] += ca * cb;
  for (auto& [p, c] : acc)
    if (!c.is_zero()) out.terms_.emplace_back(p, std::move(c));
  return out;
}

// ---------------------------------------------------------------------------

BaseSpace::BaseSpace(int a, int b) : chart_dim(a), torus_dim(b) {
  if (a < 0 || b < 0 || a + b > kMaxCoords)
    throw DomainError("base space R^" + std::to_string(a) + " x T^" + std::to_string(b) +
                      " outside supported range");
}

void require_same_base(const BaseSpace& a, const BaseSpace& b, const char* what) {
  if (!(a == b)) {
    throw DomainError(std::string(what) + ": base space mismatch (R^" + std::to_string(a.chart_dim) +
                      " x T^" + std::to_string(a.torus_dim) + " vs R^" +
                      std::to_string(b.chart_dim) + " x T^" + std::to_string(b.torus_dim) + ")");
  }
}

// ---------------------------------------------------------------------------

ChartFunction ChartFunction::constant(BaseSpace base, const TauScalar& c) {
  ChartFunction f(base);
  f.add_term(Key{}, c);
  return f;
}

ChartFunction ChartFunction::coordinate(BaseSpace base, int coord) {
  if (!base.is_chart(coord)) throw DomainError("coordinate function: not a chart coordinate");
  Key k{};
  k[coord] = 1;
  return term(base, k, TauScalar(1));
}

ChartFunction ChartFunction::fourier(BaseSpace base, std::span<const int> freq) {
  if (static_cast<int>(freq.size()) != base.torus_dim)
    throw DomainError("fourier: frequency vector length must equal torus dimension");
  Key k{};
  for (int j = 0; j < base.torus_dim; ++j) k[base.chart_dim + j] = static_cast<std::int16_t>(freq[j]);
  return term(base, k, TauScalar(1));
}

ChartFunction ChartFunction::term(BaseSpace base, const Key& key, const TauScalar& c) {
  ChartFunction f(base);
  f.add_term(key, c);
  return f;
}

bool ChartFunction::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{});
}

TauScalar ChartFunction::constant_value() const {
  if (!is_constant()) throw DomainError("function is not constant");
  return terms_.empty() ? TauScalar() : terms_.begin()->second;
}

void ChartFunction::add_term(const Key& key, const TauScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ChartFunction ChartFunction::operator-() const {
  ChartFunction out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

ChartFunction& ChartFunction::operator+=(const ChartFunction& o) {
  require_same_base(base_, o.base_, "function addition");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

ChartFunction& ChartFunction::operator-=(const ChartFunction& o) {
  require_same_base(base_, o.base_, "function subtraction");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

ChartFunction ChartFunction::scaled(const TauScalar& c) const {
  ChartFunction out(base_);
  if (c.is_zero()) return out;
  for (const auto& [k, v] : terms_) out.add_term(k, v * c);
  return out;
}

ChartFunction operator*(const ChartFunction& a, const ChartFunction& b) {
  require_same_base(a.base_, b.base_, "function product");
  ChartFunction out(a.base_);
  const int n = a.base_.dim();
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      ChartFunction::Key k{};
      for (int i = 0; i < n; ++i) k[i] = static_cast<std::int16_t>(ka[i] + kb[i]);
      out.add_term(k, ca * cb);
    }
  }
  return out;
}

ChartFunction ChartFunction::partial(int coord) const {
  if (coord < 0 || coord >= base_.dim()) throw DomainError("partial: coordinate out of range");
  ChartFunction out(base_);
  const bool chart = base_.is_chart(coord);
  for (const auto& [k, c] : terms_) {
    if (k[coord] == 0) continue;
    Key nk = k;
    if (chart) {
      nk[coord] = static_cast<std::int16_t>(k[coord] - 1);
      TauScalar v = c;
      v *= Gaussian(Rational(k[coord]));
      out.add_term(nk, v);
    } else {
      TauScalar v = c;
      v *= Gaussian(Rational(0), Rational(k[coord]));
      out.add_term(nk, v);
    }
  }
  return out;
}

ChartFunction ChartFunction::circle_average(int torus_coord) const {
  if (!base_.is_torus(torus_coord)) throw DomainError("circle_average: not a torus coordinate");
  ChartFunction out(base_);
  for (const auto& [k, c] : terms_)
    if (k[torus_coord] == 0) out.add_term(k, c);
  return out;
}

ChartFunction ChartFunction::at_chart_origin() const {
  ChartFunction out(base_);
  for (const auto& [k, c] : terms_) {
    bool origin = true;
    for (int i = 0; i < base_.chart_dim; ++i) origin = origin && k[i] == 0;
    if (origin) out.add_term(k, c);
  }
  return out;
}

ChartFunction ChartFunction::conj() const {
  ChartFunction out(base_);
  for (const auto& [k, c] : terms_) {
    Key nk = k;
    for (int j = base_.chart_dim; j < base_.dim(); ++j) nk[j] = static_cast<std::int16_t>(-k[j]);
    out.add_term(nk, c.conj());
  }
  return out;
}

std::complex<double> ChartFunction::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != base_.dim())
    throw DomainError("evaluate: point dimension mismatch");
  std::complex<double> sum;
  for (const auto& [k, c] : terms_) {
    std::complex<double> v = c.evaluate();
    double phase = 0.0;
    for (int i = 0; i < base_.chart_dim; ++i) v *= std::pow(point[i], k[i]);
    for (int j = base_.chart_dim; j < base_.dim(); ++j) phase += k[j] * point[j];
    sum += v * std::polar(1.0, phase);
  }
  return sum;
}

int ChartFunction::chart_degree(const Key& key) const {
  int d = 0;
  for (int i = 0; i < base_.chart_dim; ++i) d += key[i];
  return d;
}

Rational frac(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num);
  r /= Rational(den);
  return r;
}

Rational factorial(int j) {
  Rational r(1);
  for (int i = 2; i <= j; ++i) r *= i;
  return r;
}

}  // namespace khat
