#include "khat/forms.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace khat {

int mask_degree(Mask m) { return std::popcount(m); }

namespace {

Mask below(int coord) { return (Mask{1} << coord) - 1; }

// (-1)^{number of differentials in m with index below coord}
bool odd_below(Mask m, int coord) { return (std::popcount(m & below(coord)) & 1) != 0; }

void add_signed(Form& out, Mask m, const ChartFunction& f, bool negate) {
  out.add(m, negate ? -f : f);
}

}  // namespace

int wedge_sign(Mask m1, Mask m2) {
  if ((m1 & m2) != 0) return 0;
  int inversions = 0;
  for (Mask rest = m2; rest != 0; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(m1 & ~((Mask{2} << j) - 1));
  }
  return (inversions & 1) ? -1 : 1;
}

// ---------------------------------------------------------------------------

Form Form::function(const ChartFunction& f) {
  Form out(f.base());
  out.add(0, f);
  return out;
}

Form Form::constant(BaseSpace base, const TauScalar& c) {
  return function(ChartFunction::constant(base, c));
}

Form Form::differential(BaseSpace base, int coord) {
  if (coord < 0 || coord >= base.dim()) throw DomainError("differential: coordinate out of range");
  Form out(base);
  out.add(Mask{1} << coord, ChartFunction::constant(base, TauScalar(1)));
  return out;
}

Form Form::monomial(Mask mask, const ChartFunction& f) {
  Form out(f.base());
  out.add(mask, f);
  return out;
}

ChartFunction Form::coefficient(Mask mask) const {
  auto it = components_.find(mask);
  return it == components_.end() ? ChartFunction(base_) : it->second;
}

void Form::add(Mask mask, const ChartFunction& f) {
  if (f.is_zero()) return;
  require_same_base(base_, f.base(), "form accumulation");
  if (mask >> base_.dim() != 0) throw DomainError("exterior monomial outside base dimension");
  auto [it, inserted] = components_.try_emplace(mask, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) components_.erase(it);
  }
}

Form Form::component(int degree) const {
  Form out(base_);
  for (const auto& [m, f] : components_)
    if (mask_degree(m) == degree) out.components_.emplace(m, f);
  return out;
}

int Form::top_degree() const {
  int d = -1;
  for (const auto& [m, f] : components_) d = std::max(d, mask_degree(m));
  return d;
}

bool Form::has_only_odd_degrees() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& c) { return mask_degree(c.first) % 2 == 1; });
}

bool Form::has_only_even_degrees() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const auto& c) { return mask_degree(c.first) % 2 == 0; });
}

bool Form::is_homogeneous(int degree) const {
  return std::all_of(components_.begin(), components_.end(),
                     [degree](const auto& c) { return mask_degree(c.first) == degree; });
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [m, f] : out.components_) f = -f;
  return out;
}

Form& Form::operator+=(const Form& o) {
  require_same_base(base_, o.base_, "form addition");
  for (const auto& [m, f] : o.components_) add(m, f);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  require_same_base(base_, o.base_, "form subtraction");
  for (const auto& [m, f] : o.components_) add(m, -f);
  return *this;
}

Form Form::scaled(const TauScalar& c) const {
  Form out(base_);
  for (const auto& [m, f] : components_) out.add(m, f.scaled(c));
  return out;
}

Form Form::times(const ChartFunction& g) const {
  Form out(base_);
  for (const auto& [m, f] : components_) out.add(m, f * g);
  return out;
}

Form wedge(const Form& a, const Form& b) {
  require_same_base(a.base_, b.base_, "wedge");
  Form out(a.base_);
  for (const auto& [ma, fa] : a.components_) {
    for (const auto& [mb, fb] : b.components_) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      add_signed(out, ma | mb, fa * fb, s < 0);
    }
  }
  return out;
}

Form Form::d() const {
  Form out(base_);
  const int n = base_.dim();
  for (const auto& [m, f] : components_) {
    for (int c = 0; c < n; ++c) {
      if (m & (Mask{1} << c)) continue;
      ChartFunction g = f.partial(c);
      if (g.is_zero()) continue;
      add_signed(out, m | (Mask{1} << c), g, odd_below(m, c));
    }
  }
  return out;
}

Form Form::interior(int coord) const {
  if (coord < 0 || coord >= base_.dim()) throw DomainError("interior: coordinate out of range");
  Form out(base_);
  const Mask bit = Mask{1} << coord;
  for (const auto& [m, f] : components_) {
    if (!(m & bit)) continue;
    add_signed(out, m & ~bit, f, odd_below(m, coord));
  }
  return out;
}

Form Form::conj() const {
  Form out(base_);
  for (const auto& [m, f] : components_) out.add(m, f.conj());
  return out;
}

// ---------------------------------------------------------------------------

MatrixForm::MatrixForm(BaseSpace base, int rows, int cols)
    : base_(base), rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Form(base)) {
  if (rows < 0 || cols < 0) throw DomainError("matrix form: negative shape");
}

std::size_t MatrixForm::index(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DomainError("matrix form: index out of range");
  return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
}

MatrixForm MatrixForm::identity(BaseSpace base, int n) {
  MatrixForm out(base, n, n);
  for (int i = 0; i < n; ++i) out.at(i, i) = Form::constant(base, TauScalar(1));
  return out;
}

MatrixForm MatrixForm::scalar(const Form& f) {
  MatrixForm out(f.base(), 1, 1);
  out.at(0, 0) = f;
  return out;
}

MatrixForm MatrixForm::constant(BaseSpace base, const std::vector<std::vector<TauScalar>>& m) {
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  MatrixForm out(base, rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(m[r].size()) != cols) throw DomainError("ragged constant matrix");
    for (int c = 0; c < cols; ++c) out.at(r, c) = Form::constant(base, m[r][c]);
  }
  return out;
}

const Form& MatrixForm::as_scalar() const {
  if (!is_scalar()) throw DomainError("expected a 1x1 form");
  return entries_[0];
}

bool MatrixForm::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Form& f) { return f.is_zero(); });
}

int MatrixForm::top_degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.top_degree());
  return d;
}

bool MatrixForm::is_homogeneous(int degree) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [degree](const Form& f) { return f.is_homogeneous(degree); });
}

MatrixForm MatrixForm::component(int degree) const {
  return map([degree](const Form& f) { return f.component(degree); });
}

MatrixForm MatrixForm::operator-() const {
  return map([](const Form& f) { return -f; });
}

MatrixForm& MatrixForm::operator+=(const MatrixForm& o) {
  require_same_base(base_, o.base_, "matrix form addition");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix form addition: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

MatrixForm& MatrixForm::operator-=(const MatrixForm& o) {
  require_same_base(base_, o.base_, "matrix form subtraction");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix form subtraction: shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

MatrixForm MatrixForm::scaled(const TauScalar& c) const {
  return map([&c](const Form& f) { return f.scaled(c); });
}

MatrixForm MatrixForm::transpose() const {
  MatrixForm out(base_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

MatrixForm MatrixForm::conj() const {
  return map([](const Form& f) { return f.conj(); });
}

// ---------------------------------------------------------------------------

MatrixForm wedge(const MatrixForm& lhs, const MatrixForm& rhs) {
  require_same_base(lhs.base(), rhs.base(), "matrix wedge");
  if (lhs.cols() != rhs.rows()) throw DomainError("matrix wedge: shape mismatch");
  MatrixForm out(lhs.base(), lhs.rows(), rhs.cols());
  for (int i = 0; i < lhs.rows(); ++i) {
    for (int j = 0; j < lhs.cols(); ++j) {
      const Form& a = lhs.at(i, j);
      if (a.is_zero()) continue;
      for (int k = 0; k < rhs.cols(); ++k) {
        const Form& b = rhs.at(j, k);
        if (b.is_zero()) continue;
        out.at(i, k) += wedge(a, b);
      }
    }
  }
  return out;
}

MatrixForm exterior_d(const MatrixForm& w) {
  return w.map([](const Form& f) { return f.d(); });
}

MatrixForm trace(const MatrixForm& w) {
  if (!w.is_square()) throw DomainError("trace of a non-square matrix form");
  Form sum(w.base());
  for (int i = 0; i < w.rows(); ++i) sum += w.at(i, i);
  return MatrixForm::scalar(sum);
}

MatrixForm interior_t(const MatrixForm& w, int coord) {
  if (!w.base().is_chart(coord)) throw DomainError("interior_t: coordinate must be a chart coordinate");
  return w.map([coord](const Form& f) { return f.interior(coord); });
}

MatrixForm block_diagonal(const MatrixForm& a, const MatrixForm& b) {
  require_same_base(a.base(), b.base(), "block diagonal");
  MatrixForm out(a.base(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) out.at(a.rows() + r, a.cols() + c) = b.at(r, c);
  return out;
}

MatrixForm kronecker(const MatrixForm& a, const MatrixForm& b) {
  require_same_base(a.base(), b.base(), "kronecker");
  MatrixForm out(a.base(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          if (b.at(k, l).is_zero()) continue;
          out.at(i * b.rows() + k, j * b.cols() + l) = wedge(a.at(i, j), b.at(k, l));
        }
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// On x^alpha e^{ik.theta} dx_I ^ dtheta_J the scaling homotopy is
//   1/(|alpha|+|I|) * sum_{c in I} x_c * i_{d/dx_c}(...)
Form chart_homotopy(const Form& w) {
  const BaseSpace& base = w.base();
  const Mask chart = base.chart_mask();
  Form out(base);
  for (const auto& [m, f] : w.components()) {
    const Mask dx = m & chart;
    if (dx == 0) continue;
    const int k = mask_degree(dx);
    for (const auto& [key, coeff] : f.terms()) {
      const Rational weight = frac(1, f.chart_degree(key) + k);
      for (Mask rest = dx; rest != 0; rest &= rest - 1) {
        const int c = std::countr_zero(rest);
        ChartFunction::Key nk = key;
        nk[c] = static_cast<std::int16_t>(nk[c] + 1);
        TauScalar v = coeff;
        v *= Gaussian(odd_below(m, c) ? Rational(-weight) : weight);
        out.add(m & ~(Mask{1} << c), ChartFunction::term(base, nk, v));
      }
    }
  }
  return out;
}

Form retract(const Form& w) {
  const Mask chart = w.base().chart_mask();
  Form out(w.base());
  for (const auto& [m, f] : w.components()) {
    if (m & chart) continue;
    out.add(m, f.at_chart_origin());
  }
  return out;
}

bool is_harmonic_key(const BaseSpace& base, const ChartFunction::Key& key) {
  for (int j = base.chart_dim; j < base.dim(); ++j)
    if (key[j] != 0) return false;
  return true;
}

// Canonical representative of a form pulled back from the torus.  The
// frequency-0 part is harmonic and kept; a mode k != 0 satisfies
//   eta = d T(eta) + T(d eta),  T = i_{d/dtheta_m} / (i k_m)
// with m the first angle where k_m != 0, so T(d eta) represents it.
Form torus_normal_form(const Form& eta) {
  const BaseSpace& base = eta.base();
  Form harmonic(base);
  Form oscillating(base);
  for (const auto& [m, f] : eta.components()) {
    for (const auto& [key, c] : f.terms()) {
      Form& target = is_harmonic_key(base, key) ? harmonic : oscillating;
      target.add(m, ChartFunction::term(base, key, c));
    }
  }
  Form out = std::move(harmonic);
  if (oscillating.is_zero()) return out;
  const Form d_osc = oscillating.d();
  for (const auto& [m, f] : d_osc.components()) {
    for (const auto& [key, c] : f.terms()) {
      int first = base.chart_dim;
      while (key[first] == 0) ++first;
      const Mask bit = Mask{1} << first;
      if (!(m & bit)) continue;
      // 1/(i k) = -i/k
      TauScalar v = c;
      v *= Gaussian(Rational(0), frac(odd_below(m, first) ? 1 : -1, key[first]));
      out.add(m & ~bit, ChartFunction::term(base, key, v));
    }
  }
  return out;
}

Form scalar_normal_form(const Form& w) {
  Form out = chart_homotopy(w.d());
  out += torus_normal_form(retract(w));
  return out;
}

}  // namespace

MatrixForm poincare_homotopy(const MatrixForm& w) { return w.map(chart_homotopy); }

MatrixForm retract_to_torus(const MatrixForm& w) { return w.map(retract); }

MatrixForm normal_form(const MatrixForm& w) { return w.map(scalar_normal_form); }

bool is_closed(const MatrixForm& w) { return exterior_d(w).is_zero(); }

bool is_exact(const MatrixForm& w) { return is_closed(w) && normal_form(w).is_zero(); }

// ---------------------------------------------------------------------------

Cycle::Cycle(BaseSpace b, std::vector<int> subset) : base(b), torus_subset(std::move(subset)) {
  if (torus_subset.empty()) throw DomainError("cycle: empty torus subset");
  std::vector<int> sorted = torus_subset;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("cycle: duplicate torus coordinate");
  if (sorted.front() < 0 || sorted.back() >= base.torus_dim)
    throw DomainError("cycle: torus coordinate out of range");
}

std::vector<Cycle> coordinate_cycles(BaseSpace base, int dimension) {
  std::vector<Cycle> out;
  const int b = base.torus_dim;
  for (Mask s = 1; s < (Mask{1} << b); ++s) {
    if (mask_degree(s) != dimension) continue;
    std::vector<int> subset;
    for (int j = 0; j < b; ++j)
      if (s & (Mask{1} << j)) subset.push_back(j);
    out.emplace_back(base, std::move(subset));
  }
  return out;
}

std::vector<Cycle> coordinate_cycles(BaseSpace base) {
  std::vector<Cycle> out;
  for (int k = 1; k <= base.torus_dim; ++k) {
    auto some = coordinate_cycles(base, k);
    out.insert(out.end(), some.begin(), some.end());
  }
  return out;
}

TauScalar period(const MatrixForm& w, const Cycle& z) {
  require_same_base(w.base(), z.base, "period");
  const BaseSpace& base = w.base();
  Mask mask = 0;
  int inversions = 0;
  for (std::size_t p = 0; p < z.torus_subset.size(); ++p) {
    mask |= Mask{1} << (base.chart_dim + z.torus_subset[p]);
    for (std::size_t q = p + 1; q < z.torus_subset.size(); ++q)
      inversions += z.torus_subset[p] > z.torus_subset[q] ? 1 : 0;
  }
  const ChartFunction f = w.as_scalar().coefficient(mask);
  TauScalar sum;
  for (const auto& [key, c] : f.terms()) {
    bool keep = f.chart_degree(key) == 0;
    for (int j : z.torus_subset) keep = keep && key[base.chart_dim + j] == 0;
    if (keep) sum += c;
  }
  // (2 pi)^n = (-i tau)^n
  Gaussian unit(1);
  for (int p = 0; p < z.dimension(); ++p) unit *= Gaussian(Rational(0), Rational(-1));
  if (inversions % 2) unit = -unit;
  return sum * TauScalar::monomial(z.dimension(), unit);
}

// ---------------------------------------------------------------------------

OddClass::OddClass(const MatrixForm& w) {
  if (!w.as_scalar().has_only_odd_degrees()) throw DomainError("odd class: form has even components");
  rep_ = normal_form(w);
}

OddClass OddClass::operator-() const { return OddClass(-rep_); }

OddClass operator+(const OddClass& a, const OddClass& b) {
  if (a.rep_.rows() == 0) return b;
  if (b.rep_.rows() == 0) return a;
  return OddClass(a.rep_ + b.rep_);
}

OddClass operator-(const OddClass& a, const OddClass& b) { return a + (-b); }

}  // namespace khat
