#include "khat/text.hpp"

#include <algorithm>
#include <vector>

namespace khat {

namespace {

struct Signed {
  bool negative = false;
  std::string body;
};

std::string join_signed(const std::vector<Signed>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i == 0) out += parts[i].negative ? "-" + parts[i].body : parts[i].body;
    else out += (parts[i].negative ? " - " : " + ") + parts[i].body;
  }
  return out.empty() ? "0" : out;
}

std::string imaginary(const Rational& im) {
  const mpz_class num = abs(im.get_num());
  std::string out = num == 1 ? "i" : num.get_str() + "i";
  if (im.get_den() != 1) out += "/" + im.get_den().get_str();
  return out;
}

Signed gaussian_signed(const Gaussian& g) {
  if (sgn(g.im) == 0) return {sgn(g.re) < 0, to_string(Rational(abs(g.re)))};
  if (sgn(g.re) == 0) return {sgn(g.im) < 0, imaginary(g.im)};
  return {false, "(" + to_string(g.re) + (sgn(g.im) < 0 ? " - " : " + ") + imaginary(g.im) + ")"};
}

std::string tau_power(int p) { return p == 1 ? "τ" : "τ^" + std::to_string(p); }

Signed scalar_term(int power, const Gaussian& g) {
  Signed s = gaussian_signed(g);
  if (power < 0) {
    const auto slash = s.body.rfind('/');
    if (s.body[0] != '(' && slash != std::string::npos)
      s.body = "(" + s.body.substr(0, slash) + "/(" + s.body.substr(slash + 1) + tau_power(-power) + "))";
    else
      s.body = "(" + s.body + "/" + tau_power(-power) + ")";
  }
  else if (power > 0) s.body = s.body == "1" ? tau_power(power) : s.body + " " + tau_power(power);
  return s;
}

// The scalar as a single signed factor; sums are parenthesized.
Signed scalar_factor(const TauScalar& s) {
  const auto& terms = s.terms();
  if (terms.size() == 1) return scalar_term(terms[0].first, terms[0].second);
  std::vector<Signed> parts;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) parts.push_back(scalar_term(it->first, it->second));
  return {false, "(" + join_signed(parts) + ")"};
}

// coefficient written in front of a monomial; fractions get parentheses
std::string attach(const std::string& coeff, const std::string& mono) {
  if (coeff == "1") return mono;
  if (coeff.find('/') != std::string::npos && coeff[0] != '(') return "(" + coeff + ") " + mono;
  return coeff + " " + mono;
}

std::string chart_name(int c) { return "x" + std::to_string(c + 1); }

std::string coordinate_differential(const BaseSpace& b, int c) {
  return b.is_chart(c) ? "dx" + std::to_string(c + 1) : "dth" + std::to_string(c - b.chart_dim + 1);
}

std::string monomial_text(const BaseSpace& b, const ChartFunction::Key& k) {
  std::vector<std::string> factors;
  for (int c = 0; c < b.chart_dim; ++c) {
    if (k[c] == 0) continue;
    factors.push_back(k[c] == 1 ? chart_name(c) : chart_name(c) + "^" + std::to_string(k[c]));
  }
  std::vector<Signed> phase;
  for (int j = 0; j < b.torus_dim; ++j) {
    const int kj = k[b.chart_dim + j];
    if (kj == 0) continue;
    const std::string name = "th" + std::to_string(j + 1);
    phase.push_back({kj < 0, std::abs(kj) == 1 ? name : std::to_string(std::abs(kj)) + name});
  }
  if (!phase.empty()) {
    std::string p = join_signed(phase);
    factors.push_back(phase.size() == 1 ? (phase[0].negative ? "e^(-i " + phase[0].body + ")" : "e^(i " + p + ")")
                                        : "e^(i(" + p + "))");
  }
  std::string out;
  for (const auto& f : factors) out += (out.empty() ? "" : " ") + f;
  return out;
}

std::vector<std::pair<ChartFunction::Key, TauScalar>> ordered_terms(const ChartFunction& f) {
  std::vector<std::pair<ChartFunction::Key, TauScalar>> terms(f.terms().begin(), f.terms().end());
  const BaseSpace b = f.base();
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) {
    const int dx = f.chart_degree(x.first), dy = f.chart_degree(y.first);
    if (dx != dy) return dx < dy;
    for (int c = 0; c < b.chart_dim; ++c)
      if (x.first[c] != y.first[c]) return x.first[c] > y.first[c];
    for (int j = b.chart_dim; j < b.dim(); ++j)
      if (x.first[j] != y.first[j]) return x.first[j] < y.first[j];
    return false;
  });
  return terms;
}

std::vector<Signed> function_terms(const ChartFunction& f) {
  std::vector<Signed> parts;
  for (const auto& [k, c] : ordered_terms(f)) {
    const std::string mono = monomial_text(f.base(), k);
    Signed s = scalar_factor(c);
    if (!mono.empty()) s.body = attach(s.body, mono);
    parts.push_back(s);
  }
  return parts;
}

std::vector<int> mask_indices(Mask m) {
  std::vector<int> idx;
  for (int c = 0; m >> c; ++c)
    if (m & (Mask{1} << c)) idx.push_back(c);
  return idx;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Gaussian& g) {
  Signed s = gaussian_signed(g);
  return s.negative ? "-" + s.body : s.body;
}

std::string to_string(const TauScalar& s) {
  std::vector<Signed> parts;
  for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) parts.push_back(scalar_term(it->first, it->second));
  return join_signed(parts);
}

std::string to_string(const ChartFunction& f) { return join_signed(function_terms(f)); }

std::string to_string(const Form& w) {
  std::vector<Mask> masks;
  for (const auto& [m, f] : w.components()) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](Mask a, Mask b) {
    if (mask_degree(a) != mask_degree(b)) return mask_degree(a) < mask_degree(b);
    return mask_indices(a) < mask_indices(b);
  });
  std::vector<Signed> parts;
  for (Mask m : masks) {
    const ChartFunction& f = w.components().at(m);
    std::vector<Signed> fterms = function_terms(f);
    if (m == 0) {
      parts.insert(parts.end(), fterms.begin(), fterms.end());
      continue;
    }
    std::string diff;
    for (int c : mask_indices(m)) diff += (diff.empty() ? "" : "^") + coordinate_differential(w.base(), c);
    Signed s;
    if (fterms.size() == 1) {
      s = fterms[0];
      s.body = attach(s.body, diff);
    } else {
      s.body = "(" + join_signed(fterms) + ") " + diff;
    }
    parts.push_back(s);
  }
  return join_signed(parts);
}

std::string to_string(const MatrixForm& m) {
  if (m.is_scalar()) return to_string(m.as_scalar());
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    out += r == 0 ? "[" : ", [";
    for (int c = 0; c < m.cols(); ++c) out += (c == 0 ? "" : ", ") + to_string(m.at(r, c));
    out += "]";
  }
  return out + "]";
}

std::string to_string(const BaseSpace& b) {
  return "R^" + std::to_string(b.chart_dim) + " x T^" + std::to_string(b.torus_dim);
}

}  // namespace khat
