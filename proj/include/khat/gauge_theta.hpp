#pragma once

// Pullbacks g*Theta of the odd form on GL and the Lambda_GL membership test.

#include <optional>
#include <string>
#include <vector>

#include "khat/connections.hpp"

namespace khat {

/// b_j = 1/(j-1)! tau^-j int_0^1 (t^2 - t)^{j-1} dt, via the closed form.
TauScalar b_coefficient(int j);
/// Same value computed by expanding the integrand polynomial.
TauScalar b_coefficient_by_expansion(int j);

struct ThetaPullback {
  GaugeTransform gauge;
  MatrixForm form;
};

/// sum_j b_j tr((g^-1 dg)^{2j-1}), degrees up to top_degree (negative: all).
ThetaPullback theta_pullback(const GaugeTransform& g, int top_degree = -1);

struct LambdaVerdict {
  enum class Kind { member, nonmember, unknown };
  Kind kind = Kind::unknown;
  /// For members: integer multiplicity of each certificate.
  std::vector<int> combination;
  /// For nonmembers with a period witness.
  std::optional<Cycle> witness_cycle;
  std::optional<TauScalar> witness_period;
  std::string reason;
};

const char* to_string(LambdaVerdict::Kind kind);

/// Three-valued test of w in Lambda_GL.  Certificates are combined with integer
/// multiplicities in [-bound, bound].
LambdaVerdict lambda_gl_test(const MatrixForm& w, const std::vector<GaugeTransform>& certificates,
                             int bound = 3);

}  // namespace khat
