#pragma once

// Canonical text for exact values.  Monomials are ordered by degree and then
// lexicographically; tau powers are printed in descending order.

#include <string>

#include "khat/forms.hpp"

namespace khat {

std::string to_string(const Rational& q);
std::string to_string(const Gaussian& g);
std::string to_string(const TauScalar& s);
std::string to_string(const ChartFunction& f);
std::string to_string(const Form& w);
/// A 1x1 form prints as its entry, anything else as [[..], [..]].
std::string to_string(const MatrixForm& m);
std::string to_string(const BaseSpace& b);

}  // namespace khat
