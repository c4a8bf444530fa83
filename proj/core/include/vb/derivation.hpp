#pragma once

#include <map>

#include "vb/poly.hpp"

namespace vb {

// Plain (unprolonged) graded derivation data: base components v^lambda and
// field components v^A, with a declared parity. An even derivation maps
// even generators to even polynomials and odd to odd; an odd derivation
// flips parity. Validation rejects mixed-parity components.
struct Derivation {
  Parity parity = Parity::Even;
  std::map<int, GradedPoly> base;        // direction -> v^lambda
  std::map<FieldRef, GradedPoly> fields; // A -> v^A

  // throws on a parity-inconsistent component
  void validate() const;
};

}  // namespace vb
