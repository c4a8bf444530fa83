#pragma once

#include <optional>
#include <vector>

#include "vb/rational.hpp"

namespace vb {

// Dense exact-rational linear system A x = b. Deterministic: rows and
// columns are eliminated in their given order (first nonzero pivot per
// column), free variables are set to zero.
struct LinearSystem {
  int cols = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;

  void add_row(std::vector<Rational> row, Rational b) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }
};

// nullopt when inconsistent
std::optional<std::vector<Rational>> solve(LinearSystem sys);

}  // namespace vb
