#pragma once

#include <vector>

#include "vb/generator.hpp"

namespace vb {

// The generator universe of a model: base dimension and the declared even
// and odd field slots with their charge numbers. Charges only matter for
// the (s,d_H) bicomplex grading; the default is 0 for even fields and 1
// for odd ones.
struct Universe {
  int n = 1;
  std::vector<int> even_charges;  // one entry per even field
  std::vector<int> odd_charges;   // one entry per odd field

  static Universe make(int n, int even_fields, int odd_fields) {
    Universe u;
    u.n = n;
    u.even_charges.assign(even_fields, 0);
    u.odd_charges.assign(odd_fields, 1);
    return u;
  }

  int even_count() const { return static_cast<int>(even_charges.size()); }
  int odd_count() const { return static_cast<int>(odd_charges.size()); }

  int charge_of(FieldRef f) const {
    return f.parity == Parity::Even ? even_charges[f.index]
                                    : odd_charges[f.index];
  }

  std::vector<FieldRef> fields() const {
    std::vector<FieldRef> r;
    for (int i = 0; i < even_count(); ++i) r.push_back(even_field(i));
    for (int a = 0; a < odd_count(); ++a) r.push_back(odd_field(a));
    return r;
  }
};

}  // namespace vb
