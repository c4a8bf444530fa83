#pragma once

#include <map>

#include "vb/form.hpp"

namespace vb {

// Horizontal density L = Lagr * omega of bidegree (0, n).
struct Lagrangian {
  Form density;
  int n = 1;

  Lagrangian() = default;
  Lagrangian(Form d, int n);  // validates the bidegree
  // the coefficient of omega
  GradedPoly scalar() const;
};

// projector rho of Eq. (r12) on (k>0, n)-forms; rho o d_H = 0, rho o rho = rho
Form rho(const Form& f, int n);

// delta L = rho(dL): source form  sum_A E_A theta^A ^ omega
Form euler_lagrange(const Lagrangian& L);

// components E_A read off a (1, n)-form in the image of rho
std::map<FieldRef, GradedPoly> el_components(const Form& delta_l, int n);

// Lepagean form Xi of (g43)/(g99') with all h = 0, and Xi_L = Xi + L
struct LepageanXi {
  Form xi;    // (1, n-1)
  Form xi_l;  // Xi + L
};
LepageanXi lepagean_xi(const Lagrangian& L);

// dL - delta L + d_H Xi; the contract is literal zero
Form check_decomposition(const Lagrangian& L);

struct Triviality {
  enum class Verdict { Trivial, Nontrivial, Undecided };
  Verdict verdict = Verdict::Undecided;
  Form witness;      // xi with L = base_part + d_H xi
  Form base_part;    // always zero on R^n (absorbed into the witness)
  Form obstruction;  // delta L when nonzero
  int bound_used = 0;
};
struct SolveOptions;  // brst.hpp
Triviality triviality_test(const Lagrangian& L, const Universe& u,
                           const SolveOptions& opts);

}  // namespace vb
