#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vb/symmetry.hpp"

namespace vb {

// Gauge sector data for the BRST supersymmetry of Eq. (g130): gauge fields
// a^r_lambda (even, one per Lie index and direction), ghosts C^r (odd,
// charge 1) and exact-rational structure constants c^r_{pq}. Antisymmetry
// and the Jacobi identity are enforced at construction.
class BrstModel {
 public:
  BrstModel(int n, int dim, std::vector<Rational> structure);  // c[r][p][q]

  static BrstModel abelian(int n, int dim);
  static BrstModel su2(int n);  // c^r_{pq} = epsilon_{rpq}

  int n() const { return n_; }
  int dim() const { return dim_; }
  const Rational& c(int r, int p, int q) const {
    return c_[(r * dim_ + p) * dim_ + q];
  }

  Universe universe() const;

  // field layout: even a[(r,lambda)] at index r*n + (lambda-1); odd C[r]
  FieldRef gauge_field(int r, int dir) const {
    return even_field(r * n_ + (dir - 1));
  }
  FieldRef ghost(int r) const { return odd_field(r); }

 private:
  int n_;
  int dim_;
  std::vector<Rational> c_;
};

// the vertical odd supersymmetry v^r_lambda = C^r_lambda + c^r_{pq} a^p_l C^q,
// v^r = 1/2 c^r_{pq} C^p C^q
SuperSymmetry build_brst(const BrstModel& m);

// L_v(v^A) per field; all zero iff v is nilpotent. Also reports whether the
// candidate could be nilpotent at all (nilpotent supersymmetries are odd).
struct NilpotencyResidual {
  FieldRef field;
  GradedPoly residual;
};
struct NilpotencyReport {
  std::vector<NilpotencyResidual> residuals;
  bool nilpotent = false;
  bool parity_admissible = false;  // false for even candidates
};
NilpotencyReport nilpotency_check(const SuperSymmetry& v, const Universe& u);

// s_v phi = (-1)^{|phi|} L_v phi on horizontal forms; errors on contact terms
Form s_operator(const SuperSymmetry& v, const Form& f);

struct SolveOptions {
  // cap on the ansatz jet order; negative means "use the default":
  // max(jet_order(phi)+1, VB_SOLVER_BOUND or 3)
  int bound = -1;
  int resolve(int phi_order) const;
};

struct DhSolveResult {
  enum class Verdict { Solved, Obstruction, Undecided };
  Verdict verdict = Verdict::Undecided;
  Form sigma;        // d_H sigma = phi, re-verified before returning
  Form obstruction;  // delta(phi) for m = n, or d_H phi for m < n
  std::string note;
  int bound_used = 0;
};

// Solve d_H sigma = phi for horizontal phi of degree 1 <= m <= n by exact
// linear ansatz matching. For m = n a nonzero delta(phi) is a definite
// obstruction; otherwise failure at the bound is an honest "undecided".
DhSolveResult dh_solve(const Form& phi, const Universe& u,
                       const SolveOptions& opts = {});

// Descent data: phi[m] has horizontal degree m (m = n..0), rhs[m] are the
// closed base-form right-hand sides for m = n-1..0 (constants at degree 0).
struct DescentChain {
  std::vector<Form> phi;  // indexed by horizontal degree, size n+1
  std::vector<Form> rhs;  // indexed by horizontal degree, size n
};

struct DescentResult {
  enum class Verdict { Complete, Partial };
  Verdict verdict = Verdict::Partial;
  DescentChain chain;
  int failed_degree = -1;  // rung whose d_H-inversion was undecided
  std::string diagnostic;
  std::vector<Form> residuals;  // re-verification of every rung
};

// Construct the descent chain under phi_n: solve d_H phi_{n-1} = -s_v phi_n
// and iterate; every returned chain is re-verified exactly.
DescentResult descent_solve(const SuperSymmetry& v, const Form& phi_n,
                            const Universe& u, const SolveOptions& opts = {});

// residual of every rung equation of (aa11); all zero for a valid chain
std::vector<Form> descent_verify(const SuperSymmetry& v,
                                 const DescentChain& chain, const Universe& u);

struct CocycleResult {
  enum class Tri { Yes, No, Undecided };
  Tri closed = Tri::Undecided;   // d_H phi = 0 and s_v phi d_H-exact
  Tri exact = Tri::Undecided;    // phi = s_v xi + d_H sigma with d_H xi = 0
  Form closure_witness;          // sigma' with d_H sigma' = s_v phi
  Form closure_obstruction;      // nonzero d_H phi, or delta(s_v phi)
  Form xi, sigma;                // exactness witnesses
  int charge = 0;
  int bound_used = 0;
};

// iterated (s_v | d_H) cocycle test on a charge-homogeneous horizontal form
CocycleResult iterated_cocycle_check(const SuperSymmetry& v, const Form& phi,
                                     const Universe& u,
                                     const SolveOptions& opts = {});

}  // namespace vb
