#pragma once

#include <memory>
#include <optional>

#include "vb/derivation.hpp"
#include "vb/form.hpp"
#include "vb/variational.hpp"

namespace vb {

// Generalized (super)symmetry: base components v^lambda plus the vertical
// characteristic theta^A, prolonged on demand to any multi-index. The
// prolongation cache is memoized behind a mutex; externally the object
// behaves as an immutable pure value.
class SuperSymmetry {
 public:
  SuperSymmetry() = default;

  // vertical symmetry from its characteristic
  static SuperSymmetry vertical(Parity parity, int n,
                                std::map<FieldRef, GradedPoly> characteristic);
  // general symmetry from base components and characteristic
  static SuperSymmetry make(Parity parity, int n,
                            std::map<int, GradedPoly> base,
                            std::map<FieldRef, GradedPoly> characteristic);
  // from a plain derivation with components v^A: theta^A = v^A - v^mu s^A_mu
  static SuperSymmetry from_derivation(const Derivation& d, int n);

  Parity parity() const { return parity_; }
  int dim() const { return n_; }

  GradedPoly base_component(int dir) const;
  GradedPoly characteristic(FieldRef f) const;
  const std::map<FieldRef, GradedPoly>& characteristics() const {
    return char_;
  }
  const std::map<int, GradedPoly>& base_components() const { return base_; }

  // prolonged component v^A_Lambda = d_Lambda(theta^A) + v^mu s^A_{mu+Lambda}
  GradedPoly component(FieldRef f, const MultiIndex& idx) const;

  bool is_vertical() const { return base_.empty(); }
  // v^lambda depend on base coordinates only
  bool is_projectable() const;

  SuperSymmetry vertical_part() const;

  // copy with one prolonged component replaced (deliberate corruption for
  // contact-ideal diagnostics)
  SuperSymmetry with_override(FieldRef f, const MultiIndex& idx,
                              GradedPoly value) const;

  DerivationView view() const;

  // v(f)
  GradedPoly apply(const GradedPoly& f) const;
  Form apply(const Form& f) const;  // Lie derivative

 private:
  Parity parity_ = Parity::Even;
  int n_ = 1;
  std::map<int, GradedPoly> base_;
  std::map<FieldRef, GradedPoly> char_;

  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// spec-level name for component(): Eq. (g4) prolongation, cached
GradedPoly prolong(const SuperSymmetry& v, FieldRef f, const MultiIndex& idx);

// h0(L_v theta^A_Lambda) for all fields and |Lambda| <= r: zero iff the
// contact ideal is preserved
struct ContactResidual {
  FieldRef field;
  MultiIndex idx;
  Form residual;
};
std::vector<ContactResidual> contact_preservation_check(const SuperSymmetry& v,
                                                        const Universe& u,
                                                        int order);

// L_v L - [v_V | delta L + d_H h0(v | Xi_L) + d_V(v_H | omega) ^ Lagr];
// exactly zero for every generalized supersymmetry
Form first_variational_residual(const SuperSymmetry& v, const Lagrangian& L);

struct NoetherCurrent {
  Form current;   // J = h0(v | Xi_L) - sigma
  Form residual;  // d_H J + v | delta L, an exact off-shell zero
};
// v must be vertical; if sigma is given, L_v L = d_H sigma is verified first
NoetherCurrent noether_current(const SuperSymmetry& v, const Lagrangian& L,
                               const std::optional<Form>& sigma = {});

struct DivergenceSymmetry {
  enum class Verdict { Yes, No, Undecided };
  Verdict verdict = Verdict::Undecided;
  Form sigma;        // witness with L_v L = d_H sigma
  Form obstruction;  // delta(L_v L) when nonzero
  int bound_used = 0;
};
struct SolveOptions;  // brst.hpp
DivergenceSymmetry divergence_symmetry_test(const SuperSymmetry& v,
                                            const Lagrangian& L,
                                            const Universe& u,
                                            const SolveOptions& opts);

struct ElSymmetryDefect {
  Form defect;      // delta(L_v L) - L_v(delta L)
  Form correction;  // the higher-order correction sum, computed independently
};
// vertical even symmetries
ElSymmetryDefect el_symmetry_defect(const SuperSymmetry& v,
                                    const Lagrangian& L);

}  // namespace vb
