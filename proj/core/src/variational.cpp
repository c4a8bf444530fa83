#include "vb/variational.hpp"

#include "vb/brst.hpp"
#include "vb/error.hpp"

namespace vb {

Lagrangian::Lagrangian(Form d, int dim) : density(std::move(d)), n(dim) {
  if (!density.homogeneous(0, n))
    throw Error("Lagrangian: density must have bidegree (0, n)");
}

GradedPoly Lagrangian::scalar() const {
  WedgeMonomial w;
  for (int d = 1; d <= n; ++d) w.push_back(Covector::dx(d));
  return density.coefficient(w);
}

namespace {

// contraction with the dual derivation partial^Lambda_A
DerivationView dual_view(FieldRef f, const MultiIndex& idx) {
  DerivationView v;
  v.parity = f.parity;
  v.dim = 0;
  v.component = [f, idx](FieldRef g, const MultiIndex& j) {
    return (g == f && j == idx) ? GradedPoly::one() : GradedPoly::zero();
  };
  return v;
}

// rho-bar of Eq. (r12) on a (k, n)-homogeneous form
Form rho_bar(const Form& f, int n) {
  // collect the contact covectors present
  std::set<std::pair<FieldRef, MultiIndex>> slots;
  for (const auto& [w, p] : f.terms())
    for (const auto& c : w)
      if (c.is_contact()) slots.insert({c.field, c.idx});

  Form r;
  for (const auto& [field, idx] : slots) {
    Form inner = interior(dual_view(field, idx), f);
    inner = total_derivative(idx, inner, n);
    Form wedged = wedge(Form::from_covector(Covector::theta(field)), inner);
    if (idx.order() % 2)
      r -= wedged;
    else
      r += wedged;
  }
  return r;
}

}  // namespace

Form rho(const Form& f, int n) {
  if (f.is_zero()) return f;
  for (const auto& [k, m] : f.bidegrees())
    if (m != n || k < 1)
      throw Error("rho: expects contact degree >= 1 and horizontal degree n");
  Form r;
  int max_k = 0;
  for (const auto& [k, m] : f.bidegrees()) max_k = std::max(max_k, k);
  for (int k = 1; k <= max_k; ++k) {
    Form fk = project(f, k, n);
    if (fk.is_zero()) continue;
    r += rho_bar(fk, n) * Rational(1, k);
  }
  return r;
}

Form euler_lagrange(const Lagrangian& L) {
  // dL = d_V L on a (0, n)-density
  Form dv = vertical_d(L.density);
  if (dv.is_zero()) return dv;
  return rho(dv, L.n);
}

std::map<FieldRef, GradedPoly> el_components(const Form& delta_l, int n) {
  std::map<FieldRef, GradedPoly> out;
  for (const auto& [w, p] : delta_l.terms()) {
    if (static_cast<int>(w.size()) != n + 1 || !w.front().is_contact() ||
        !w.front().idx.empty())
      throw Error("el_components: not a source form");
    out[w.front().field] += p;
  }
  return out;
}

LepageanXi lepagean_xi(const Lagrangian& L) {
  const GradedPoly lagr = L.scalar();
  const int n = L.n;
  const int r = lagr.jet_order();

  std::set<FieldRef> fields;
  for (const auto& g : lagr.jet_generators()) fields.insert(g.field());

  // G[(dir, Sigma)][A], built top-down; the multiset-multiplicity weights
  // realize the ordered-tuple reading of the recursion (g43)/(g99')
  std::map<std::pair<int, MultiIndex>, std::map<FieldRef, GradedPoly>> G;
  for (int s = r - 1; s >= 0; --s) {
    for (const auto& lam : multi_indices_of_order(n, s + 1)) {
      for (const auto& A : fields) {
        GradedPoly K = partial(Generator::jet(A, lam), lagr);
        for (int dir = 1; dir <= n; ++dir) {
          auto it = G.find({dir, lam});
          if (it != G.end()) {
            auto jt = it->second.find(A);
            if (jt != it->second.end()) K -= total_derivative(dir, jt->second);
          }
        }
        if (K.is_zero()) continue;
        for (int dir = 1; dir <= n; ++dir) {
          int mult = lam.count(dir);
          if (!mult) continue;
          G[{dir, *lam.minus(dir)}][A] =
              K * Rational(mult, lam.order());
        }
      }
    }
  }

  Form xi;
  for (const auto& [key, per_field] : G) {
    const auto& [dir, sigma] = key;
    for (const auto& [A, g] : per_field) {
      Form tail = multiply_poly(g, omega_lambda(n, dir));
      xi += wedge(Form::from_covector(Covector::theta(A, sigma)), tail);
    }
  }
  return LepageanXi{xi, xi + L.density};
}

Form check_decomposition(const Lagrangian& L) {
  Form xi = lepagean_xi(L).xi;
  return exterior_d(L.density, L.n) - euler_lagrange(L) +
         horizontal_d(xi, L.n);
}

Triviality triviality_test(const Lagrangian& L, const Universe& u,
                           const SolveOptions& opts) {
  Triviality t;
  Form el = euler_lagrange(L);
  if (!el.is_zero()) {
    t.verdict = Triviality::Verdict::Nontrivial;
    t.obstruction = el;
    return t;
  }
  DhSolveResult s = dh_solve(L.density, u, opts);
  t.bound_used = s.bound_used;
  if (s.verdict == DhSolveResult::Verdict::Solved) {
    t.verdict = Triviality::Verdict::Trivial;
    t.witness = s.sigma;
    // on R^n the closed base part is absorbed into the witness
    t.base_part = Form::zero();
  } else {
    t.verdict = Triviality::Verdict::Undecided;
  }
  return t;
}

}  // namespace vb
