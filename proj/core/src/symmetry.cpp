#include "vb/symmetry.hpp"

#include <mutex>

#include "vb/brst.hpp"
#include "vb/error.hpp"

namespace vb {

void Derivation::validate() const {
  for (const auto& [dir, p] : base) {
    auto pp = p.parity();
    if (!pp || (!p.is_zero() && *pp != parity))
      throw Error("derivation: base component of wrong parity");
  }
  for (const auto& [f, p] : fields) {
    auto pp = p.parity();
    Parity want = f.parity ^ parity;
    if (!pp || (!p.is_zero() && *pp != want))
      throw Error("derivation: field component of wrong parity");
  }
}

struct SuperSymmetry::Cache {
  std::mutex mu;
  std::map<std::pair<FieldRef, MultiIndex>, GradedPoly> memo;
  std::map<std::pair<FieldRef, MultiIndex>, GradedPoly> overrides;
};

SuperSymmetry SuperSymmetry::vertical(
    Parity parity, int n, std::map<FieldRef, GradedPoly> characteristic) {
  return make(parity, n, {}, std::move(characteristic));
}

SuperSymmetry SuperSymmetry::make(
    Parity parity, int n, std::map<int, GradedPoly> base,
    std::map<FieldRef, GradedPoly> characteristic) {
  SuperSymmetry s;
  s.parity_ = parity;
  s.n_ = n;
  for (auto& [d, p] : base)
    if (!p.is_zero()) s.base_.emplace(d, std::move(p));
  for (auto& [f, p] : characteristic)
    if (!p.is_zero()) s.char_.emplace(f, std::move(p));
  s.cache_ = std::make_shared<Cache>();

  Derivation d;
  d.parity = parity;
  d.base = s.base_;
  d.fields = s.char_;
  d.validate();
  return s;
}

SuperSymmetry SuperSymmetry::from_derivation(const Derivation& d, int n) {
  d.validate();
  std::map<FieldRef, GradedPoly> chars;
  for (const auto& [f, comp] : d.fields) {
    GradedPoly theta = comp;
    for (const auto& [dir, b] : d.base)
      theta -= b * GradedPoly::generator(
                       Generator::jet(f, MultiIndex::single(dir)));
    chars[f] = theta;
  }
  return make(d.parity, n, d.base, std::move(chars));
}

GradedPoly SuperSymmetry::base_component(int dir) const {
  auto it = base_.find(dir);
  return it == base_.end() ? GradedPoly::zero() : it->second;
}

GradedPoly SuperSymmetry::characteristic(FieldRef f) const {
  auto it = char_.find(f);
  return it == char_.end() ? GradedPoly::zero() : it->second;
}

GradedPoly SuperSymmetry::component(FieldRef f, const MultiIndex& idx) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto key = std::make_pair(f, idx);
  if (auto it = cache_->overrides.find(key); it != cache_->overrides.end())
    return it->second;
  if (auto it = cache_->memo.find(key); it != cache_->memo.end())
    return it->second;
  // v^A_Lambda = d_Lambda(theta^A) + v^mu s^A_{mu+Lambda}; the base
  // coefficient multiplies from the left so that v = v_H + v_V holds for
  // odd base components as well
  GradedPoly r = total_derivative(idx, characteristic(f));
  for (const auto& [dir, b] : base_)
    r += b * GradedPoly::generator(Generator::jet(f, idx.plus(dir)));
  cache_->memo.emplace(std::move(key), r);
  return r;
}

bool SuperSymmetry::is_projectable() const {
  for (const auto& [dir, p] : base_)
    if (!p.jet_generators().empty()) return false;
  return true;
}

SuperSymmetry SuperSymmetry::vertical_part() const {
  return vertical(parity_, n_, char_);
}

SuperSymmetry SuperSymmetry::with_override(FieldRef f, const MultiIndex& idx,
                                           GradedPoly value) const {
  SuperSymmetry s = *this;
  s.cache_ = std::make_shared<Cache>();
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    s.cache_->overrides = cache_->overrides;
  }
  s.cache_->overrides[{f, idx}] = std::move(value);
  return s;
}

DerivationView SuperSymmetry::view() const {
  DerivationView v;
  v.parity = parity_;
  v.dim = base_.empty() ? 0 : n_;
  SuperSymmetry self = *this;  // shares the cache
  v.base = [self](int dir) { return self.base_component(dir); };
  v.component = [self](FieldRef f, const MultiIndex& idx) {
    return self.component(f, idx);
  };
  return v;
}

GradedPoly SuperSymmetry::apply(const GradedPoly& f) const {
  return apply_derivation(view(), f);
}

Form SuperSymmetry::apply(const Form& f) const {
  return lie_derivative(view(), f, n_);
}

GradedPoly prolong(const SuperSymmetry& v, FieldRef f, const MultiIndex& idx) {
  return v.component(f, idx);
}

std::vector<ContactResidual> contact_preservation_check(const SuperSymmetry& v,
                                                        const Universe& u,
                                                        int order) {
  std::vector<ContactResidual> out;
  for (const auto& f : u.fields())
    for (const auto& idx : multi_indices_up_to(u.n, order)) {
      Form theta = Form::from_covector(Covector::theta(f, idx));
      Form lie = v.apply(theta);
      out.push_back({f, idx, h0(lie)});
    }
  return out;
}

Form first_variational_residual(const SuperSymmetry& v, const Lagrangian& L) {
  const int n = L.n;
  Form lie = v.apply(L.density);

  Form delta = euler_lagrange(L);
  Form t1 = delta.is_zero() ? Form::zero()
                            : interior(v.vertical_part().view(), delta);

  Form xi_l = lepagean_xi(L).xi_l;
  Form t2 = horizontal_d(h0(interior(v.view(), xi_l)), n);

  Form t3;
  if (!v.is_vertical()) {
    DerivationView hor;
    hor.parity = v.parity();
    hor.dim = n;
    SuperSymmetry self = v;
    hor.base = [self](int dir) { return self.base_component(dir); };
    hor.component = [](FieldRef, const MultiIndex&) {
      return GradedPoly::zero();
    };
    Form j_h = interior(hor, omega(n));
    t3 = wedge(vertical_d(j_h), Form::from_poly(L.scalar()));
  }
  return lie - t1 - t2 - t3;
}

NoetherCurrent noether_current(const SuperSymmetry& v, const Lagrangian& L,
                               const std::optional<Form>& sigma) {
  if (!v.is_vertical())
    throw Error("noether_current: symmetry must be vertical");
  const int n = L.n;
  if (sigma) {
    Form diff = v.apply(L.density) - horizontal_d(*sigma, n);
    if (!diff.is_zero())
      throw Error("noether_current: L_v L != d_H sigma, difference " +
                  diff.debug());
  }
  Form xi_l = lepagean_xi(L).xi_l;
  Form j = h0(interior(v.view(), xi_l));
  if (sigma) j -= *sigma;
  Form delta = euler_lagrange(L);
  Form contracted = delta.is_zero() ? Form::zero() : interior(v.view(), delta);
  Form residual = horizontal_d(j, n) + contracted;
  return NoetherCurrent{j, residual};
}

DivergenceSymmetry divergence_symmetry_test(const SuperSymmetry& v,
                                            const Lagrangian& L,
                                            const Universe& u,
                                            const SolveOptions& opts) {
  if (!v.is_projectable())
    throw Error(
        "divergence_symmetry_test: base components must depend on base "
        "coordinates only (non-projectable symmetries are never divergence "
        "symmetries)");
  const SuperSymmetry w = v.is_vertical() ? v : v.vertical_part();
  DivergenceSymmetry r;
  Form lie = w.apply(L.density);
  Lagrangian lie_density(lie, L.n);
  Form obstruction = euler_lagrange(lie_density);
  if (!obstruction.is_zero()) {
    r.verdict = DivergenceSymmetry::Verdict::No;
    r.obstruction = obstruction;
    return r;
  }
  DhSolveResult s = dh_solve(lie, u, opts);
  r.bound_used = s.bound_used;
  if (s.verdict == DhSolveResult::Verdict::Solved) {
    r.verdict = DivergenceSymmetry::Verdict::Yes;
    r.sigma = s.sigma;
  } else {
    r.verdict = DivergenceSymmetry::Verdict::Undecided;
  }
  return r;
}

ElSymmetryDefect el_symmetry_defect(const SuperSymmetry& v,
                                    const Lagrangian& L) {
  if (!v.is_vertical() || v.parity() != Parity::Even)
    throw Error("el_symmetry_defect: needs a vertical even symmetry");
  const int n = L.n;

  Form delta = euler_lagrange(L);
  Form lie_l = v.apply(L.density);
  Form defect =
      euler_lagrange(Lagrangian(lie_l, n)) - v.apply(delta);

  // independent computation of the correction sum
  auto el = el_components(delta, n);
  Form vol = omega(n);
  Form correction;
  std::set<std::pair<FieldRef, MultiIndex>> slots;
  for (const auto& [i, theta] : v.characteristics())
    for (const auto& g : theta.jet_generators())
      if (g.index().order() > 0) slots.insert({g.field(), g.index()});
  for (const auto& [k, lam] : slots) {
    GradedPoly coeff;
    for (const auto& [i, theta] : v.characteristics()) {
      auto it = el.find(i);
      if (it == el.end()) continue;
      coeff += partial(Generator::jet(k, lam), theta) * it->second;
    }
    if (coeff.is_zero()) continue;
    // dy^k = theta^k + s^k_mu dx^mu
    Form dy = Form::from_covector(Covector::theta(k));
    for (int dir = 1; dir <= n; ++dir)
      dy += multiply_poly(
          GradedPoly::generator(Generator::jet(k, MultiIndex::single(dir))),
          Form::from_covector(Covector::dx(dir)));
    Form term = total_derivative(lam, multiply_poly(coeff, dy), n);
    term = wedge(term, vol);
    if (lam.order() % 2)
      correction -= term;
    else
      correction += term;
  }
  return ElSymmetryDefect{defect, correction};
}

}  // namespace vb
