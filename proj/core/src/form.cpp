#include "vb/form.hpp"

#include <algorithm>

#include "vb/error.hpp"

namespace vb {

int canonicalize_wedge(WedgeMonomial& w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0; --j) {
      if (w[j - 1] == w[j]) {
        // even-parity covectors square to zero; odd-parity ones commute
        // with themselves (exchange sign +1), so duplicates may stay
        if (!is_odd(w[j].parity())) return 0;
        break;
      }
      if (w[j] < w[j - 1]) {
        if (parity_sign(w[j - 1].parity(), w[j].parity()) > 0) sign = -sign;
        std::swap(w[j - 1], w[j]);
      } else {
        break;
      }
    }
  // adjacent equal even-parity covectors that were already adjacent
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i - 1] == w[i] && !is_odd(w[i].parity())) return 0;
  return sign;
}

Form Form::from_poly(GradedPoly p) {
  Form f;
  if (!p.is_zero()) f.terms_.emplace(WedgeMonomial{}, std::move(p));
  return f;
}

Form Form::from_covector(const Covector& c) {
  Form f;
  f.terms_.emplace(WedgeMonomial{c}, GradedPoly::one());
  return f;
}

GradedPoly Form::coefficient(const WedgeMonomial& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? GradedPoly::zero() : it->second;
}

void Form::add_term(const WedgeMonomial& w, const GradedPoly& c) {
  if (c.is_zero()) return;
  WedgeMonomial key = w;
  int s = canonicalize_wedge(key);
  if (s == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), s > 0 ? c : -c);
  } else {
    if (s > 0)
      it->second += c;
    else
      it->second -= c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form Form::operator-() const {
  Form r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
  return r;
}

Form& Form::operator+=(const Form& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

Form Form::operator+(const Form& o) const {
  Form r = *this;
  r += o;
  return r;
}

Form Form::operator-(const Form& o) const {
  Form r = *this;
  r -= o;
  return r;
}

Form Form::operator*(const Rational& c) const {
  Form r;
  if (c == 0) return r;
  for (const auto& [w, p] : terms_) r.terms_.emplace(w, p * c);
  return r;
}

std::set<std::pair<int, int>> Form::bidegrees() const {
  std::set<std::pair<int, int>> s;
  for (const auto& [w, p] : terms_) {
    int k = 0, m = 0;
    for (const auto& c : w) (c.is_contact() ? k : m)++;
    s.insert({k, m});
  }
  return s;
}

bool Form::homogeneous(int k, int m) const {
  auto bd = bidegrees();
  return bd.empty() || (bd.size() == 1 && *bd.begin() == std::pair{k, m});
}

int Form::jet_order() const {
  int o = 0;
  for (const auto& [w, p] : terms_) {
    o = std::max(o, p.jet_order());
    for (const auto& c : w)
      if (c.is_contact()) o = std::max(o, c.idx.order());
  }
  return o;
}

int Form::degree() const {
  int d = 0;
  for (const auto& [w, p] : terms_) d = std::max<int>(d, w.size());
  return d;
}

std::optional<int> Form::charge(const Universe& u) const {
  std::optional<int> k;
  for (const auto& [w, p] : terms_) {
    int cw = 0;
    for (const auto& c : w)
      if (c.is_contact()) cw += u.charge_of(c.field);
    auto cp = p.charge(u);
    if (!cp) return std::nullopt;
    int total = cw + *cp;
    if (!k)
      k = total;
    else if (*k != total)
      return std::nullopt;
  }
  return k ? k : std::optional<int>(0);
}

std::string Form::debug() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, p] : terms_) {
    if (!s.empty()) s += "  +  ";
    s += "(" + p.debug() + ")";
    for (const auto& c : w) {
      s += " ^ ";
      if (c.is_contact()) {
        s += "th[" + std::string(c.field.parity == Parity::Odd ? "c" : "y") +
             std::to_string(c.field.index);
        if (!c.idx.empty()) s += "_{" + c.idx.to_string() + "}";
        s += "]";
      } else {
        s += "dx" + std::to_string(c.dir);
      }
    }
  }
  return s;
}

GradedPoly apply_derivation(const DerivationView& v, const GradedPoly& f) {
  GradedPoly r;
  for (const auto& g : f.generators()) {
    GradedPoly comp = g.is_base()
                          ? (v.dim ? v.base(g.dir()) : GradedPoly::zero())
                          : v.component(g.field(), g.index());
    if (!comp.is_zero()) r += comp * partial(g, f);
  }
  return r;
}

namespace {

Parity wedge_parity(const WedgeMonomial& w) {
  int odd = 0;
  for (const auto& c : w) odd ^= is_odd(c.parity()) ? 1 : 0;
  return odd ? Parity::Odd : Parity::Even;
}

// moving a 0-form of parity p left across w costs (-1)^{[p][w]}
int cross_sign(Parity p, const WedgeMonomial& w) {
  return parity_sign(p, wedge_parity(w));
}

}  // namespace

Form multiply_poly(const GradedPoly& p, const Form& f) {
  Form r;
  for (const auto& [w, c] : f.terms()) r.add_term(w, p * c);
  return r;
}

Form wedge(const Form& a, const Form& b) {
  Form r;
  for (const auto& [wa, pa] : a.terms())
    for (const auto& [wb, pb] : b.terms()) {
      // (pa wa) ^ (pb wb): pb crosses wa
      for (Parity s : {Parity::Even, Parity::Odd}) {
        GradedPoly part = pb.part(s);
        if (part.is_zero()) continue;
        GradedPoly coeff = pa * part;
        if (cross_sign(s, wa) < 0) coeff = -coeff;
        WedgeMonomial w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, coeff);
      }
    }
  return r;
}

Form total_derivative(int dir, const Form& f, int n) {
  (void)n;
  Form r;
  for (const auto& [w, p] : f.terms()) {
    r.add_term(w, total_derivative(dir, p));
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_contact()) continue;  // d_lambda dx = 0
      WedgeMonomial shifted = w;
      shifted[i] = Covector::theta(w[i].field, w[i].idx.plus(dir));
      r.add_term(shifted, p);
    }
  }
  return r;
}

Form total_derivative(const MultiIndex& idx, const Form& f, int n) {
  Form r = f;
  for (auto d : idx.entries()) r = total_derivative(d, r, n);
  return r;
}

Form horizontal_d(const Form& f, int n) {
  Form r;
  for (int dir = 1; dir <= n; ++dir) {
    Form df = total_derivative(dir, f, n);
    for (const auto& [w, p] : df.terms()) {
      // dx^dir ^ (p w): p crosses a single even covector, no sign
      WedgeMonomial ext;
      ext.reserve(w.size() + 1);
      ext.push_back(Covector::dx(dir));
      ext.insert(ext.end(), w.begin(), w.end());
      r.add_term(ext, p);
    }
  }
  return r;
}

Form vertical_d(const Form& f) {
  Form r;
  for (const auto& [w, p] : f.terms())
    for (const auto& g : p.jet_generators()) {
      Covector th = Covector::theta(g.field(), g.index());
      GradedPoly dp = partial(g, p);
      for (Parity s : {Parity::Even, Parity::Odd}) {
        GradedPoly part = dp.part(s);
        if (part.is_zero()) continue;
        if (parity_sign(th.parity(), s) < 0) part = -part;
        WedgeMonomial ext;
        ext.reserve(w.size() + 1);
        ext.push_back(th);
        ext.insert(ext.end(), w.begin(), w.end());
        r.add_term(ext, part);
      }
    }
  return r;
}

Form exterior_d(const Form& f, int n) {
  return horizontal_d(f, n) + vertical_d(f);
}

std::pair<Form, Form> split_d(const Form& f, int n) {
  return {horizontal_d(f, n), vertical_d(f)};
}

Form project(const Form& f, int k, int m) {
  Form r;
  for (const auto& [w, p] : f.terms()) {
    int kc = 0, mc = 0;
    for (const auto& c : w) (c.is_contact() ? kc : mc)++;
    if (kc == k && mc == m) r.add_term(w, p);
  }
  return r;
}

Form h0(const Form& f) {
  Form r;
  for (const auto& [w, p] : f.terms()) {
    bool contact = false;
    for (const auto& c : w) contact |= c.is_contact();
    if (!contact) r.add_term(w, p);
  }
  return r;
}

Form contact_part(const Form& f) { return f - h0(f); }

namespace {

// v contracted with a single covector
GradedPoly contract_covector(const DerivationView& v, const Covector& c) {
  if (!c.is_contact()) return v.dim ? v.base(c.dir) : GradedPoly::zero();
  // theta^A_L = ds^A_L - s^A_{l+L} dx^l, so the contraction is
  // v^A_L - (-1)^{[A][v]} s^A_{l+L} v^l
  GradedPoly r = v.component(c.field, c.idx);
  for (int dir = 1; dir <= v.dim; ++dir) {
    GradedPoly b = v.base(dir);
    if (b.is_zero()) continue;
    GradedPoly s = GradedPoly::generator(
        Generator::jet(c.field, c.idx.plus(dir)));
    GradedPoly term = s * b;
    if (parity_sign(c.field.parity, v.parity) < 0) term = -term;
    r -= term;
  }
  return r;
}

}  // namespace

Form interior(const DerivationView& v, const Form& f) {
  for (const auto& [w, p] : f.terms())
    if (w.empty()) throw Error("interior: cannot contract a 0-form");
  Form r;
  for (const auto& [w, p] : f.terms()) {
    int leading = 1;                 // (-1)^{i-1} and [v]-crossings
    int prefix_odd = 0;              // Grassmann parity of kappa_1..kappa_{i-1}
    for (std::size_t i = 0; i < w.size(); ++i) {
      GradedPoly c = contract_covector(v, w[i]);
      if (!c.is_zero()) {
        WedgeMonomial rest;
        rest.reserve(w.size() - 1);
        for (std::size_t j = 0; j < w.size(); ++j)
          if (j != i) rest.push_back(w[j]);
        for (Parity s : {Parity::Even, Parity::Odd}) {
          GradedPoly cs = c.part(s);
          if (cs.is_zero()) continue;
          int sign = leading;
          // contraction coefficient crosses the prefix covectors
          if (is_odd(s) && (prefix_odd % 2)) sign = -sign;
          // and the outer coefficient p crosses v
          for (Parity ps : {Parity::Even, Parity::Odd}) {
            GradedPoly pp = p.part(ps);
            if (pp.is_zero()) continue;
            GradedPoly coeff = pp * cs;
            int s2 = sign * (parity_sign(ps, v.parity) < 0 ? -1 : 1);
            r.add_term(rest, s2 < 0 ? -coeff : coeff);
          }
        }
      }
      // advance the Leibniz prefix: (-1)^{1+[kappa_i][v]}
      leading = -leading;
      if (is_odd(w[i].parity()) && is_odd(v.parity)) leading = -leading;
      prefix_odd += is_odd(w[i].parity()) ? 1 : 0;
    }
  }
  return r;
}

Form lie_derivative(const DerivationView& v, const Form& f, int n) {
  Form zero_part, rest;
  for (const auto& [w, p] : f.terms()) {
    if (w.empty())
      zero_part.add_term(w, p);
    else
      rest.add_term(w, p);
  }
  Form r;
  if (!zero_part.is_zero())
    r += Form::from_poly(
        apply_derivation(v, zero_part.coefficient(WedgeMonomial{})));
  if (!rest.is_zero()) {
    r += interior(v, exterior_d(rest, n));
    Form inner = interior(v, rest);
    r += exterior_d(inner, n);
  }
  return r;
}

Form omega(int n) {
  WedgeMonomial w;
  for (int d = 1; d <= n; ++d) w.push_back(Covector::dx(d));
  Form f;
  f.add_term(w, GradedPoly::one());
  return f;
}

Form omega_lambda(int n, int dir) {
  WedgeMonomial w;
  for (int d = 1; d <= n; ++d)
    if (d != dir) w.push_back(Covector::dx(d));
  Form f;
  GradedPoly c = GradedPoly::one();
  if ((dir - 1) % 2) c = -c;
  f.add_term(w, c);
  return f;
}

}  // namespace vb
