#include "vb/poly.hpp"

#include <algorithm>

#include "vb/error.hpp"

namespace vb {

std::vector<MultiIndex> multi_indices_of_order(int n, int order) {
  std::vector<MultiIndex> out;
  std::vector<int> cur;
  // non-decreasing tuples == multisets
  std::function<void(int)> rec = [&](int min_dir) {
    if (static_cast<int>(cur.size()) == order) {
      out.emplace_back(cur);
      return;
    }
    for (int d = min_dir; d <= n; ++d) {
      cur.push_back(d);
      rec(d);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
  std::vector<MultiIndex> out;
  for (int o = 0; o <= max_order; ++o) {
    auto v = multi_indices_of_order(n, o);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

GradedPoly GradedPoly::constant(Rational c) {
  GradedPoly p;
  if (c != 0) p.terms_.emplace(Monomial{}, std::move(c));
  return p;
}

GradedPoly GradedPoly::generator(const Generator& g) {
  GradedPoly p;
  Monomial m;
  if (is_odd(g.parity()))
    m.odd.push_back(g);
  else
    m.even.emplace_back(g, 1);
  p.terms_.emplace(std::move(m), 1);
  return p;
}

std::optional<Parity> GradedPoly::parity() const {
  std::optional<Parity> p;
  for (const auto& [m, c] : terms_) {
    if (!p)
      p = m.parity();
    else if (*p != m.parity())
      return std::nullopt;
  }
  return p ? p : std::optional<Parity>(Parity::Even);  // zero counts as even
}

GradedPoly GradedPoly::part(Parity p) const {
  GradedPoly r;
  for (const auto& [m, c] : terms_)
    if (m.parity() == p) r.terms_.emplace(m, c);
  return r;
}

int GradedPoly::jet_order() const {
  int o = 0;
  for (const auto& [m, c] : terms_) o = std::max(o, m.jet_order());
  return o;
}

int GradedPoly::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::optional<int> GradedPoly::charge(const Universe& u) const {
  std::optional<int> k;
  for (const auto& [m, c] : terms_) {
    int mk = m.charge(u);
    if (!k)
      k = mk;
    else if (*k != mk)
      return std::nullopt;
  }
  return k ? k : std::optional<int>(0);
}

std::set<Generator> GradedPoly::generators() const {
  std::set<Generator> s;
  for (const auto& [m, c] : terms_) {
    for (const auto& [g, e] : m.even) s.insert(g);
    for (const auto& g : m.odd) s.insert(g);
  }
  return s;
}

std::set<Generator> GradedPoly::jet_generators() const {
  std::set<Generator> s;
  for (const auto& g : generators())
    if (!g.is_base()) s.insert(g);
  return s;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
  GradedPoly r = *this;
  r += o;
  return r;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const {
  GradedPoly r = *this;
  r -= o;
  return r;
}

namespace {

// Multiply two canonical monomials. Returns the sign (+1/-1) or 0 when an
// odd generator repeats; the merged monomial is written to `out`.
int mul_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  out.even.clear();
  out.odd.clear();

  // even parts: merge by generator, adding exponents
  std::size_t i = 0, j = 0;
  while (i < a.even.size() || j < b.even.size()) {
    if (j == b.even.size() ||
        (i < a.even.size() && a.even[i].first < b.even[j].first)) {
      out.even.push_back(a.even[i++]);
    } else if (i == a.even.size() || b.even[j].first < a.even[i].first) {
      out.even.push_back(b.even[j++]);
    } else {
      out.even.emplace_back(a.even[i].first, a.even[i].second + b.even[j].second);
      ++i;
      ++j;
    }
  }

  // odd parts: merge counting the transpositions of b-factors across
  // a-factors; duplicates kill the product
  int sign = 1;
  i = 0;
  j = 0;
  while (i < a.odd.size() && j < b.odd.size()) {
    if (a.odd[i] == b.odd[j]) return 0;
    if (a.odd[i] < b.odd[j]) {
      out.odd.push_back(a.odd[i++]);
    } else {
      // b.odd[j] moves left across the remaining a-factors
      if ((a.odd.size() - i) % 2) sign = -sign;
      out.odd.push_back(b.odd[j++]);
    }
  }
  while (i < a.odd.size()) out.odd.push_back(a.odd[i++]);
  while (j < b.odd.size()) out.odd.push_back(b.odd[j++]);
  return sign;
}

}  // namespace

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
  GradedPoly r;
  Monomial prod;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      int s = mul_monomials(ma, mb, prod);
      if (s) {
        Rational c = ca * cb;
        if (s < 0) c = -c;
        r.add_term(prod, c);
      }
    }
  return r;
}

GradedPoly GradedPoly::operator*(const Rational& c) const {
  GradedPoly r;
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

GradedPoly GradedPoly::pow(int k) const {
  GradedPoly r = one();
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string GradedPoly::debug() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += to_string(c);
    for (const auto& [g, e] : m.even) {
      s += "*" + g.debug();
      if (e > 1) s += "^" + std::to_string(e);
    }
    for (const auto& g : m.odd) s += "*" + g.debug();
  }
  return s;
}

GradedPoly mul(const GradedPoly& a, const GradedPoly& b) { return a * b; }

GradedPoly partial(const Generator& g, const GradedPoly& p) {
  GradedPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (is_odd(g.parity())) {
      auto it = std::find(m.odd.begin(), m.odd.end(), g);
      if (it == m.odd.end()) continue;
      // move g to the front (one sign per odd factor crossed), then strike
      auto pos = static_cast<int>(it - m.odd.begin());
      Monomial d = m;
      d.odd.erase(d.odd.begin() + pos);
      r.add_term(d, (pos % 2) ? -c : c);
    } else {
      for (std::size_t i = 0; i < m.even.size(); ++i) {
        if (m.even[i].first != g) continue;
        Monomial d = m;
        int e = d.even[i].second;
        if (e == 1)
          d.even.erase(d.even.begin() + i);
        else
          d.even[i].second = e - 1;
        r.add_term(d, c * e);
        break;
      }
    }
  }
  return r;
}

GradedPoly total_derivative(int dir, const GradedPoly& p) {
  // d_dir(g) per generator, extended by the (graded) Leibniz rule; the
  // derivation is even, so coefficients multiply from the left.
  GradedPoly r = partial(Generator::base(dir), p);
  for (const auto& g : p.jet_generators()) {
    Generator shifted = Generator::jet(g.field(), g.index().plus(dir));
    r += GradedPoly::generator(shifted) * partial(g, p);
  }
  return r;
}

GradedPoly total_derivative(const MultiIndex& idx, const GradedPoly& p) {
  GradedPoly r = p;
  for (auto d : idx.entries()) r = total_derivative(d, r);
  return r;
}

GradedPoly evaluate(const GradedPoly& p,
                    const std::map<Generator, Rational>& point) {
  GradedPoly r;
  for (const auto& [m, c] : p.terms()) {
    Rational v = c;
    for (const auto& [g, e] : m.even) {
      auto it = point.find(g);
      if (it == point.end())
        throw Error("evaluate: unbound even generator " + g.debug());
      Rational x = it->second;
      for (int i = 0; i < e; ++i) v *= x;
    }
    Monomial rest;
    rest.odd = m.odd;
    r.add_term(rest, v);
  }
  return r;
}

}  // namespace vb
