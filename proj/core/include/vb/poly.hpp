#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "vb/generator.hpp"
#include "vb/rational.hpp"
#include "vb/universe.hpp"

namespace vb {

// A graded-commutative monomial: even generators with exponents (sorted by
// generator) and a duplicate-free ascending list of odd generators. The sign
// of reordering odd factors is absorbed into the coefficient at insertion.
struct Monomial {
  std::vector<std::pair<Generator, int>> even;
  std::vector<Generator> odd;

  auto operator<=>(const Monomial&) const = default;

  bool is_one() const { return even.empty() && odd.empty(); }
  Parity parity() const {
    return (odd.size() % 2) ? Parity::Odd : Parity::Even;
  }
  int degree() const {
    int d = static_cast<int>(odd.size());
    for (const auto& [g, e] : even) d += e;
    return d;
  }
  int jet_order() const {
    int o = 0;
    for (const auto& [g, e] : even) o = std::max(o, g.jet_order());
    for (const auto& g : odd) o = std::max(o, g.jet_order());
    return o;
  }
  int charge(const Universe& u) const {
    int k = 0;
    for (const auto& [g, e] : even)
      if (!g.is_base()) k += e * u.charge_of(g.field());
    for (const auto& g : odd) k += u.charge_of(g.field());
    return k;
  }
};

// Element of the bigraded polynomial ring S^0: exact-rational polynomial in
// base coordinates, even jet variables and odd jet variables. Canonical form
// is the term map itself; equality is structural.
class GradedPoly {
 public:
  GradedPoly() = default;

  static GradedPoly zero() { return {}; }
  static GradedPoly constant(Rational c);
  static GradedPoly one() { return constant(1); }
  static GradedPoly generator(const Generator& g);

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const GradedPoly&) const = default;

  const std::map<Monomial, Rational>& terms() const { return terms_; }

  // nullopt when the polynomial mixes parities
  std::optional<Parity> parity() const;
  GradedPoly part(Parity p) const;

  int jet_order() const;
  int degree() const;
  // maximal charge over monomials; 0 for the zero polynomial
  std::optional<int> charge(const Universe& u) const;  // nullopt if mixed

  std::set<Generator> generators() const;
  // distinct jet generators appearing (excludes base coordinates)
  std::set<Generator> jet_generators() const;

  GradedPoly operator-() const;
  GradedPoly operator+(const GradedPoly& o) const;
  GradedPoly operator-(const GradedPoly& o) const;
  GradedPoly operator*(const GradedPoly& o) const;
  GradedPoly operator*(const Rational& c) const;
  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);

  GradedPoly pow(int k) const;

  // accumulate c * m, keeping canonical form
  void add_term(const Monomial& m, const Rational& c);

  std::string debug() const;

 private:
  std::map<Monomial, Rational> terms_;
};

inline GradedPoly operator*(const Rational& c, const GradedPoly& p) {
  return p * c;
}

// ---- kernel operations ----

// graded-commutative product (same as operator*)
GradedPoly mul(const GradedPoly& a, const GradedPoly& b);

// left graded partial derivative with respect to a generator: for an odd
// generator the factor is moved to the front of the monomial and struck.
GradedPoly partial(const Generator& g, const GradedPoly& p);

// total derivative d_lambda = partial_lambda + sum s^A_{lambda+Lambda}
// partial^Lambda_A, summed over jet generators present in p
GradedPoly total_derivative(int dir, const GradedPoly& p);

// d_Lambda = d_{lambda_r} o ... o d_{lambda_1}; order-independent
GradedPoly total_derivative(const MultiIndex& idx, const GradedPoly& p);

// Substitute rationals for every even generator (base coordinates and even
// jets) of p; odd generators stay symbolic, so the result lives in the
// exterior algebra over the odd generators. Unbound even generators are an
// error naming the generator.
GradedPoly evaluate(const GradedPoly& p,
                    const std::map<Generator, Rational>& point);

}  // namespace vb
