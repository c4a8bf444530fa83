#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "vb/poly.hpp"

namespace vb {

// Basis covector in the adapted basis: a horizontal dx^lambda or a contact
// theta^A_Lambda. Contact covectors carry the Grassmann parity of their
// field; dx is even. Every covector has form degree 1.
struct Covector {
  enum class Kind : unsigned char { Theta = 0, Dx = 1 };
  Kind kind = Kind::Dx;
  FieldRef field{};   // Theta only
  MultiIndex idx{};   // Theta only
  int dir = 0;        // Dx only

  static Covector dx(int dir) {
    Covector c;
    c.kind = Kind::Dx;
    c.dir = dir;
    return c;
  }
  static Covector theta(FieldRef f, MultiIndex i = {}) {
    Covector c;
    c.kind = Kind::Theta;
    c.field = f;
    c.idx = std::move(i);
    return c;
  }

  Parity parity() const {
    return kind == Kind::Theta ? field.parity : Parity::Even;
  }
  bool is_contact() const { return kind == Kind::Theta; }

  auto operator<=>(const Covector&) const = default;
};

// Ordered wedge monomial; contact covectors sort before horizontal ones.
using WedgeMonomial = std::vector<Covector>;

// Sort a covector list into canonical order. Returns the sign picked up by
// the exchanges ((-1)^{1+[a][b]} per transposition) or 0 when a covector of
// even parity repeats. Contact covectors of odd fields have even total
// exchange class: their powers survive.
int canonicalize_wedge(WedgeMonomial& w);

// Bigraded exterior form: finite map wedge-monomial -> polynomial
// coefficient, the coefficient written to the left of the covectors.
class Form {
 public:
  Form() = default;

  static Form zero() { return {}; }
  static Form from_poly(GradedPoly p);
  static Form from_covector(const Covector& c);
  static Form constant(const Rational& r) {
    return from_poly(GradedPoly::constant(r));
  }

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Form&) const = default;

  const std::map<WedgeMonomial, GradedPoly>& terms() const { return terms_; }
  GradedPoly coefficient(const WedgeMonomial& w) const;

  // accumulate c * w with canonical reordering
  void add_term(const WedgeMonomial& w, const GradedPoly& c);

  Form operator-() const;
  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form operator*(const Rational& c) const;

  // bidegrees (contact, horizontal) present
  std::set<std::pair<int, int>> bidegrees() const;
  bool homogeneous(int k, int m) const;
  int jet_order() const;  // includes contact covector indices
  int degree() const;     // max total form degree
  std::optional<int> charge(const Universe& u) const;

  std::string debug() const;

 private:
  std::map<WedgeMonomial, GradedPoly> terms_;
};

// View of a prolonged derivation: base components and prolonged field
// components on demand. Both symmetry prolongations and the bare duals
// partial^Lambda_A are presented through this interface.
struct DerivationView {
  Parity parity = Parity::Even;
  int dim = 0;  // base dimension (0 for vertical derivations: no v^lambda)
  std::function<GradedPoly(int)> base;  // v^lambda
  std::function<GradedPoly(FieldRef, const MultiIndex&)> component;  // v^A_L
};

// v applied to a 0-form: v^l d/dx^l f + sum v^A_L partial^L_A f
GradedPoly apply_derivation(const DerivationView& v, const GradedPoly& f);

// ---- operations ----

Form wedge(const Form& a, const Form& b);
Form multiply_poly(const GradedPoly& p, const Form& f);  // p on the left

// total derivative of a form along d_lambda (acts on coefficients and
// shifts contact covectors)
Form total_derivative(int dir, const Form& f, int n);
Form total_derivative(const MultiIndex& idx, const Form& f, int n);

// horizontal and vertical differentials, d = d_H + d_V
Form horizontal_d(const Form& f, int n);
Form vertical_d(const Form& f);
Form exterior_d(const Form& f, int n);
std::pair<Form, Form> split_d(const Form& f, int n);

// (k,m)-homogeneous part
Form project(const Form& f, int k, int m);
// contact-degree-zero part (all horizontal degrees)
Form h0(const Form& f);
Form contact_part(const Form& f);  // complement of h0

// interior product; errors on a 0-form
Form interior(const DerivationView& v, const Form& f);

// Lie derivative via the Cartan formula
Form lie_derivative(const DerivationView& v, const Form& f, int n);

// volume form dx^1 ^ ... ^ dx^n and its contractions omega_lambda
Form omega(int n);
Form omega_lambda(int n, int dir);

}  // namespace vb
