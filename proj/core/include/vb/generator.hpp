#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "vb/multi_index.hpp"

namespace vb {

enum class Parity : unsigned char { Even = 0, Odd = 1 };

constexpr Parity operator^(Parity a, Parity b) {
  return Parity(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}
constexpr bool is_odd(Parity p) { return p == Parity::Odd; }
// exchange sign (-1)^{[a][b]}
constexpr int parity_sign(Parity a, Parity b) {
  return (is_odd(a) && is_odd(b)) ? -1 : 1;
}

// A field slot: even fields and odd (ghost) fields live in separate index
// spaces, so (parity, index) identifies a field.
struct FieldRef {
  Parity parity = Parity::Even;
  std::uint16_t index = 0;
  auto operator<=>(const FieldRef&) const = default;
};

inline FieldRef even_field(int i) {
  return FieldRef{Parity::Even, static_cast<std::uint16_t>(i)};
}
inline FieldRef odd_field(int a) {
  return FieldRef{Parity::Odd, static_cast<std::uint16_t>(a)};
}

// A polynomial generator: a base coordinate x^lambda or a jet variable
// s^A_Lambda. The ordering is total and deterministic: base coordinates
// first by direction, then jets by (field, multi-index).
class Generator {
 public:
  enum class Kind : unsigned char { Base = 0, Jet = 1 };

  static Generator base(int dir) {
    Generator g;
    g.kind_ = Kind::Base;
    g.field_ = FieldRef{Parity::Even, static_cast<std::uint16_t>(dir)};
    return g;
  }
  static Generator jet(FieldRef f, MultiIndex idx = {}) {
    Generator g;
    g.kind_ = Kind::Jet;
    g.field_ = f;
    g.idx_ = std::move(idx);
    return g;
  }

  Kind kind() const { return kind_; }
  bool is_base() const { return kind_ == Kind::Base; }
  int dir() const { return field_.index; }  // base coordinates only
  FieldRef field() const { return field_; }
  const MultiIndex& index() const { return idx_; }

  Parity parity() const {
    return kind_ == Kind::Base ? Parity::Even : field_.parity;
  }
  // |Lambda| for jets, 0 for base coordinates
  int jet_order() const { return kind_ == Kind::Base ? 0 : idx_.order(); }

  auto operator<=>(const Generator&) const = default;

  std::string debug() const {
    if (kind_ == Kind::Base) return "x" + std::to_string(field_.index);
    std::string s = (field_.parity == Parity::Even ? "y" : "c") +
                    std::to_string(field_.index);
    if (!idx_.empty()) s += "_{" + idx_.to_string() + "}";
    return s;
  }

 private:
  Kind kind_ = Kind::Base;
  FieldRef field_{};
  MultiIndex idx_{};
};

}  // namespace vb
