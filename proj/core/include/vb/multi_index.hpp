#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace vb {

// Symmetric multi-index over base directions 1..n. Entries are kept sorted,
// so two multi-indices with equal multisets compare equal.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> dirs) {
    for (int d : dirs) e_.push_back(static_cast<std::uint8_t>(d));
    sort_();
  }
  explicit MultiIndex(std::vector<int> dirs) {
    for (int d : dirs) e_.push_back(static_cast<std::uint8_t>(d));
    sort_();
  }

  static MultiIndex single(int dir) { return MultiIndex{dir}; }

  int order() const { return static_cast<int>(e_.size()); }
  bool empty() const { return e_.empty(); }

  // directions in ascending order
  const std::vector<std::uint8_t>& entries() const { return e_; }

  int count(int dir) const {
    int c = 0;
    for (auto d : e_) c += (d == dir);
    return c;
  }

  int max_dir() const {
    int m = 0;
    for (auto d : e_) m = d > m ? d : m;
    return m;
  }

  // lambda + Lambda
  MultiIndex plus(int dir) const {
    MultiIndex r = *this;
    r.e_.push_back(static_cast<std::uint8_t>(dir));
    r.sort_();
    return r;
  }

  // remove one occurrence of dir; nullopt if absent
  std::optional<MultiIndex> minus(int dir) const {
    MultiIndex r = *this;
    for (auto it = r.e_.begin(); it != r.e_.end(); ++it)
      if (*it == dir) {
        r.e_.erase(it);
        return r;
      }
    return std::nullopt;
  }

  auto operator<=>(const MultiIndex&) const = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(static_cast<int>(e_[i]));
    }
    return s;
  }

 private:
  void sort_() {
    for (std::size_t i = 1; i < e_.size(); ++i)
      for (std::size_t j = i; j > 0 && e_[j - 1] > e_[j]; --j)
        std::swap(e_[j - 1], e_[j]);
  }
  std::vector<std::uint8_t> e_;
};

// All symmetric multi-indices over directions 1..n of the given order.
std::vector<MultiIndex> multi_indices_of_order(int n, int order);
// ... of every order 0..max_order
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

}  // namespace vb
