#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "linfty/space.hpp"

namespace linfty {

/// Sparse vector over a Space: sorted (id, coefficient) pairs, no zeros.
class Element {
 public:
  Element() = default;

  static Element unit(int id, Rat c = Rat(1));

  /// Adds c * id and renormalizes that entry.
  void add_term(int id, const Rat& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rat& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rat& c, Element a) { return a *= c; }
  Element operator-() const;

  bool is_zero() const { return terms_.empty(); }
  int size() const { return static_cast<int>(terms_.size()); }
  const std::vector<std::pair<int, Rat>>& terms() const { return terms_; }
  Rat coeff(int id) const;

  bool operator==(const Element& o) const { return terms_ == o.terms_; }
  bool operator!=(const Element& o) const { return !(*this == o); }

 private:
  std::vector<std::pair<int, Rat>> terms_;
};

/// Degree if homogeneous (zero element reports nullopt as well).
std::optional<int> element_degree(const Space& sp, const Element& x);

bool is_homogeneous(const Space& sp, const Element& x, int degree);

/// Minimal weight over the support; weight_infinity() for 0.
int element_weight(const Space& sp, const Element& x);
int weight_infinity();

std::string element_str(const Space& sp, const Element& x);

}  // namespace linfty
