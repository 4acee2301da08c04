#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "linfty/combinatorics.hpp"
#include "linfty/element.hpp"

namespace linfty {

/// Basis element of a symmetric power W^(.)i: a sorted multiset of basis ids.
/// Canonical form: ascending ids, never two equal ids of odd degree.
using MultiIndex = std::vector<int>;

bool multiindex_valid(const Space& sp, const MultiIndex& m);
int multiindex_degree(const Space& sp, const MultiIndex& m);
int multiindex_weight(const Space& sp, const MultiIndex& m);
std::string multiindex_str(const Space& sp, const MultiIndex& m);

/// Canonical basis of W^(.)i (ids ascending, odd repeats excluded).
/// If max_weight >= 0, only multi-indices of total weight < max_weight.
std::vector<MultiIndex> symmetric_basis(const Space& sp, int i,
                                        int max_weight = -1);

/// Element of the reduced symmetric coalgebra: finite sum of multi-indices
/// with rational coefficients (arities may be mixed).
class SymElement {
 public:
  SymElement() = default;
  void add_term(const MultiIndex& m, const Rat& c);
  SymElement& operator+=(const SymElement& o);
  SymElement& operator*=(const Rat& c);
  bool is_zero() const { return terms_.empty(); }
  const std::map<MultiIndex, Rat>& terms() const { return terms_; }
  /// Terms of the given arity only.
  SymElement corestrict(int arity) const;
  bool operator==(const SymElement& o) const { return terms_ == o.terms_; }

 private:
  std::map<MultiIndex, Rat> terms_;
};

/// Sorts ids into canonical order accumulating the Koszul sign; returns false
/// if the product vanishes (odd repeat). `ids` is modified in place.
bool sort_with_sign(const Space& sp, std::vector<int>& ids, int& sign);

/// Graded symmetric product of sparse elements, expanded over supports.
SymElement sym_product(const Space& sp, std::span<const Element> factors);

/// A graded multilinear map W^(.)arity -> target space, stored sparsely on
/// canonical multi-indices. Every stored output term must satisfy
/// degree(out) = sum degree(in) + degree and weight(out) >= sum weight(in);
/// set() enforces both.
class MultiMap {
 public:
  MultiMap() = default;
  MultiMap(SpacePtr source, SpacePtr target, int arity, int degree);

  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }

  /// Sets the value on a canonical multi-index (replaces, drops zero).
  void set(const MultiIndex& m, Element v);
  /// Adds a single term to the value on a (not necessarily sorted) tuple;
  /// the tuple is canonicalized with its Koszul sign.
  void add_tuple_term(const std::vector<int>& tuple, int out_id, const Rat& c);

  /// Value on a canonical multi-index (zero if absent).
  Element at(const MultiIndex& m) const;

  /// Full graded-symmetric multilinear evaluation on sparse arguments.
  Element eval(std::span<const Element> args) const;

  const std::map<MultiIndex, Element>& table() const { return table_; }
  bool is_zero() const { return table_.empty(); }

 private:
  SpacePtr source_, target_;
  int arity_ = 1;
  int degree_ = 0;
  std::map<MultiIndex, Element> table_;
};

/// Generic expansion: evaluates a basis-level multilinear function on sparse
/// arguments with Koszul signs (the core evaluation loop shared by tables and
/// procedural operations).
Element eval_multilinear(
    const Space& sp, int arity, std::span<const Element> args,
    const std::function<Element(const MultiIndex&)>& on_basis);

}  // namespace linfty
