#pragma once

#include "linfty/algebra.hpp"

namespace linfty {

/// An L-infinity morphism via its Taylor coefficients f_i (degree 0),
/// table-backed or procedural. f_i vanishes identically for i > arity_max.
class Morphism {
 public:
  Morphism() = default;

  static Morphism from_tables(SpacePtr src, SpacePtr dst,
                              std::vector<MultiMap> tables);
  static Morphism strict(SpacePtr src, SpacePtr dst, MultiMap f1);
  static Morphism identity(SpacePtr sp);
  static Morphism procedural(SpacePtr src, SpacePtr dst, int arity_max,
                             std::function<Element(int, const MultiIndex&)> f);

  const SpacePtr& source() const { return src_; }
  const SpacePtr& target() const { return dst_; }
  int arity_max() const { return arity_max_; }
  bool is_strict() const { return strict_; }

  Element coeff(int i, const MultiIndex& m) const;
  Element eval(int i, std::span<const Element> args) const;
  Element linear(const Element& x) const;  // f_1
  /// Push-forward sum_{i>=1} f_i(x^(.)i)/i! of a degree-0 element.
  Element push(const Element& x) const;

 private:
  SpacePtr src_, dst_;
  int arity_max_ = 0;
  bool strict_ = false;
  std::function<Element(int, const MultiIndex&)> f_;
};

/// Corestriction F^k_i of the coalgebra morphism to the k-th symmetric power
/// on an arity-|m| input (Taylor formula with the 1/k! block normalization).
SymElement morphism_component(const Morphism& F, int k, const MultiIndex& m);

/// Full coalgebra-morphism value F(w_1 (.) ... (.) w_n) (all k at once).
SymElement morphism_apply(const Morphism& F, const MultiIndex& m);
SymElement morphism_apply(const Morphism& F, const SymElement& s);

/// Taylor coefficients of the composite coalgebra map F after G, tabulated
/// over the (finite) source of G. Throws on space mismatch.
Morphism compose(const Morphism& F, const Morphism& G);

/// Morphism identity F.R = Q.F, checked arity by arity: exhaustive over the
/// symmetric basis of the source (which must be finite).
CheckReport check_morphism(const Morphism& F, const BracketOps& R,
                           const BracketOps& Q);
/// Same residual on an explicit multi-index family (used when the source is
/// an extensible form space: exhaustive over the stated domain).
CheckReport check_morphism_on(const Morphism& F, const BracketOps& R,
                              const BracketOps& Q,
                              const std::vector<MultiIndex>& domain);

/// Residual of Eq-level identity at one multi-index (zero iff satisfied).
Element morphism_residual(const Morphism& F, const BracketOps& R,
                          const BracketOps& Q, const MultiIndex& m);

}  // namespace linfty
