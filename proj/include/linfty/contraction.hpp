#pragma once

#include "linfty/morphism.hpp"

namespace linfty {

/// Complete contraction data (f1, g1, K) between the tangent complexes of a
/// big space V and a small space W, with the identities
///   g1 f1 = id_W,  K dV + dV K = f1 g1 - id_V,  K f1 = K^2 = g1 K = 0,
/// all maps weight-preserving. The big side may be an extensible space (the
/// polynomial-form models); operators are given on basis ids and extended
/// linearly.
struct Contraction {
  SpacePtr big, small;
  std::function<Element(int)> f1;  // small id -> big element, degree 0
  std::function<Element(int)> g1;  // big id -> small element, degree 0
  std::function<Element(int)> K;   // big id -> big element, degree -1
  std::function<Element(int)> dV;  // big differential, degree +1
  std::function<Element(int)> dW;  // small differential, degree +1

  Element apply_f1(const Element& x) const;
  Element apply_g1(const Element& x) const;
  Element apply_K(const Element& x) const;
  Element apply_dV(const Element& x) const;
  Element apply_dW(const Element& x) const;
};

/// Identity contraction on an algebra's tangent complex (V = W, K = 0).
Contraction identity_contraction(const Linfty& L);

/// Verifies all contraction identities on the given big ids (and all small
/// ids). For finite big spaces pass all ids; for form spaces the caller
/// states the domain (exhaustive up to a polynomial-degree bound).
CheckReport check_contraction(const Contraction& C,
                              const std::vector<int>& big_ids);
/// Exhaustive over the current dimension of the big space.
CheckReport check_contraction(const Contraction& C);

/// A morphism of contractions: a chain map phi between the big sides with
/// K' phi = phi K (weight-preserving). pr2 is the induced small-side map
/// g1' . phi . f1.
struct ContractionMorphism {
  const Contraction* from = nullptr;
  const Contraction* to = nullptr;
  std::function<Element(int)> phi;  // big id (from) -> big element (to)

  Element apply(const Element& x) const;
  /// Induced strict map between the small sides.
  Element small_map(const Element& w) const;
};

CheckReport check_contraction_morphism(const ContractionMorphism& m,
                                       const std::vector<int>& big_ids);

/// Homotopy transfer along a contraction: the recursions
///   f_i = sum_{k=2..i} K q_k F^k_i,   r_i = sum_{k=2..i} g1 q_k F^k_i,
///   g_i = sum_{k=1..i-1} g_k Q^k_i K^Sigma_i,
/// with F^k_i / Q^k_i the coalgebra components and K^Sigma the symmetrized
/// homotopy. All components are memoized per session. Also hosts the formal
/// Kuranishi bijection rho and its fixed-point inverse.
class Transfer {
 public:
  Transfer(const Contraction& C, BracketOps Q);

  const Contraction& contraction() const { return *C_; }
  const BracketOps& ambient() const { return Q_; }
  int arity_max() const { return amax_; }

  /// Transfer-inclusion coefficient f_i on a small multi-index.
  Element f(int i, const MultiIndex& m);
  /// Transferred structure coefficient r_i.
  Element r(int i, const MultiIndex& m);
  /// Transfer-projection coefficient g_i on a big multi-index.
  Element g(int i, const MultiIndex& m);
  /// F^k_i (depends only on f_1..f_{i-k+1}).
  SymElement F_component(int k, const MultiIndex& m);
  /// Symmetrized homotopy K^Sigma on a big multi-index.
  SymElement k_sigma(const MultiIndex& m);

  /// Tabulates the transferred structure (weights bound the arities).
  Linfty transferred();
  /// F as a table-backed morphism (W,R) -> (V,Q).
  Morphism inclusion_morphism();
  /// G as a procedural morphism (V,Q) -> (W,R).
  Morphism projection_morphism();

  /// Push-forward along G of a degree-0 big element.
  Element pushforward_G(const Element& x);
  /// g_i(x^(.)i) for an element x.
  Element g_eval_power(int i, const Element& x);

  /// rho(x) = (MC(G)(x), K(x)); x must be MC in the ambient structure.
  std::pair<Element, Element> kuranishi_forward(const Element& x);

  /// Fixed-point iteration for rho^{-1}(y, K(v)); y must be MC in the
  /// transferred structure and kv = K(v) exactly. Stabilizes within the
  /// nilpotency bound; the result is verified to be MC with K(x) = kv and
  /// MC(G)(x) = y.
  Element kuranishi_solve(const Element& y, const Element& kv,
                          const Element& v_preimage, bool verify = true);

  /// Curvature of the *transferred* structure (for MC checks on W).
  Element small_curvature(const Element& y);

 private:
  const Contraction* C_;
  BracketOps Q_;
  int amax_;
  std::map<std::pair<int, MultiIndex>, Element> f_cache_, r_cache_, g_cache_;
  std::map<std::pair<int, MultiIndex>, SymElement> F_cache_;
};

}  // namespace linfty
