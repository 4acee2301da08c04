#pragma once

#include "linfty/morphism.hpp"

namespace linfty {

/// Central extension 0 -> K -> L -> M -> 0: a strict surjection whose kernel
/// is spanned by basis elements of L and is an abelian central ideal (every
/// q_n, n >= 2, vanishes when an argument lies in K).
struct CentralExtension {
  std::shared_ptr<const Linfty> total;  // L
  std::shared_ptr<const Linfty> base;   // M
  Morphism projection;                  // strict L -> M
  std::vector<int> kernel_ids;          // basis ids of L spanning K

  CheckReport validate() const;
  bool in_kernel(const Element& x) const;
  /// Basis ids of K in the given shifted degree.
  std::vector<int> kernel_degree(int d) const;
};

struct ObstructionResult {
  Element lift;             // the chosen set-level lift y of x
  Element curvature_rep;    // R_L(y), a 2-cocycle of K (shifted degree 1)
  bool vanishes = false;    // class zero in H^2(K)?
  std::optional<Element> mc_lift;  // y - z with q_1 z = R_L(y), when solvable
};

/// Obstruction map o: MC(M) -> H^2(K). Lift search by exact linear solve.
ObstructionResult obstruction_mc(const CentralExtension& E, const Element& x);

/// Arbitrary set-level lift of a base element through the strict projection
/// (exact solve on each degree block).
Element lift_through(const Morphism& projection, const Element& x);

/// Z^1(K): kernel of q_1 on the degree-0 part of K (basis of cocycles).
std::vector<Element> kernel_cocycles_z1(const CentralExtension& E);

/// Equality of H^2(K) classes: difference lies in q_1(K^0)?
bool obstruction_classes_equal(const CentralExtension& E, const Element& a,
                               const Element& b);

}  // namespace linfty
