#pragma once

#include "linfty/deligne.hpp"

namespace linfty {

/// Semicosimplicial complete L-infinity algebra: levels L_0..L_nmax (zero
/// above) with strict cofaces d^j: L_{n-1} -> L_n, j = 0..n, satisfying
/// d^j d^i = d^i d^{j-1} for i < j.
struct SemiCosimplicial {
  std::vector<std::shared_ptr<const Linfty>> levels;
  /// cofaces[n-1][j]: L_{n-1} -> L_n (n = 1..nmax, j = 0..n).
  std::vector<std::vector<Morphism>> cofaces;

  int nmax() const { return static_cast<int>(levels.size()) - 1; }
  CheckReport validate() const;
};

/// Cosimplicial: adds strict codegeneracies s^j: L_{n+1} -> L_n and a level
/// cutoff (levels above kmax are not represented).
struct Cosimplicial {
  std::vector<std::shared_ptr<const Linfty>> levels;  // L_0..L_kmax
  std::vector<std::vector<Morphism>> cofaces;         // as above, n = 1..kmax
  /// codegeneracies[n][j]: L_{n+1} -> L_n (n = 0..kmax-1, j = 0..n).
  std::vector<std::vector<Morphism>> codegeneracies;

  int kmax() const { return static_cast<int>(levels.size()) - 1; }
  CheckReport validate() const;
};

/// Matching space M_n subset L_{n+1}-free product of copies of L_n with the
/// codegeneracy compatibilities, plus the natural map L_{n+1} -> M_n.
struct MatchingSpace {
  Subalgebra sub;            // of the (n+1)-fold product of L_n
  ProductResult product;     // the ambient product
  Morphism matching_map;     // L_{n+1} -> M_n, x -> (s^0 x, .., s^n x)
};

MatchingSpace matching_space(const Cosimplicial& L, int n);

/// Reedy lift: y with s^i(y) = x_i for a tuple in M_n, via the recursion
/// y_n = d^n(x_n), y_r = d^r(x_r - s^r(y_{r+1})) + y_{r+1}.
Element matching_lift(const Cosimplicial& L, int n,
                      const std::vector<Element>& xs);

/// Totalization data: the equalizer subalgebra of prod_{n<=k} C*(Delta_n;L_n).
struct TotResult {
  Subalgebra sub;
  ProductResult product;
  std::vector<CochainPtr> components;
  int k = 0;        // cutoff used
  bool exact = false;  // semicosimplicial with vanishing tail: Tot = Tot_k

  /// Extracts the n-th component of (the embedding of) a sub element.
  Element component_of(const Element& sub_elt, int n) const;
  /// Assembles component elements into a product element.
  Element assemble(const std::vector<Element>& comps) const;
  /// Dimension of the underlying space per shifted degree.
  std::map<int, int> dims_by_degree() const;
};

TotResult tot_k(const SemiCosimplicial& L, int k);
TotResult tot_k(const Cosimplicial& L, int k);  // throws past the cutoff
/// Full semicosimplicial totalization (exact: stabilizes at k = nmax).
TotResult tot(const SemiCosimplicial& L);

/// Verifies the cartesian square Tot_k = Tot_{k-1} x_{base} C*(Delta_k;L_k)
/// (base C*(dDelta_k;L_k) in the semicosimplicial case; the matching-space
/// fiber product N_{k-1} in the cosimplicial case, where the vertical arrows
/// are additionally checked to be surjections).
CheckReport cartesian_check(const SemiCosimplicial& L, int k);
CheckReport cartesian_check(const Cosimplicial& L, int k);

/// Cover-nerve ingestion: L_n = product over (n+1)-fold intersections,
/// cofaces = restriction-and-reindex.
struct CechPatch {
  std::vector<int> tuple;  // sorted opens
  std::shared_ptr<const Linfty> alg;
};
struct CechRestriction {
  std::vector<int> from, to;  // |to| = |from| + 1
  Morphism rho;               // strict restriction
};
struct CoverInput {
  int opens = 0;
  std::vector<CechPatch> patches;
  std::vector<CechRestriction> restrictions;
};
SemiCosimplicial cech_builder(const CoverInput& cover);

/// Finite category with explicit composition (identities included).
struct FinCategory {
  struct Arrow {
    int src = 0, dst = 0;
  };
  int n_objects = 0;
  std::vector<Arrow> arrows;
  std::vector<int> identity;            // object -> arrow id
  std::vector<std::vector<int>> comp;   // comp[g][f] = g . f (or -1)

  /// Poset-style category: objects and the relation pairs; composition is
  /// forced by uniqueness of arrows.
  static FinCategory poset(int n_objects,
                           const std::vector<std::pair<int, int>>& leq);
  CheckReport validate() const;
  int compose(int g, int f) const;  // g after f
};

struct DiagramOverS {
  FinCategory S;
  std::vector<std::shared_ptr<const Linfty>> objects;
  std::vector<Morphism> arrows;  // strict, aligned with S.arrows

  CheckReport validate() const;
};

/// Cosimplicial replacement Pi(F)_n = prod over composable n-strings of
/// F(end), levels <= kmax, with the standard cofaces and codegeneracies.
Cosimplicial cosimplicial_replacement(const DiagramOverS& D, int kmax);

/// Homotopy limit: tot_k of the cosimplicial replacement.
TotResult holim_k(const DiagramOverS& D, int k);

/// The two sides of the set-level descent statement: MC elements of Tot
/// versus compatible families of Deligne simplices. Both directions plus the
/// round-trip checks.
struct TotVertexIso {
  bool ok = true;
  std::string detail;
};
/// forward: MC(Tot) element -> the compatible family (alpha_n)_n; validates
/// every alpha_n is MC and all compatibilities hold.
std::vector<Element> tot_vertex_forward(const TotResult& T, const Element& mc);
/// backward: assembles a compatible family into an MC element of Tot; throws
/// if the family is not in the equalizer or not MC.
Element tot_vertex_backward(const TotResult& T,
                            const std::vector<Element>& family);

struct DescentReport {
  bool ok = true;
  std::vector<int> dims_tot;    // dim H^{1-i}(Tot), i = 0..D
  std::vector<int> dims_moore;  // dim pi_i(Tot(Del)), i = 0..D
  std::string detail;
};

/// Desk-scale abelian descent check: H^{1-i}(Tot(L)) versus
/// pi_i(Tot(Del(L))) computed from the Moore complex of the limit simplicial
/// vector space (levels <= i+1), for 0 <= i <= D.
DescentReport abelian_descent_check(const SemiCosimplicial& L, int D);

/// Nondegenerate chains of the poset [m] x [n]: the staircase triangulation
/// of Delta_m x Delta_n as an ordered complex on (m+1)(n+1) vertices
/// (lexicographic vertex order).
FinComplex product_complex(int m, int n);

}  // namespace linfty
