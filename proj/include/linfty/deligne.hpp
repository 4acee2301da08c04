#pragma once

#include "linfty/cochains.hpp"
#include "linfty/extension.hpp"

namespace linfty {

/// An n-simplex of the Deligne-Getzler infinity-groupoid of L: a degree-0
/// Maurer-Cartan element of C*(Delta_n;L).
struct DeligneSimplex {
  int n = 0;
  CochainPtr C;
  Element alpha;
};

/// The paper's cochain homotopy (as displayed):
///   (h^i alpha)_{i_0..i_k} = 0 if i in {i_0..i_k}, else
///   (-1)^j alpha_{..i inserted at position j..}.
Element h_i_cochain(const CochainAlgebra& C, int i, const Element& alpha);

/// The contraction (pi^*, e_i^*, K) from C*(Delta_n;L) onto L. Under the
/// engine's transferred coboundary, the section 1.2 homotopy convention
/// forces K = -h^i.
Contraction vertex_contraction(const CochainAlgebra& C, int i);

/// Star data at a vertex: an MC element of L at the vertex plus a value in
/// L^{1-k} (shifted degree -k) for every k-simplex containing the vertex.
struct StarData {
  int n = 0;
  int vertex = 0;
  Element x;                                // MC element of L
  std::map<std::vector<int>, Element> values;  // keyed by star simplices
};

/// rho^i: reads off (e_i^*(alpha), star values around vertex i).
StarData rho_i(const DeligneSimplex& s, int i);

/// Inverse of rho^i via the formal Kuranishi iteration on the vertex
/// contraction: the unique simplex with the given star data.
DeligneSimplex simplex_from_star(CochainPtr C, const StarData& star);

/// Restriction to a face (pullback along the coface map).
DeligneSimplex face_of(const DeligneSimplex& s, int omitted_vertex);

/// Restriction of a simplex of C to the subcomplex H (H.X must be contained
/// in C.X, same vertex set).
Element restrict_cochain(const CochainAlgebra& C, const CochainAlgebra& H,
                         const Element& alpha);

/// Higher Baker-Campbell-Hausdorff rho^x_n: the face opposite the star
/// vertex of the unique simplex with the given star data.
DeligneSimplex higher_bch(CochainPtr C, const StarData& star);

/// Baker-Campbell-Hausdorff product on a nilpotent Lie algebra (imported,
/// concentrated in shifted degree -1): the 02-edge of the 2-simplex with
/// star vertex 1, edge values a on 01 and b on 12.
Element bch(std::shared_ptr<const Linfty> L, const Element& a,
            const Element& b);

/// Gauge action: the vertex-0 value of the 1-simplex with vertex-1 value x
/// and edge value a.
Element gauge(std::shared_ptr<const Linfty> L, const Element& x,
              const Element& a);

/// Horn data: an MC cochain on Lambda^n_k.
struct HornData {
  int n = 0, k = 0;
  CochainPtr H;   // subcomplex structure of the horn
  Element alpha;  // MC cochain on the horn
};

HornData make_horn_data(int n, int k, std::shared_ptr<const Linfty> L,
                        const std::map<std::vector<int>, Element>& values);

/// Fills the horn: the unique simplex determined by the star data at the
/// horn vertex (missing top value set to 0), verified to restrict to the
/// input exactly. Throws on inconsistent horn data.
DeligneSimplex horn_fill(CochainPtr C, const HornData& horn);

/// Kan negative control: for abelian coefficients, decides by exact linear
/// algebra whether a horn lifting problem along Del(p) has a solution:
/// given a strict p: L -> M, a horn cochain in C*(horn;L) and a base simplex
/// in C*(Delta_n;M) compatible over the horn, find alpha in C*(Delta_n;L)
/// with restriction the horn data and pushforward the base simplex.
std::optional<Element> abelian_lift_horn(const CochainAlgebra& CL,
                                         const CochainAlgebra& CM,
                                         const CochainAlgebra& HL,
                                         const Morphism& p,
                                         const Element& horn_alpha,
                                         const Element& base_alpha);

struct AbelianHomotopy {
  int dim_direct = 0;  // dim H^{1-i}(L)
  int dim_moore = 0;   // via the Moore complex of n -> Z^1(C*(Delta_n;L))
  bool agree() const { return dim_direct == dim_moore; }
};

/// pi_i(Del(L)) for abelian L, both ways (they must agree; Dold-Kan shadow).
AbelianHomotopy abelian_homotopy_groups(std::shared_ptr<const Linfty> L, int i);

/// Central extension of cochain algebras induced levelwise by E.
CentralExtension cochain_extension(const CentralExtension& E, int n);

/// Principal action: beta + z for a kernel-valued cocycle z; validates that
/// the result is MC and has the same projection.
DeligneSimplex principal_action(const CentralExtension& E,
                                const DeligneSimplex& beta, const Element& z);

/// Getzler-model bridge: the form-level element of an n-simplex (pushforward
/// along the transfer inclusion), which is MC and annihilated by the Dupont
/// homotopy.
Element getzler_form_element(const DeligneSimplex& s);

}  // namespace linfty
