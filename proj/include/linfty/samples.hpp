#pragma once

#include "linfty/extension.hpp"

namespace linfty {

/// Bundled example algebras used across the test and acceptance suites.

/// Heisenberg Lie algebra (X, Y, Z; [X,Y] = Z), concentrated in unshifted
/// degree 0; weights 1,1,2, nilpotency 3. Returned already imported.
std::shared_ptr<const Linfty> heis();
Dgla heis_dgla();

/// Strictly upper triangular 4x4 matrices (class-3 nilpotent): generators
/// e12,e23,e34 (weight 1), e13,e24 (weight 2), e14 (weight 3).
std::shared_ptr<const Linfty> ut4();
Dgla ut4_dgla();

/// heis tensor (K[dt]/dt^2): a dgla with degree-0 and degree-1 parts and
/// zero differential; MC elements are all of degree 1.
std::shared_ptr<const Linfty> heis1f();
Dgla heis1f_dgla();

/// Abelian algebra with one generator in the given shifted degree, q_1 = 0.
std::shared_ptr<const Linfty> abelian_point(int shifted_degree);

/// Two-term acyclic complex a -> b (q_1 a = b) in shifted degrees (d, d+1).
std::shared_ptr<const Linfty> two_term_acyclic(int d);

/// Zero algebra (dimension 0).
std::shared_ptr<const Linfty> zero_algebra();

/// Random abelian complex: direct sum of shifted acyclic two-term pieces and
/// zero pieces, conjugated by a random invertible change of basis (exact,
/// q_1^2 = 0 by construction). Degrees drawn from [-2, 2].
std::shared_ptr<const Linfty> random_complex(int dim, std::uint64_t seed);

/// Central extensions for the obstruction tests.
/// K = 0 (identity projection of heis).
CentralExtension ext_trivial();
/// base <w> (shifted degree 0, abelian), total adds u with q2(w,w) = u.
CentralExtension ext_square();
/// as ext_square plus v of degree 0 with q_1 v = u (kernel acyclic in the
/// relevant degree: every x lifts).
CentralExtension ext_square_acyclic();
/// dgla-flavored: x,y of unshifted degree 1, u = "[x,y]" of degree 2.
CentralExtension ext_pair();
/// scaling endomorphism of ext_square (w -> lam w, u -> lam^2 u): a strict
/// morphism of central extensions, for the naturality test.
std::pair<Morphism, Morphism> ext_square_scaling(const CentralExtension& E,
                                                 const Rat& lam);

/// 4x4 rational matrices: exact exp/log oracle for nilpotent elements.
struct Mat4 {
  Rat a[4][4];
  static Mat4 zero();
  static Mat4 eye();
  Mat4 mul(const Mat4& o) const;
  Mat4 add(const Mat4& o) const;
  Mat4 scale(const Rat& c) const;
  bool operator==(const Mat4& o) const;
};

/// exp of a strictly upper triangular matrix (terminating series).
Mat4 mat_exp(const Mat4& m);
/// log of a unipotent matrix (terminating series).
Mat4 mat_log(const Mat4& m);

/// Coordinates of heis elements as 3x3-in-4x4 strictly upper matrices:
/// X -> e12, Y -> e23, Z -> e13.
Mat4 heis_matrix(const Element& x, const Linfty& L);
Element heis_element(const Mat4& m, const Linfty& L);

/// ut4 elements as strictly upper 4x4 matrices.
Mat4 ut4_matrix(const Element& x, const Linfty& L);
Element ut4_element(const Mat4& m, const Linfty& L);

}  // namespace linfty
