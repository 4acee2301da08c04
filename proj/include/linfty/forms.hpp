#pragma once

#include <map>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

/// Polynomial differential form on the standard n-simplex with exact rational
/// coefficients, in the coordinates t_1..t_n (t_0 = 1 - sum t_i and
/// dt_0 = -sum dt_i are eliminated on construction). Canonical form: merged
/// monomials, sorted wedge subsets, no zero terms.
class PolyForm {
 public:
  using Key = std::pair<std::vector<int>, std::vector<int>>;  // (expo, wedge)

  PolyForm() = default;
  explicit PolyForm(int n) : n_(n) {}

  static PolyForm zero(int n) { return PolyForm(n); }
  static PolyForm constant(int n, const Rat& c);
  /// Barycentric coordinate t_i, 0 <= i <= n (t_0 eliminated).
  static PolyForm bary_t(int i, int n);
  /// Barycentric differential dt_i (dt_0 eliminated).
  static PolyForm bary_dt(int i, int n);

  int simplex_dim() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, Rat>& terms() const { return terms_; }

  /// Adds c * t^expo dt_wedge; wedge must be a sorted subset of {1..n}.
  void add_term(const std::vector<int>& expo, const std::vector<int>& wedge,
                const Rat& c);

  PolyForm& operator+=(const PolyForm& o);
  PolyForm& operator-=(const PolyForm& o);
  PolyForm& operator*=(const Rat& c);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(const Rat& c, PolyForm a) { return a *= c; }
  PolyForm operator-() const;
  bool operator==(const PolyForm& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }

  /// Maximal wedge degree over the support (-1 for 0).
  int top_degree() const;
  /// Maximal polynomial degree over the support (-1 for 0).
  int poly_degree() const;
  /// The part of pure form degree k.
  PolyForm degree_part(int k) const;

  std::string str() const;

 private:
  int n_ = 0;
  std::map<Key, Rat> terms_;
};

/// Graded-commutative associative wedge product.
PolyForm wedge(const PolyForm& a, const PolyForm& b);

/// Exterior differential (d^2 = 0, Leibniz).
PolyForm derham_d(const PolyForm& a);

/// Whitney elementary form of the face sigma = {i_0 < ... < i_k} of Delta_n:
///   omega_sigma = k! sum_j (-1)^j t_{i_j} dt_{i_0} ^ ... omit j ... ^ dt_{i_k}.
PolyForm whitney(const std::vector<int>& sigma, int n);

/// Exact integral over the (oriented) face sigma: pull back along the face
/// inclusion and apply the Dirichlet formula
/// int_{Delta^k} u^a du = (prod a_i!) / (k + |a|)!. Terms whose degree does
/// not match |sigma| - 1 contribute zero (cochain convention).
Rat integrate_face(const PolyForm& a, const std::vector<int>& sigma);

/// Pullback along an affine substitution t_i -> images[i-1] (polynomials of
/// degree <= 1 on Delta_m); differentials map to d(image).
PolyForm pullback_affine(const PolyForm& a, int m,
                         const std::vector<PolyForm>& images);

/// Pullback along a monotone ordinal map theta: [m] -> [n], given as the
/// vector of values theta(0..m): barycentric substitution
/// t_i -> sum_{theta(j)=i} u_j.
PolyForm pullback_ordinal(const PolyForm& a, const std::vector<int>& theta,
                          int n);

/// Radial Poincare homotopy toward vertex i (exact on monomials):
/// h^i d + d h^i = id - pi^* ev_i, h^i h^i = 0.
PolyForm vertex_homotopy(const PolyForm& a, int i);

/// Value at vertex i of the 0-form part.
Rat eval_at_vertex(const PolyForm& a, int i);

/// Scalar simplicial cochain on Delta_n: value per nondegenerate face.
using SCochain = std::map<std::vector<int>, Rat>;

/// Whitney extension E (cochains to forms).
PolyForm whitney_extension(const SCochain& c, int n);

/// Integration I (forms to cochains): sigma -> int_sigma a over every
/// nondegenerate face of Delta_n.
SCochain integration_cochain(const PolyForm& a, int n);

/// Dupont's contracting homotopy s_n, normalized to the convention
///   s_n d + d s_n = E I - id,   s_n E = 0,   I s_n = 0,   s_n s_n = 0.
PolyForm dupont_s(const PolyForm& a);

/// All faces of Delta_n in canonical order (dimension, then lexicographic).
std::vector<std::vector<int>> faces_of_simplex(int n);

}  // namespace linfty
