#pragma once

#include "linfty/contraction.hpp"
#include "linfty/forms.hpp"

namespace linfty {

/// Finite ordered simplicial complex: nondegenerate simplices as sorted
/// vertex subsets, closed under faces, in canonical order (dimension, then
/// lexicographic vertex set).
struct FinComplex {
  int n_vertices = 0;
  std::vector<std::vector<int>> simplices;
  std::map<std::vector<int>, int> index;

  static FinComplex full_simplex(int n);
  static FinComplex boundary(int n);
  /// Horn: boundary of Delta_n minus the k-th face.
  static FinComplex horn(int n, int k);
  /// Closes the given simplices under faces and validates.
  static FinComplex from_simplices(int n_vertices,
                                   std::vector<std::vector<int>> simps);

  bool contains(const std::vector<int>& s) const { return index.count(s) > 0; }
  int index_of(const std::vector<int>& s) const;
  int dim() const;
  int count() const { return static_cast<int>(simplices.size()); }
};

/// The extension of scalars Omega*(Delta_n) (x) L with its L-infinity[1]
/// structure: q_1 = d (x) 1 + (-1)^{|form|} (x) q_1 and for i >= 2
///   q_i(a_1 (x) x_1, ..) = +- (a_1 ^ ... ^ a_i) (x) q_i(x_1,..,x_i).
/// The basis (monomial, wedge, L-basis) is interned on demand; ids are stable.
class FormAlgebra {
 public:
  FormAlgebra(int n, std::shared_ptr<const Linfty> L);

  int simplex_dim() const { return n_; }
  const SpacePtr& space() const { return sp_; }
  const std::shared_ptr<const Linfty>& coefficients() const { return L_; }

  /// Interns one term; returns its basis id.
  int intern(const std::vector<int>& expo, const std::vector<int>& wedge,
             int lid);
  /// a (x) b_lid as a sparse element (interns all terms of a).
  Element tensor(const PolyForm& a, int lid);
  /// Decodes an id.
  const PolyForm& form_of(int id) const { return forms_[id]; }
  int lid_of(int id) const { return lids_[id]; }
  /// The (single-term) scalar form factor of an id.
  const PolyForm::Key& key_of(int id) const { return keys_[id]; }

  /// The L-infinity structure (procedural).
  BracketOps ops();
  Element d_basis(int id);          // q_1 on a basis id
  Element K_basis(int id);          // Dupont homotopy s (x) 1
  Element q_basis(int i, const MultiIndex& m);

  /// Pullback along a monotone ordinal map into another form algebra over the
  /// same coefficients (strict; a morphism of Dupont contractions).
  Element pullback_basis(FormAlgebra& target, const std::vector<int>& theta,
                         int id);

 private:
  int n_;
  std::shared_ptr<const Linfty> L_;
  SpacePtr sp_;
  std::vector<PolyForm> forms_;     // id -> single-term form
  std::vector<PolyForm::Key> keys_;
  std::vector<int> lids_;
  std::map<std::pair<PolyForm::Key, int>, int> intern_;
};

/// C*(X;L): non-degenerate simplicial cochains with the transferred
/// L-infinity structure. Basis (sigma, b) ordered by simplex then L basis;
/// shifted degree dim(sigma) + degree(b), weight = weight(b).
struct CochainAlgebra {
  FinComplex X;
  std::shared_ptr<const Linfty> L;
  Linfty alg;

  int id(int simplex_index, int lid) const;
  int id(const std::vector<int>& simplex, int lid) const;
  std::pair<int, int> decode(int cid) const;  // (simplex index, lid)

  /// Only present for full simplices built along Dupont's contraction.
  std::shared_ptr<FormAlgebra> forms;
  std::shared_ptr<Contraction> dupont;   // (E (x) 1, I (x) 1, s (x) 1)
  std::shared_ptr<Transfer> session;     // hot transfer caches (F, G, ...)
};

using CochainPtr = std::shared_ptr<const CochainAlgebra>;

/// C*(Delta_n;L) via homotopy transfer along Dupont's contraction.
/// Budget guard: n <= 3 and dim L <= 8 unless force is set; a cost estimate
/// is included in the error message.
CochainPtr cochain_structure(int n, std::shared_ptr<const Linfty> L,
                             bool force = false);
/// Memoized variant (per (n, L) pair, process-wide).
CochainPtr cochain_structure_cached(int n, std::shared_ptr<const Linfty> L);

/// C*(X;L) for a subcomplex of a standard simplex, glued simplex-wise from
/// the transferred structures on the closures of its simplices.
CochainPtr subcomplex_structure(const FinComplex& X,
                                std::shared_ptr<const Linfty> L);

/// Fast path for abelian L: the structure is the tensor differential
///   q_1(sigma (x) b) = sum_j (-1)^j (cofaces) (x) b + (-1)^{dim sigma} sigma (x) q_1 b.
/// Matches the transferred structure (asserted in tests).
CochainPtr abelian_cochain_structure(const FinComplex& X,
                                     std::shared_ptr<const Linfty> L);

/// Pullback along a monotone simplicial map f: X -> Y given by its vertex
/// images: the strict morphism C*(Y;L) -> C*(X;L).
Morphism cochain_pullback(const CochainAlgebra& Y, const CochainAlgebra& X,
                          const std::vector<int>& vertex_map);

/// Pushforward of a strict coefficient morphism phi: L -> M:
/// the strict morphism C*(X;L) -> C*(X;M).
Morphism cochain_pushforward(const CochainAlgebra& src,
                             const CochainAlgebra& dst, const Morphism& phi);

/// Restriction family of an MC cochain: its pullback to (the closure of)
/// every simplex of X.
std::map<std::vector<int>, Element> mc_restriction_family(
    const CochainAlgebra& C, const Element& alpha);

/// Reassembles a compatible family into a cochain on X; throws if the family
/// is incompatible. (Set-level inverse of mc_restriction_family.)
Element mc_from_family(const CochainAlgebra& C,
                       const std::map<std::vector<int>, Element>& family);

}  // namespace linfty
