#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linfty/linalg.hpp"
#include "linfty/multilinear.hpp"

namespace linfty {

/// Access to the Taylor coefficients of an L-infinity[1] structure: q(i, m)
/// returns q_i on a canonical basis multi-index. Works for table-driven
/// algebras and for procedural ones (extension of scalars by forms), so all
/// downstream machinery (curvature, transfer, Kuranishi) is written against
/// this view. q_i vanishes identically for i > arity_max.
struct BracketOps {
  SpacePtr space;
  int arity_max = 0;
  std::function<Element(int, const MultiIndex&)> q;

  Element on_basis(int i, const MultiIndex& m) const {
    return i > arity_max ? Element() : q(i, m);
  }
  Element eval(int i, std::span<const Element> args) const;
  /// Applies q_k to every arity-k term (k = term size).
  Element eval_sym(const SymElement& s) const;
  Element d(const Element& x) const;  // q_1, linear extension

  /// Curvature sum_{i>=1} q_i(x^(.)i)/i! of a degree-0 element.
  Element curvature(const Element& x) const;
  bool is_mc(const Element& x) const;
};

/// Full cofree-coderivation value Q(v_1 (.) ... (.) v_n): the sum over
/// unshuffles with Koszul signs of q_i on the first block.
SymElement coderivation_apply(const BracketOps& Q, const MultiIndex& m);
SymElement coderivation_apply(const BracketOps& Q, const SymElement& s);

/// Corestriction Q^k_n to the k-th symmetric power on an arity-n input
/// (the terms applying q_{n-k+1}).
SymElement coderivation_component(const BracketOps& Q, int k,
                                  const MultiIndex& m);

struct CheckFailure {
  std::string what;
  int arity = 0;
  MultiIndex at;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckFailure> failures;
  void fail(std::string what, int arity = 0, MultiIndex at = {});
  std::string summary() const;
};

/// Table-driven L-infinity[1] algebra on a finite graded space: the Taylor
/// coefficients q_i (degree +1) stored sparsely, with the arity bound derived
/// from the nilpotency of the space (q_i = 0 for i >= N is forced by weights).
class Linfty {
 public:
  Linfty() = default;
  explicit Linfty(SpacePtr space);

  const Space& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }

  /// Largest arity that can carry a nonzero coefficient: N - 1.
  int arity_max() const { return space_->nilpotency() - 1; }

  void set_q(int arity, MultiMap m);
  /// Adds one structure-constant term q_arity(tuple) += c * out.
  void add_q_term(int arity, const std::vector<int>& tuple, int out_id,
                  const Rat& c);
  Element q(int i, const MultiIndex& m) const;
  const MultiMap* q_table(int i) const;

  bool is_abelian() const;  // q_i = 0 for all i >= 2

  BracketOps ops() const;

 private:
  SpacePtr space_;
  std::vector<MultiMap> q_;  // q_[i-1] has arity i
};

/// Verifies Q^2 = 0 arity by arity on the full symmetric basis (weights make
/// arities >= N vacuous). Reports the first failing multi-index per arity.
CheckReport check_linfty(const Linfty& L);
CheckReport check_linfty_on(const BracketOps& Q,
                            const std::vector<MultiIndex>& domain);

/// A differential graded Lie algebra in the classical (unshifted) grading;
/// the importer applies the decalage convention q_1(l) = -dl,
/// q_2(l_1,l_2) = (-1)^{|l_1|}[l_1,l_2].
struct Dgla {
  SpacePtr space;  // degrees are unshifted here
  std::map<int, Element> diff;
  std::map<std::pair<int, int>, Element> bracket;  // [a,b], all ordered pairs

  void set_d(int id, Element v);
  void set_bracket(int a, int b, Element v);  // completes the (b,a) entry
  Element apply_d(const Element& x) const;
  Element br(const Element& x, const Element& y) const;
  /// d^2 = 0, graded antisymmetry, Leibniz, Jacobi, weight additivity.
  CheckReport validate() const;
};

/// Decalage import; throws if validate() fails. The resulting space carries
/// the same names and weights with degrees shifted down by one.
Linfty dgla_import(const Dgla& g);

/// Inverse direction for oracles: the classical curvature -(dx + [x,x]/2)
/// of a dgla element of unshifted degree 1, for comparison with the shifted
/// engine's curvature.
Element dgla_curvature_shifted(const Dgla& g, const Linfty& imported,
                               const Element& x);

struct ProductResult {
  Linfty alg;
  std::vector<std::vector<int>> factor_ids;  // factor -> (factor id -> product id)
};

/// Componentwise product structure; projections and inclusions are strict.
ProductResult product_algebra(const std::vector<const Linfty*>& factors,
                              const std::string& label);

/// Subalgebra on an explicitly given independent homogeneous spanning family
/// (each vector must also be weight-adapted: its filtration weight equals the
/// min weight of its support). Throws if the family is not closed under the
/// parent brackets.
struct Subalgebra {
  Linfty alg;
  std::vector<Element> embedding;  // sub basis id -> parent element
  /// Coordinates of a parent element in the sub basis, if representable.
  std::function<std::optional<Element>(const Element&)> restrict;
  /// Embedding of a sub element into the parent.
  Element include(const Element& sub) const;
};

Subalgebra subalgebra_from_vectors(const BracketOps& parent,
                                   std::vector<Element> vectors,
                                   const std::string& label);

/// Weight-adapted homogeneous kernel basis of a family of linear constraints
/// (each constraint maps parent basis ids to elements of some target space).
struct LinearConstraint {
  SpacePtr target;
  std::function<Element(int)> map;
};
std::vector<Element> constrained_kernel_adapted(
    const SpacePtr& parent, const std::vector<LinearConstraint>& constraints);

/// dim H^k of the tangent complex (q_1 closed subcomplex spanned by the given
/// ids; pass all ids for the whole space). k is a shifted degree.
int cohomology_dim(const Linfty& L, const std::vector<int>& ids, int k);

}  // namespace linfty
