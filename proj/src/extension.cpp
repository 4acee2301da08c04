#include "linfty/extension.hpp"

#include <algorithm>
#include <set>

namespace linfty {

CheckReport CentralExtension::validate() const {
  CheckReport rep;
  const Space& Lsp = total->space();
  const Space& Msp = base->space();
  if (!projection.is_strict()) rep.fail("projection is not strict");
  // strict morphism of the structures
  CheckReport morph = check_morphism(projection, total->ops(), base->ops());
  if (!morph.ok) rep.fail("projection is not an L-infinity morphism: " + morph.summary());
  // surjectivity per degree (rank over each degree block)
  {
    std::set<int> degrees;
    for (int id = 0; id < Msp.dim(); ++id) degrees.insert(Msp.degree(id));
    for (int d : degrees) {
      std::vector<int> cols, rows;
      for (int id = 0; id < Lsp.dim(); ++id)
        if (Lsp.degree(id) == d) cols.push_back(id);
      for (int id = 0; id < Msp.dim(); ++id)
        if (Msp.degree(id) == d) rows.push_back(id);
      Mat A(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
      for (size_t j = 0; j < cols.size(); ++j) {
        Element v = projection.coeff(1, {cols[j]});
        for (const auto& [out, c] : v.terms()) {
          auto it = std::lower_bound(rows.begin(), rows.end(), out);
          A.at(static_cast<int>(it - rows.begin()), static_cast<int>(j)) = c;
        }
      }
      if (rank(A) != static_cast<int>(rows.size()))
        rep.fail("projection is not surjective in degree " + std::to_string(d));
    }
  }
  // kernel exactness: the stated ids map to zero and span the full kernel
  for (int id : kernel_ids)
    if (!projection.coeff(1, {id}).is_zero())
      rep.fail("stated kernel id " + Lsp.name(id) + " does not map to zero");
  {
    int dim_ker = 0;
    std::set<int> degrees;
    for (int id = 0; id < Lsp.dim(); ++id) degrees.insert(Lsp.degree(id));
    for (int d : degrees) {
      std::vector<int> cols;
      for (int id = 0; id < Lsp.dim(); ++id)
        if (Lsp.degree(id) == d) cols.push_back(id);
      std::map<int, int> rows;
      Mat A(Msp.dim(), static_cast<int>(cols.size()));
      for (size_t j = 0; j < cols.size(); ++j) {
        Element v = projection.coeff(1, {cols[j]});
        for (const auto& [out, c] : v.terms()) A.at(out, static_cast<int>(j)) = c;
      }
      dim_ker += static_cast<int>(cols.size()) - rank(A);
    }
    if (dim_ker != static_cast<int>(kernel_ids.size()))
      rep.fail("stated kernel does not span the kernel of the projection");
  }
  // centrality: q_n vanishes with an argument in K, and K is abelian
  int N = Lsp.nilpotency();
  for (int n = 2; n < N; ++n) {
    for (int kid : kernel_ids) {
      if (n == 2 && (Lsp.degree(kid) & 1)) {
        // k (.) k vanishes anyway for odd degree
      }
      for (const MultiIndex& rest :
           symmetric_basis(Lsp, n - 1, Lsp.nilpotency() - Lsp.weight(kid))) {
        std::vector<int> tuple = rest;
        tuple.push_back(kid);
        int sign = 1;
        MultiIndex m = tuple;
        if (!sort_with_sign(Lsp, m, sign)) continue;
        if (!total->q(n, m).is_zero()) {
          rep.fail("q_" + std::to_string(n) + " does not vanish on the kernel at " +
                       multiindex_str(Lsp, m),
                   n, m);
          return rep;
        }
      }
    }
  }
  return rep;
}

bool CentralExtension::in_kernel(const Element& x) const {
  for (const auto& [id, c] : x.terms())
    if (std::find(kernel_ids.begin(), kernel_ids.end(), id) == kernel_ids.end())
      return false;
  return true;
}

std::vector<int> CentralExtension::kernel_degree(int d) const {
  std::vector<int> out;
  for (int id : kernel_ids)
    if (total->space().degree(id) == d) out.push_back(id);
  return out;
}

Element lift_through(const Morphism& projection, const Element& x) {
  const Space& Lsp = *projection.source();
  const Space& Msp = *projection.target();
  auto deg = element_degree(Msp, x);
  if (!deg) {
    if (x.is_zero()) return Element();
    throw error("lift_through: element is not homogeneous");
  }
  std::vector<int> cols;
  for (int id = 0; id < Lsp.dim(); ++id)
    if (Lsp.degree(id) == *deg) cols.push_back(id);
  Mat A(Msp.dim(), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    Element v = projection.coeff(1, {cols[j]});
    for (const auto& [out, c] : v.terms()) A.at(out, static_cast<int>(j)) = c;
  }
  std::vector<Rat> b(Msp.dim(), Rat(0));
  for (const auto& [id, c] : x.terms()) b[id] = c;
  auto sol = solve(A, b);
  if (!sol) throw error("lift_through: element is not in the image");
  Element y;
  for (size_t j = 0; j < cols.size(); ++j) y.add_term(cols[j], (*sol)[j]);
  return y;
}

ObstructionResult obstruction_mc(const CentralExtension& E, const Element& x) {
  if (!E.base->ops().is_mc(x))
    throw error("obstruction_mc: x is not Maurer-Cartan in the base");
  ObstructionResult res;
  res.lift = lift_through(E.projection, x);
  res.curvature_rep = E.total->ops().curvature(res.lift);
  if (!E.in_kernel(res.curvature_rep))
    throw error("obstruction_mc: curvature of the lift is not kernel-valued");
  // solve q_1 z = R_L(y) with z in K^0
  std::vector<int> cols = E.kernel_degree(0);
  const Space& Lsp = E.total->space();
  Mat A(Lsp.dim(), static_cast<int>(cols.size()));
  BracketOps Q = E.total->ops();
  for (size_t j = 0; j < cols.size(); ++j) {
    Element v = Q.d(Element::unit(cols[j]));
    for (const auto& [out, c] : v.terms()) A.at(out, static_cast<int>(j)) = c;
  }
  std::vector<Rat> b(Lsp.dim(), Rat(0));
  for (const auto& [id, c] : res.curvature_rep.terms()) b[id] = c;
  auto sol = solve(A, b);
  res.vanishes = sol.has_value();
  if (sol) {
    Element z;
    for (size_t j = 0; j < cols.size(); ++j) z.add_term(cols[j], (*sol)[j]);
    res.mc_lift = res.lift - z;
  }
  return res;
}

std::vector<Element> kernel_cocycles_z1(const CentralExtension& E) {
  std::vector<int> cols = E.kernel_degree(0);
  const Space& Lsp = E.total->space();
  BracketOps Q = E.total->ops();
  Mat A(Lsp.dim(), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    Element v = Q.d(Element::unit(cols[j]));
    for (const auto& [out, c] : v.terms()) A.at(out, static_cast<int>(j)) = c;
  }
  std::vector<Element> out;
  for (const auto& k : kernel_basis(A)) {
    Element z;
    for (size_t j = 0; j < cols.size(); ++j) z.add_term(cols[j], k[j]);
    if (!z.is_zero()) out.push_back(std::move(z));
  }
  return out;
}

bool obstruction_classes_equal(const CentralExtension& E, const Element& a,
                               const Element& b) {
  Element diff = a - b;
  if (diff.is_zero()) return true;
  std::vector<int> cols = E.kernel_degree(0);
  const Space& Lsp = E.total->space();
  BracketOps Q = E.total->ops();
  Mat A(Lsp.dim(), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    Element v = Q.d(Element::unit(cols[j]));
    for (const auto& [out, c] : v.terms()) A.at(out, static_cast<int>(j)) = c;
  }
  std::vector<Rat> rhs(Lsp.dim(), Rat(0));
  for (const auto& [id, c] : diff.terms()) rhs[id] = c;
  return solve(A, rhs).has_value();
}

}  // namespace linfty
