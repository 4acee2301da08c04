#include "linfty/tot.hpp"

#include "linfty/samples.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace linfty {

namespace {

CheckReport check_strict_morphisms(
    const std::vector<std::shared_ptr<const Linfty>>& levels,
    const std::vector<std::vector<Morphism>>& maps, int from_offset,
    const char* what) {
  CheckReport rep;
  for (size_t n = 0; n < maps.size(); ++n) {
    for (size_t j = 0; j < maps[n].size(); ++j) {
      const Morphism& m = maps[n][j];
      size_t from = n + from_offset;
      size_t to = from_offset ? n : n + 1;
      // from/to indices depend on the family: cofaces go up, codegeneracies down
      (void)from;
      (void)to;
      if (!m.is_strict()) {
        rep.fail(std::string(what) + " is not strict");
        continue;
      }
      const Linfty* src = nullptr;
      const Linfty* dst = nullptr;
      for (const auto& L : levels) {
        if (L->space_ptr() == m.source()) src = L.get();
        if (L->space_ptr() == m.target()) dst = L.get();
      }
      if (!src || !dst) {
        rep.fail(std::string(what) + " does not connect diagram levels");
        continue;
      }
      CheckReport c = check_morphism(m, src->ops(), dst->ops());
      if (!c.ok)
        rep.fail(std::string(what) + "[" + std::to_string(n) + "][" +
                 std::to_string(j) + "] is not a strict L-infinity morphism: " +
                 c.summary());
    }
  }
  return rep;
}

}  // namespace

CheckReport SemiCosimplicial::validate() const {
  CheckReport rep;
  if (levels.empty()) {
    rep.fail("no levels");
    return rep;
  }
  if (cofaces.size() + 1 != levels.size()) {
    rep.fail("coface family has the wrong length");
    return rep;
  }
  for (size_t n = 1; n < levels.size(); ++n) {
    if (cofaces[n - 1].size() != n + 1) {
      rep.fail("level " + std::to_string(n) + " must have " +
               std::to_string(n + 1) + " cofaces");
      return rep;
    }
    for (size_t j = 0; j <= n; ++j) {
      const Morphism& m = cofaces[n - 1][j];
      if (m.source() != levels[n - 1]->space_ptr() ||
          m.target() != levels[n]->space_ptr())
        rep.fail("coface d^" + std::to_string(j) + " at level " +
                 std::to_string(n) + " connects the wrong spaces");
    }
  }
  CheckReport strict = check_strict_morphisms(levels, cofaces, 0, "coface");
  if (!strict.ok) {
    rep.ok = false;
    for (auto& f : strict.failures) rep.failures.push_back(f);
  }
  // cosimplicial identities d^j d^i = d^i d^{j-1}, i < j
  for (size_t n = 2; n < levels.size(); ++n) {
    for (int j = 0; j <= static_cast<int>(n); ++j)
      for (int i = 0; i < j; ++i) {
        for (int b = 0; b < levels[n - 2]->space().dim(); ++b) {
          Element lhs = cofaces[n - 1][j].linear(
              cofaces[n - 2][i].linear(Element::unit(b)));
          Element rhs = cofaces[n - 1][i].linear(
              cofaces[n - 2][j - 1].linear(Element::unit(b)));
          if (lhs != rhs) {
            rep.fail("d^" + std::to_string(j) + " d^" + std::to_string(i) +
                     " != d^" + std::to_string(i) + " d^" +
                     std::to_string(j - 1) + " into level " + std::to_string(n));
            break;
          }
        }
      }
  }
  return rep;
}

CheckReport Cosimplicial::validate() const {
  SemiCosimplicial semi{levels, cofaces};
  CheckReport rep = semi.validate();
  if (codegeneracies.size() + 1 != levels.size())
    rep.fail("codegeneracy family has the wrong length");
  for (size_t n = 0; n + 1 < levels.size(); ++n) {
    if (codegeneracies[n].size() != n + 1) {
      rep.fail("level " + std::to_string(n) + " must have " +
               std::to_string(n + 1) + " codegeneracies");
      return rep;
    }
    for (size_t j = 0; j <= n; ++j) {
      const Morphism& m = codegeneracies[n][j];
      if (m.source() != levels[n + 1]->space_ptr() ||
          m.target() != levels[n]->space_ptr())
        rep.fail("codegeneracy s^" + std::to_string(j) + " at level " +
                 std::to_string(n) + " connects the wrong spaces");
    }
  }
  CheckReport strict =
      check_strict_morphisms(levels, codegeneracies, 1, "codegeneracy");
  if (!strict.ok) {
    rep.ok = false;
    for (auto& f : strict.failures) rep.failures.push_back(f);
  }
  auto dim_at = [&](size_t n) { return levels[n]->space().dim(); };
  // s^j s^i = s^i s^{j+1} for i <= j (maps L_{n+2} -> L_n)
  for (size_t n = 0; n + 2 < levels.size(); ++n)
    for (int j = 0; j <= static_cast<int>(n); ++j)
      for (int i = 0; i <= j; ++i)
        for (int b = 0; b < dim_at(n + 2); ++b) {
          Element lhs = codegeneracies[n][j].linear(
              codegeneracies[n + 1][i].linear(Element::unit(b)));
          Element rhs = codegeneracies[n][i].linear(
              codegeneracies[n + 1][j + 1].linear(Element::unit(b)));
          if (lhs != rhs)
            rep.fail("s^j s^i identity fails at level " + std::to_string(n));
        }
  // mixed identities s^j d^i
  for (size_t n = 0; n + 1 < levels.size(); ++n) {
    // s^j: L_{n+1} -> L_n, d^i: L_n -> L_{n+1}
    for (int j = 0; j <= static_cast<int>(n); ++j)
      for (int i = 0; i <= static_cast<int>(n) + 1; ++i)
        for (int b = 0; b < dim_at(n); ++b) {
          Element v =
              codegeneracies[n][j].linear(cofaces[n][i].linear(Element::unit(b)));
          Element want;
          if (i == j || i == j + 1) {
            want = Element::unit(b);
          } else if (i < j) {
            // d^i s^{j-1}
            if (n >= 1)
              want = cofaces[n - 1][i].linear(
                  codegeneracies[n - 1][j - 1].linear(Element::unit(b)));
            else
              continue;
          } else {
            // i > j+1: d^{i-1} s^j
            if (n >= 1)
              want = cofaces[n - 1][i - 1].linear(
                  codegeneracies[n - 1][j].linear(Element::unit(b)));
            else
              continue;
          }
          if (v != want)
            rep.fail("s^" + std::to_string(j) + " d^" + std::to_string(i) +
                     " identity fails at level " + std::to_string(n));
        }
  }
  return rep;
}

MatchingSpace matching_space(const Cosimplicial& L, int n) {
  if (n < 0 || n + 1 > L.kmax())
    throw error("matching_space: level out of range");
  const auto& Ln = L.levels[n];
  std::vector<const Linfty*> factors(n + 1, Ln.get());
  MatchingSpace out;
  out.product = product_algebra(factors, "M" + std::to_string(n) + "-ambient");
  // constraints s^i(x_j) = s^{j-1}(x_i) for 0 <= i < j <= n
  std::vector<LinearConstraint> cs;
  if (n >= 1) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        LinearConstraint c;
        c.target = L.levels[n - 1]->space_ptr();
        const ProductResult* P = &out.product;
        const Cosimplicial* Lp = &L;
        c.map = [P, Lp, i, j, n](int pid) {
          // decode the product id
          for (size_t f = 0; f < P->factor_ids.size(); ++f) {
            const auto& ids = P->factor_ids[f];
            auto it = std::find(ids.begin(), ids.end(), pid);
            if (it == ids.end()) continue;
            int b = static_cast<int>(it - ids.begin());
            if (static_cast<int>(f) == j)
              return Lp->codegeneracies[n - 1][i].linear(Element::unit(b));
            if (static_cast<int>(f) == i)
              return -Lp->codegeneracies[n - 1][j - 1].linear(Element::unit(b));
            return Element();
          }
          return Element();
        };
        cs.push_back(std::move(c));
      }
  }
  auto vectors = constrained_kernel_adapted(out.product.alg.space_ptr(), cs);
  out.sub = subalgebra_from_vectors(out.product.alg.ops(), std::move(vectors),
                                    "M" + std::to_string(n));
  // matching map L_{n+1} -> M_n
  MultiMap f1(L.levels[n + 1]->space_ptr(), out.sub.alg.space_ptr(), 1, 0);
  for (int b = 0; b < L.levels[n + 1]->space().dim(); ++b) {
    Element tuple;
    for (int i = 0; i <= n; ++i) {
      Element si = L.codegeneracies[n][i].linear(Element::unit(b));
      for (const auto& [id, c] : si.terms())
        tuple.add_term(out.product.factor_ids[i][id], c);
    }
    auto coords = out.sub.restrict(tuple);
    if (!coords)
      throw error("matching_space: matching morphism does not land in M_n");
    if (!coords->is_zero()) f1.set({b}, std::move(*coords));
  }
  out.matching_map = Morphism::strict(L.levels[n + 1]->space_ptr(),
                                      out.sub.alg.space_ptr(), std::move(f1));
  return out;
}

Element matching_lift(const Cosimplicial& L, int n,
                      const std::vector<Element>& xs) {
  if (static_cast<int>(xs.size()) != n + 1)
    throw error("matching_lift: need n+1 components");
  // verify membership in M_n
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Element lhs = L.codegeneracies[n - 1][i].linear(xs[j]);
      Element rhs = L.codegeneracies[n - 1][j - 1].linear(xs[i]);
      if (lhs != rhs)
        throw error("matching_lift: tuple is not in the matching space");
    }
  // y_n = d^n(x_n); y_r = d^r(x_r - s^r(y_{r+1})) + y_{r+1}
  Element y = L.cofaces[n][n].linear(xs[n]);
  for (int r = n - 1; r >= 0; --r) {
    Element sr = L.codegeneracies[n][r].linear(y);
    Element yr = L.cofaces[n][r].linear(xs[r] - sr) + y;
    y = std::move(yr);
  }
  return y;
}

namespace {

struct ConstraintSet {
  std::vector<LinearConstraint> cs;
};

// the coface map delta_j: [n-1] -> [n] as a vertex list
std::vector<int> coface_vertex_map(int n, int j) {
  std::vector<int> v;
  for (int a = 0; a <= n - 1; ++a) v.push_back(a < j ? a : a + 1);
  return v;
}

// the codegeneracy sigma_j: [n+1] -> [n]
std::vector<int> codegeneracy_vertex_map(int n, int j) {
  std::vector<int> v;
  for (int a = 0; a <= n + 1; ++a) v.push_back(a <= j ? a : a - 1);
  return v;
}

struct TotBuilder {
  std::vector<std::shared_ptr<const Linfty>> levels;
  const std::vector<std::vector<Morphism>>* cofaces = nullptr;
  const std::vector<std::vector<Morphism>>* codegens = nullptr;
  int k = 0;

  TotResult build(bool exact) {
    TotResult T;
    T.k = k;
    T.exact = exact;
    for (int n = 0; n <= k; ++n)
      T.components.push_back(cochain_structure_cached(n, levels[n]));
    std::vector<const Linfty*> fs;
    for (const auto& c : T.components) fs.push_back(&c->alg);
    T.product = product_algebra(fs, "Tot-ambient");

    std::vector<LinearConstraint> cs;
    const ProductResult* P = &T.product;
    auto decode = [P](int pid) -> std::pair<int, int> {
      for (size_t f = 0; f < P->factor_ids.size(); ++f) {
        const auto& ids = P->factor_ids[f];
        auto it = std::find(ids.begin(), ids.end(), pid);
        if (it != ids.end())
          return {static_cast<int>(f), static_cast<int>(it - ids.begin())};
      }
      throw error("tot: bad product id");
    };

    // coface compatibilities d^j_*(alpha_{n-1}) = delta_j^*(alpha_n)
    for (int n = 1; n <= k; ++n) {
      CochainPtr mixed = cochain_structure_cached(n - 1, levels[n]);
      for (int j = 0; j <= n; ++j) {
        Morphism push = cochain_pushforward(*T.components[n - 1], *mixed,
                                            (*cofaces)[n - 1][j]);
        Morphism pull = cochain_pullback(*T.components[n], *mixed,
                                         coface_vertex_map(n, j));
        LinearConstraint c;
        c.target = mixed->alg.space_ptr();
        c.map = [decode, push, pull, n](int pid) {
          auto [f, b] = decode(pid);
          if (f == n - 1) return push.linear(Element::unit(b));
          if (f == n) return -pull.linear(Element::unit(b));
          return Element();
        };
        cs.push_back(std::move(c));
      }
    }
    // codegeneracy compatibilities s^j_*(alpha_{n+1}) = sigma_j^*(alpha_n)
    if (codegens) {
      for (int n = 0; n + 1 <= k; ++n) {
        CochainPtr mixed = cochain_structure_cached(n + 1, levels[n]);
        for (int j = 0; j <= n; ++j) {
          Morphism push = cochain_pushforward(*T.components[n + 1], *mixed,
                                              (*codegens)[n][j]);
          Morphism pull = cochain_pullback(*T.components[n], *mixed,
                                           codegeneracy_vertex_map(n, j));
          LinearConstraint c;
          c.target = mixed->alg.space_ptr();
          c.map = [decode, push, pull, n](int pid) {
            auto [f, b] = decode(pid);
            if (f == n + 1) return push.linear(Element::unit(b));
            if (f == n) return -pull.linear(Element::unit(b));
            return Element();
          };
          cs.push_back(std::move(c));
        }
      }
    }
    auto vectors = constrained_kernel_adapted(T.product.alg.space_ptr(), cs);
    T.sub = subalgebra_from_vectors(T.product.alg.ops(), std::move(vectors),
                                    "Tot_" + std::to_string(k));
    return T;
  }
};

}  // namespace

Element TotResult::component_of(const Element& sub_elt, int n) const {
  Element embedded = sub.include(sub_elt);
  Element out;
  const auto& ids = product.factor_ids[n];
  for (const auto& [pid, c] : embedded.terms()) {
    auto it = std::find(ids.begin(), ids.end(), pid);
    if (it != ids.end()) out.add_term(static_cast<int>(it - ids.begin()), c);
  }
  return out;
}

Element TotResult::assemble(const std::vector<Element>& comps) const {
  Element out;
  for (size_t n = 0; n < comps.size(); ++n)
    for (const auto& [id, c] : comps[n].terms())
      out.add_term(product.factor_ids[n][id], c);
  return out;
}

std::map<int, int> TotResult::dims_by_degree() const {
  std::map<int, int> dims;
  const Space& sp = sub.alg.space();
  for (int id = 0; id < sp.dim(); ++id) dims[sp.degree(id)] += 1;
  return dims;
}

TotResult tot_k(const SemiCosimplicial& L, int k) {
  if (k < 0) throw error("tot_k: negative cutoff");
  int keff = std::min(k, L.nmax());
  TotBuilder b;
  b.levels = L.levels;
  b.cofaces = &L.cofaces;
  b.k = keff;
  TotResult T = b.build(k >= L.nmax());
  T.k = keff;
  return T;
}

TotResult tot_k(const Cosimplicial& L, int k) {
  if (k > L.kmax())
    throw error("tot_k: cutoff " + std::to_string(k) +
                " exceeds the represented levels (kmax = " +
                std::to_string(L.kmax()) + ")");
  TotBuilder b;
  b.levels = L.levels;
  b.cofaces = &L.cofaces;
  b.codegens = &L.codegeneracies;
  b.k = k;
  return b.build(false);
}

TotResult tot(const SemiCosimplicial& L) { return tot_k(L, L.nmax()); }

namespace {

// boundary-assembly map Tot_{k-1} -> C*(dDelta_k; L_k): the value on a face
// simplex comes from d^j_*(alpha_{k-1}) for any admissible j (consistency of
// the choices is part of the cartesian check)
Element boundary_assembly(const TotResult& Tkm1,
                          const std::vector<std::vector<Morphism>>& cofaces,
                          const CochainAlgebra& B, int k, const Element& sub_elt,
                          CheckReport* consistency) {
  Element out;
  Element alpha = Tkm1.component_of(sub_elt, k - 1);
  const CochainAlgebra& Ckm1 = *Tkm1.components[k - 1];
  std::vector<Element> pushed;  // per j: element of C*(Delta_{k-1};L_k)
  CochainPtr mixed = cochain_structure_cached(k - 1, B.L);
  for (int j = 0; j <= k; ++j) {
    Morphism push = cochain_pushforward(Ckm1, *mixed, cofaces[k - 1][j]);
    pushed.push_back(push.linear(alpha));
  }
  for (int si = 0; si < B.X.count(); ++si) {
    const std::vector<int>& tau = B.X.simplices[si];
    // admissible j: vertices of Delta_k missing from tau
    Element value;
    bool first = true;
    for (int j = 0; j <= k; ++j) {
      if (std::binary_search(tau.begin(), tau.end(), j)) continue;
      // delta_j^{-1}(tau): positions in the face
      std::vector<int> pre;
      for (int v : tau) pre.push_back(v < j ? v : v - 1);
      Element vj;
      for (const auto& [cid, c] : pushed[j].terms()) {
        auto [fsi, lid] = mixed->decode(cid);
        if (mixed->X.simplices[fsi] == pre) vj.add_term(lid, c);
      }
      if (first) {
        value = vj;
        first = false;
      } else if (consistency && !(value == vj)) {
        consistency->fail("boundary assembly inconsistent on a face simplex");
      }
    }
    for (const auto& [lid, c] : value.terms())
      out.add_term(B.id(si, lid), c);
  }
  return out;
}

CheckReport cartesian_common(
    const std::vector<std::shared_ptr<const Linfty>>& levels,
    const std::vector<std::vector<Morphism>>& cofaces, const TotResult& Tk,
    const TotResult& Tkm1, int k,
    // base data: B and the two maps into it, as linear maps on basis ids
    const Linfty& base_alg,
    const std::function<Element(const Element&)>& from_tot,
    const std::function<Element(const Element&)>& from_top) {
  CheckReport rep;
  const CochainAlgebra& Ck = *Tk.components[k];
  // fiber product of Tot_{k-1} -> B <- C*(Delta_k;L_k)
  std::vector<const Linfty*> fs{&Tkm1.sub.alg, &Ck.alg};
  ProductResult P = product_algebra(fs, "cart-ambient");
  std::vector<LinearConstraint> cs;
  LinearConstraint c;
  c.target = base_alg.space_ptr();
  const ProductResult* Pp = &P;
  c.map = [Pp, &from_tot, &from_top](int pid) {
    const auto& ids0 = Pp->factor_ids[0];
    auto it = std::find(ids0.begin(), ids0.end(), pid);
    if (it != ids0.end())
      return from_tot(Element::unit(static_cast<int>(it - ids0.begin())));
    const auto& ids1 = Pp->factor_ids[1];
    it = std::find(ids1.begin(), ids1.end(), pid);
    return -from_top(Element::unit(static_cast<int>(it - ids1.begin())));
  };
  cs.push_back(std::move(c));
  auto vectors = constrained_kernel_adapted(P.alg.space_ptr(), cs);
  Subalgebra FP = subalgebra_from_vectors(P.alg.ops(), std::move(vectors),
                                          "cart-fp");
  if (FP.alg.space().dim() != Tk.sub.alg.space().dim()) {
    rep.fail("fiber product dimension " +
             std::to_string(FP.alg.space().dim()) + " != Tot_k dimension " +
             std::to_string(Tk.sub.alg.space().dim()));
    return rep;
  }
  // comparison map Tot_k -> FP on basis, then check strict isomorphism
  MultiMap f1(Tk.sub.alg.space_ptr(), FP.alg.space_ptr(), 1, 0);
  Mat image_mat(FP.alg.space().dim(), Tk.sub.alg.space().dim());
  for (int b = 0; b < Tk.sub.alg.space().dim(); ++b) {
    Element emb = Tk.sub.include(Element::unit(b));
    // components (alpha_0..alpha_{k-1}) -> a Tot_{k-1} element, plus alpha_k
    std::vector<Element> lower;
    for (int n = 0; n <= k - 1; ++n) lower.push_back(Tk.component_of(Element::unit(b), n));
    Element lower_prod = Tkm1.assemble(lower);
    auto lower_sub = Tkm1.sub.restrict(lower_prod);
    if (!lower_sub) {
      rep.fail("Tot_k element does not project into Tot_{k-1}");
      return rep;
    }
    Element top = Tk.component_of(Element::unit(b), k);
    Element pair;
    for (const auto& [id, c] : lower_sub->terms())
      pair.add_term(P.factor_ids[0][id], c);
    for (const auto& [id, c] : top.terms())
      pair.add_term(P.factor_ids[1][id], c);
    auto coords = FP.restrict(pair);
    if (!coords) {
      rep.fail("comparison image is not in the fiber product");
      return rep;
    }
    for (const auto& [id, c] : coords->terms()) image_mat.at(id, b) = c;
    if (!coords->is_zero()) f1.set({b}, std::move(*coords));
  }
  if (rank(image_mat) != Tk.sub.alg.space().dim()) {
    rep.fail("comparison map is not injective");
    return rep;
  }
  Morphism cmp = Morphism::strict(Tk.sub.alg.space_ptr(), FP.alg.space_ptr(),
                                  std::move(f1));
  CheckReport mor = check_morphism(cmp, Tk.sub.alg.ops(), FP.alg.ops());
  if (!mor.ok)
    rep.fail("comparison map is not a strict isomorphism of structures: " +
             mor.summary());
  (void)levels;
  (void)cofaces;
  return rep;
}

// rank-based surjectivity of a linear map given by images of basis elements
bool surjective_onto(const std::vector<Element>& images, int target_dim) {
  Mat A(target_dim, static_cast<int>(images.size()));
  for (size_t j = 0; j < images.size(); ++j)
    for (const auto& [id, c] : images[j].terms())
      A.at(id, static_cast<int>(j)) = c;
  return rank(A) == target_dim;
}

}  // namespace

CheckReport cartesian_check(const SemiCosimplicial& L, int k) {
  CheckReport rep;
  if (k < 1 || k > L.nmax()) {
    rep.fail("cartesian_check: k out of range");
    return rep;
  }
  TotResult Tk = tot_k(L, k);
  TotResult Tkm1 = tot_k(L, k - 1);
  CochainPtr B = subcomplex_structure(FinComplex::boundary(k), L.levels[k]);
  Morphism restr = cochain_pullback(*Tk.components[k], *B,
                                    [&] {
                                      std::vector<int> v(k + 1);
                                      for (int i = 0; i <= k; ++i) v[i] = i;
                                      return v;
                                    }());
  auto from_tot = [&](const Element& sub_elt) {
    return boundary_assembly(Tkm1, L.cofaces, *B, k, sub_elt, &rep);
  };
  auto from_top = [&](const Element& x) { return restr.linear(x); };
  CheckReport inner = cartesian_common(L.levels, L.cofaces, Tk, Tkm1, k,
                                       B->alg, from_tot, from_top);
  if (!inner.ok) {
    rep.ok = false;
    for (auto& f : inner.failures) rep.failures.push_back(f);
  }
  return rep;
}

CheckReport cartesian_check(const Cosimplicial& L, int k) {
  CheckReport rep;
  if (k < 1 || k > L.kmax()) {
    rep.fail("cartesian_check: k out of range");
    return rep;
  }
  TotResult Tk = tot_k(L, k);
  TotResult Tkm1 = tot_k(L, k - 1);
  // N_{k-1} = C*(dDelta_k;L_k) x_{C*(dDelta_k;M)} C*(Delta_k;M), M = M_{k-1}
  MatchingSpace M = matching_space(L, k - 1);
  auto Malg = std::make_shared<const Linfty>(M.sub.alg);
  CochainPtr B_L = subcomplex_structure(FinComplex::boundary(k), L.levels[k]);
  CochainPtr B_M = subcomplex_structure(FinComplex::boundary(k), Malg);
  CochainPtr D_M = cochain_structure_cached(k, Malg);
  std::vector<int> idmap(k + 1);
  for (int i = 0; i <= k; ++i) idmap[i] = i;

  Morphism push_BLBM = cochain_pushforward(*B_L, *B_M, M.matching_map);
  Morphism restr_DM_BM = cochain_pullback(*D_M, *B_M, idmap);
  // N as a subalgebra of B_L x D_M
  std::vector<const Linfty*> nf{&B_L->alg, &D_M->alg};
  ProductResult NP = product_algebra(nf, "N-ambient");
  std::vector<LinearConstraint> ncs;
  {
    LinearConstraint c;
    c.target = B_M->alg.space_ptr();
    const ProductResult* Pp = &NP;
    c.map = [Pp, push_BLBM, restr_DM_BM](int pid) {
      const auto& ids0 = Pp->factor_ids[0];
      auto it = std::find(ids0.begin(), ids0.end(), pid);
      if (it != ids0.end())
        return push_BLBM.linear(
            Element::unit(static_cast<int>(it - ids0.begin())));
      const auto& ids1 = Pp->factor_ids[1];
      it = std::find(ids1.begin(), ids1.end(), pid);
      return -restr_DM_BM.linear(
          Element::unit(static_cast<int>(it - ids1.begin())));
    };
    ncs.push_back(std::move(c));
  }
  Subalgebra N = subalgebra_from_vectors(
      NP.alg.ops(), constrained_kernel_adapted(NP.alg.space_ptr(), ncs), "N");

  // maps into N
  Morphism restr_top_BL = cochain_pullback(*Tk.components[k], *B_L, idmap);
  Morphism push_top_DM =
      cochain_pushforward(*Tk.components[k], *D_M, M.matching_map);
  auto from_top = [&](const Element& x) -> Element {
    Element pair;
    Element a = restr_top_BL.linear(x);
    Element b = push_top_DM.linear(x);
    for (const auto& [id, c] : a.terms()) pair.add_term(NP.factor_ids[0][id], c);
    for (const auto& [id, c] : b.terms()) pair.add_term(NP.factor_ids[1][id], c);
    auto coords = N.restrict(pair);
    if (!coords) throw error("cartesian_check: top map does not land in N");
    return *coords;
  };
  // Tot_{k-1} -> N: boundary assembly into B_L, and the sigma-pullback tuple
  // into C*(Delta_k; M)
  CochainPtr mixed_km1 = cochain_structure_cached(k, L.levels[k - 1]);
  std::vector<Morphism> sigma_pulls;
  for (int j = 0; j <= k - 1; ++j)
    sigma_pulls.push_back(cochain_pullback(*Tkm1.components[k - 1], *mixed_km1,
                                           codegeneracy_vertex_map(k - 1, j)));
  auto from_tot = [&](const Element& sub_elt) -> Element {
    Element pair;
    Element a = boundary_assembly(Tkm1, L.cofaces, *B_L, k, sub_elt, &rep);
    for (const auto& [id, c] : a.terms()) pair.add_term(NP.factor_ids[0][id], c);
    // tuple (sigma_j^* alpha_{k-1})_j as a cochain valued in M_{k-1}
    Element alpha = Tkm1.component_of(sub_elt, k - 1);
    // value per simplex of Delta_k: the tuple of values
    std::vector<Element> pulled;
    for (int j = 0; j <= k - 1; ++j) pulled.push_back(sigma_pulls[j].linear(alpha));
    // assemble into C*(Delta_k; M): for each simplex and each M-basis vector
    for (int si = 0; si < D_M->X.count(); ++si) {
      // dense tuple value in the ambient product of M
      Element tuple;  // element of M.product space
      for (int j = 0; j <= k - 1; ++j) {
        for (const auto& [cid, c] : pulled[j].terms()) {
          auto [s2, lid] = mixed_km1->decode(cid);
          if (s2 == si) tuple.add_term(M.product.factor_ids[j][lid], c);
        }
      }
      if (tuple.is_zero()) continue;
      auto coords = M.sub.restrict(tuple);
      if (!coords)
        throw error("cartesian_check: sigma-tuple does not land in M_{k-1}");
      for (const auto& [mid, c] : coords->terms())
        pair.add_term(NP.factor_ids[1][D_M->id(si, mid)], c);
    }
    auto coords = N.restrict(pair);
    if (!coords) throw error("cartesian_check: Tot_{k-1} map does not land in N");
    return *coords;
  };
  CheckReport inner = cartesian_common(L.levels, L.cofaces, Tk, Tkm1, k,
                                       N.alg, from_tot, from_top);
  if (!inner.ok) {
    rep.ok = false;
    for (auto& f : inner.failures) rep.failures.push_back(f);
  }
  // vertical surjectivity: Tot_k -> Tot_{k-1} and C*(Delta_k;L_k) -> N
  {
    std::vector<Element> images;
    for (int b = 0; b < Tk.sub.alg.space().dim(); ++b) {
      std::vector<Element> lower;
      for (int n = 0; n <= k - 1; ++n)
        lower.push_back(Tk.component_of(Element::unit(b), n));
      auto sub = Tkm1.sub.restrict(Tkm1.assemble(lower));
      if (!sub) throw error("cartesian_check: projection leaves Tot_{k-1}");
      images.push_back(*sub);
    }
    if (!surjective_onto(images, Tkm1.sub.alg.space().dim()))
      rep.fail("Tot_k -> Tot_{k-1} is not surjective");
  }
  {
    std::vector<Element> images;
    for (int b = 0; b < Tk.components[k]->alg.space().dim(); ++b)
      images.push_back(from_top(Element::unit(b)));
    if (!surjective_onto(images, N.alg.space().dim()))
      rep.fail("C*(Delta_k;L_k) -> N_{k-1} is not surjective");
  }
  return rep;
}

SemiCosimplicial cech_builder(const CoverInput& cover) {
  int depth = 0;
  for (const auto& p : cover.patches)
    depth = std::max(depth, static_cast<int>(p.tuple.size()));
  if (depth == 0) throw error("cech_builder: no patches");
  SemiCosimplicial out;
  std::map<std::vector<int>, const CechPatch*> by_tuple;
  for (const auto& p : cover.patches) {
    if (!by_tuple.emplace(p.tuple, &p).second)
      throw error("cech_builder: duplicate patch");
  }
  std::map<std::pair<std::vector<int>, std::vector<int>>, const Morphism*> rho;
  for (const auto& r : cover.restrictions)
    rho[{r.from, r.to}] = &r.rho;

  std::vector<std::vector<const CechPatch*>> by_level(depth);
  for (const auto& p : cover.patches)
    by_level[p.tuple.size() - 1].push_back(&p);
  for (auto& lvl : by_level)
    std::sort(lvl.begin(), lvl.end(),
              [](const CechPatch* a, const CechPatch* b) {
                return a->tuple < b->tuple;
              });

  for (int n = 0; n < depth; ++n) {
    std::vector<const Linfty*> fs;
    for (const CechPatch* p : by_level[n]) fs.push_back(p->alg.get());
    if (fs.empty()) {
      out.levels.push_back(zero_algebra());
      continue;
    }
    ProductResult P = product_algebra(fs, "cech-L" + std::to_string(n));
    out.levels.push_back(std::make_shared<Linfty>(std::move(P.alg)));
    // keep factor layout implicitly: contiguous blocks in patch order
  }
  // cofaces: component at patch T of level n: restriction from d_j(T)
  for (int n = 1; n < depth; ++n) {
    std::vector<Morphism> maps;
    for (int j = 0; j <= n; ++j) {
      MultiMap f1(out.levels[n - 1]->space_ptr(), out.levels[n]->space_ptr(),
                  1, 0);
      // offsets of the patches in the product bases
      int dst_off = 0;
      for (const CechPatch* pt : by_level[n]) {
        std::vector<int> dj;
        for (size_t a = 0; a < pt->tuple.size(); ++a)
          if (static_cast<int>(a) != j) dj.push_back(pt->tuple[a]);
        auto pit = by_tuple.find(dj);
        if (pit == by_tuple.end())
          throw error("cech_builder: missing patch for a face intersection");
        auto rit = rho.find({dj, pt->tuple});
        if (rit == rho.end())
          throw error("cech_builder: missing restriction map");
        // source offset of patch dj at level n-1
        int src_off = 0;
        for (const CechPatch* q : by_level[n - 1]) {
          if (q->tuple == dj) break;
          src_off += q->alg->space().dim();
        }
        for (int b = 0; b < pit->second->alg->space().dim(); ++b) {
          Element img = rit->second->coeff(1, {b});
          Element cur = f1.at({src_off + b});
          for (const auto& [id, c] : img.terms())
            cur.add_term(dst_off + id, c);
          f1.set({src_off + b}, std::move(cur));
        }
        dst_off += pt->alg->space().dim();
      }
      maps.push_back(Morphism::strict(out.levels[n - 1]->space_ptr(),
                                      out.levels[n]->space_ptr(),
                                      std::move(f1)));
    }
    out.cofaces.push_back(std::move(maps));
  }
  CheckReport rep = out.validate();
  if (!rep.ok) throw error("cech_builder: " + rep.summary());
  return out;
}

FinCategory FinCategory::poset(int n_objects,
                               const std::vector<std::pair<int, int>>& leq) {
  FinCategory S;
  S.n_objects = n_objects;
  std::set<std::pair<int, int>> rel;
  for (int i = 0; i < n_objects; ++i) rel.insert({i, i});
  for (auto [a, b] : leq) rel.insert({a, b});
  // transitive closure
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : rel)
      for (auto [c, d] : rel)
        if (b == c && !rel.count({a, d})) {
          rel.insert({a, d});
          changed = true;
        }
  }
  std::map<std::pair<int, int>, int> arrow_of;
  for (auto [a, b] : rel) {
    arrow_of[{a, b}] = static_cast<int>(S.arrows.size());
    S.arrows.push_back({a, b});
  }
  S.identity.resize(n_objects);
  for (int i = 0; i < n_objects; ++i) S.identity[i] = arrow_of[{i, i}];
  int m = static_cast<int>(S.arrows.size());
  S.comp.assign(m, std::vector<int>(m, -1));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      if (S.arrows[f].dst == S.arrows[g].src)
        S.comp[g][f] = arrow_of[{S.arrows[f].src, S.arrows[g].dst}];
  return S;
}

CheckReport FinCategory::validate() const {
  CheckReport rep;
  for (int i = 0; i < n_objects; ++i) {
    if (identity[i] < 0 || arrows[identity[i]].src != i ||
        arrows[identity[i]].dst != i)
      rep.fail("bad identity arrow");
  }
  int m = static_cast<int>(arrows.size());
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (arrows[f].dst != arrows[g].src) continue;
      int gf = comp[g][f];
      if (gf < 0 || arrows[gf].src != arrows[f].src ||
          arrows[gf].dst != arrows[g].dst)
        rep.fail("bad composite");
    }
  // associativity
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g)
      for (int h = 0; h < m; ++h) {
        if (arrows[f].dst != arrows[g].src || arrows[g].dst != arrows[h].src)
          continue;
        if (comp[h][comp[g][f]] != comp[comp[h][g]][f])
          rep.fail("composition is not associative");
      }
  return rep;
}

int FinCategory::compose(int g, int f) const {
  int gf = comp[g][f];
  if (gf < 0) throw error("FinCategory: arrows not composable");
  return gf;
}

CheckReport DiagramOverS::validate() const {
  CheckReport rep = S.validate();
  if (static_cast<int>(objects.size()) != S.n_objects ||
      arrows.size() != S.arrows.size()) {
    rep.fail("diagram data does not match the category");
    return rep;
  }
  for (size_t a = 0; a < arrows.size(); ++a) {
    if (arrows[a].source() != objects[S.arrows[a].src]->space_ptr() ||
        arrows[a].target() != objects[S.arrows[a].dst]->space_ptr())
      rep.fail("arrow image connects the wrong spaces");
    CheckReport c = check_morphism(arrows[a], objects[S.arrows[a].src]->ops(),
                                   objects[S.arrows[a].dst]->ops());
    if (!c.ok) rep.fail("arrow image is not a strict morphism");
  }
  // functoriality on composable pairs
  for (size_t f = 0; f < arrows.size(); ++f)
    for (size_t g = 0; g < arrows.size(); ++g) {
      if (S.arrows[f].dst != S.arrows[g].src) continue;
      int gf = S.comp[g][f];
      for (int b = 0; b < objects[S.arrows[f].src]->space().dim(); ++b) {
        Element lhs = arrows[g].linear(arrows[f].linear(Element::unit(b)));
        Element rhs = arrows[gf].linear(Element::unit(b));
        if (lhs != rhs) {
          rep.fail("F(g.f) != F(g) F(f)");
          return rep;
        }
      }
    }
  return rep;
}

namespace {

using ArrowString = std::vector<int>;  // arrow ids; length n (n = 0: {~object})

std::vector<ArrowString> strings_of_length(const FinCategory& S, int n) {
  std::vector<ArrowString> out;
  if (n == 0) {
    for (int i = 0; i < S.n_objects; ++i) out.push_back({-1 - i});  // encode object
    return out;
  }
  // grow composable strings
  std::vector<ArrowString> cur;
  for (size_t a = 0; a < S.arrows.size(); ++a)
    cur.push_back({static_cast<int>(a)});
  for (int len = 2; len <= n; ++len) {
    std::vector<ArrowString> next;
    for (const auto& s : cur)
      for (size_t a = 0; a < S.arrows.size(); ++a)
        if (S.arrows[s.back()].dst == S.arrows[a].src) {
          ArrowString t = s;
          t.push_back(static_cast<int>(a));
          next.push_back(std::move(t));
        }
    cur = std::move(next);
  }
  return cur;
}

int string_end(const FinCategory& S, const ArrowString& s) {
  if (s.size() == 1 && s[0] < 0) return -1 - s[0];
  return S.arrows[s.back()].dst;
}

}  // namespace

Cosimplicial cosimplicial_replacement(const DiagramOverS& D, int kmax) {
  CheckReport rep = D.validate();
  if (!rep.ok) throw error("cosimplicial_replacement: " + rep.summary());
  const FinCategory& S = D.S;
  Cosimplicial out;
  std::vector<std::vector<ArrowString>> strings;
  std::vector<std::vector<int>> offsets;  // per level, per string
  for (int n = 0; n <= kmax; ++n) {
    auto strs = strings_of_length(S, n);
    std::vector<const Linfty*> fs;
    for (const auto& s : strs) fs.push_back(D.objects[string_end(S, s)].get());
    ProductResult P = product_algebra(fs, "Pi" + std::to_string(n));
    out.levels.push_back(std::make_shared<Linfty>(std::move(P.alg)));
    std::vector<int> offs;
    int off = 0;
    for (const auto& s : strs) {
      offs.push_back(off);
      off += D.objects[string_end(S, s)]->space().dim();
    }
    strings.push_back(std::move(strs));
    offsets.push_back(std::move(offs));
  }
  auto string_index = [&](int level, const ArrowString& s) {
    const auto& strs = strings[level];
    auto it = std::find(strs.begin(), strs.end(), s);
    if (it == strs.end()) throw error("replacement: missing string");
    return static_cast<int>(it - strs.begin());
  };
  // cofaces d^j: Pi_{n-1} -> Pi_n
  for (int n = 1; n <= kmax; ++n) {
    std::vector<Morphism> maps;
    for (int j = 0; j <= n; ++j) {
      MultiMap f1(out.levels[n - 1]->space_ptr(), out.levels[n]->space_ptr(), 1, 0);
      std::map<int, Element> cols;
      for (size_t ti = 0; ti < strings[n].size(); ++ti) {
        const ArrowString& T = strings[n][ti];
        ArrowString Sstr;
        const Morphism* post = nullptr;
        if (j == 0) {
          if (n == 1)
            Sstr = {-1 - S.arrows[T[0]].dst};
          else
            Sstr = ArrowString(T.begin() + 1, T.end());
        } else if (j == n) {
          if (n == 1)
            Sstr = {-1 - S.arrows[T[0]].src};
          else
            Sstr = ArrowString(T.begin(), T.end() - 1);
          post = &D.arrows[T.back()];
        } else {
          Sstr = T;
          Sstr.erase(Sstr.begin() + j);
          Sstr[j - 1] = S.compose(T[j], T[j - 1]);
        }
        int si = string_index(n - 1, Sstr);
        int src_dim = D.objects[string_end(S, strings[n - 1][si])]->space().dim();
        for (int b = 0; b < src_dim; ++b) {
          Element img = post ? post->coeff(1, {b}) : Element::unit(b);
          for (const auto& [id, c] : img.terms())
            cols[offsets[n - 1][si] + b].add_term(
                offsets[n][ti] + id, c);
        }
      }
      for (auto& [src, v] : cols) f1.set({src}, std::move(v));
      maps.push_back(Morphism::strict(out.levels[n - 1]->space_ptr(),
                                      out.levels[n]->space_ptr(), std::move(f1)));
    }
    out.cofaces.push_back(std::move(maps));
  }
  // codegeneracies s^j: Pi_{n+1} -> Pi_n (insert identity at slot j)
  for (int n = 0; n + 1 <= kmax; ++n) {
    std::vector<Morphism> maps;
    for (int j = 0; j <= n; ++j) {
      MultiMap f1(out.levels[n + 1]->space_ptr(), out.levels[n]->space_ptr(), 1, 0);
      std::map<int, Element> cols;
      for (size_t ti = 0; ti < strings[n].size(); ++ti) {
        const ArrowString& T = strings[n][ti];
        ArrowString Sstr;
        if (n == 0) {
          Sstr = {S.identity[-1 - T[0]]};
        } else {
          Sstr = T;
          int obj = (j == 0) ? S.arrows[T[0]].src : S.arrows[T[j - 1]].dst;
          Sstr.insert(Sstr.begin() + j, S.identity[obj]);
        }
        int si = string_index(n + 1, Sstr);
        int dim = D.objects[string_end(S, T)]->space().dim();
        for (int b = 0; b < dim; ++b)
          cols[offsets[n + 1][si] + b].add_term(offsets[n][ti] + b, Rat(1));
      }
      for (auto& [src, v] : cols) f1.set({src}, std::move(v));
      maps.push_back(Morphism::strict(out.levels[n + 1]->space_ptr(),
                                      out.levels[n]->space_ptr(), std::move(f1)));
    }
    out.codegeneracies.push_back(std::move(maps));
  }
  CheckReport valid = out.validate();
  if (!valid.ok) throw error("cosimplicial_replacement: " + valid.summary());
  return out;
}

TotResult holim_k(const DiagramOverS& D, int k) {
  Cosimplicial Pi = cosimplicial_replacement(D, k);
  return tot_k(Pi, k);
}

std::vector<Element> tot_vertex_forward(const TotResult& T, const Element& mc) {
  if (!T.sub.alg.ops().is_mc(mc))
    throw error("tot_vertex_forward: the element is not Maurer-Cartan in Tot");
  std::vector<Element> family;
  for (size_t n = 0; n < T.components.size(); ++n) {
    Element comp = T.component_of(mc, static_cast<int>(n));
    if (!T.components[n]->alg.ops().is_mc(comp))
      throw error("tot_vertex_forward: a component is not Maurer-Cartan");
    family.push_back(std::move(comp));
  }
  return family;
}

Element tot_vertex_backward(const TotResult& T,
                            const std::vector<Element>& family) {
  if (family.size() != T.components.size())
    throw error("tot_vertex_backward: family has the wrong length");
  Element prod = T.assemble(family);
  auto coords = T.sub.restrict(prod);
  if (!coords)
    throw error("tot_vertex_backward: the family does not satisfy the compatibilities");
  if (!T.sub.alg.ops().is_mc(*coords))
    throw error("tot_vertex_backward: the family is not Maurer-Cartan");
  return *coords;
}

FinComplex product_complex(int m, int n) {
  int vcount = (m + 1) * (n + 1);
  auto vid = [n](int a, int b) { return a * (n + 1) + b; };
  // chains in the componentwise order on [m] x [n]
  std::vector<std::vector<int>> simps;
  std::vector<std::pair<int, int>> verts;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= n; ++b) verts.push_back({a, b});
  std::function<void(size_t, std::vector<int>&)> rec = [&](size_t start,
                                                           std::vector<int>& cur) {
    if (!cur.empty()) simps.push_back(cur);
    for (size_t i = start; i < verts.size(); ++i) {
      if (!cur.empty()) {
        int last = cur.back();
        int a0 = last / (n + 1), b0 = last % (n + 1);
        auto [a1, b1] = verts[i];
        if (!(a1 >= a0 && b1 >= b0 && (a1 > a0 || b1 > b0))) continue;
      }
      cur.push_back(vid(verts[i].first, verts[i].second));
      rec(i + 1, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(0, cur);
  return FinComplex::from_simplices(vcount, std::move(simps));
}

namespace {

// Z^1 of C*(X;L) for abelian L: basis + coordinate solver
struct Z1Space {
  CochainPtr C;
  std::vector<Element> basis;
  std::shared_ptr<SubspaceCoords> coords;
};

Z1Space z1_of(const FinComplex& X, std::shared_ptr<const Linfty> L) {
  Z1Space out;
  out.C = abelian_cochain_structure(X, L);
  const Space& W = out.C->alg.space();
  BracketOps Q = out.C->alg.ops();
  std::vector<int> deg0;
  for (int id = 0; id < W.dim(); ++id)
    if (W.degree(id) == 0) deg0.push_back(id);
  Mat A(W.dim(), static_cast<int>(deg0.size()));
  for (size_t j = 0; j < deg0.size(); ++j) {
    Element v = Q.d(Element::unit(deg0[j]));
    for (const auto& [outid, c] : v.terms()) A.at(outid, static_cast<int>(j)) = c;
  }
  std::vector<std::vector<Rat>> dense;
  for (const auto& kvec : kernel_basis(A)) {
    Element z;
    for (size_t j = 0; j < deg0.size(); ++j) z.add_term(deg0[j], kvec[j]);
    out.basis.push_back(z);
    std::vector<Rat> row(W.dim(), Rat(0));
    for (const auto& [id, c] : z.terms()) row[id] = c;
    dense.push_back(std::move(row));
  }
  if (!dense.empty())
    out.coords = std::make_shared<SubspaceCoords>(dense, W.dim());
  return out;
}

// (Tot Del(L.))_m for abelian semicosimplicial L.: compatible tuples of
// 1-cocycles on the products Delta_m x Delta_n
struct TotDelLevel {
  std::vector<Z1Space> z1;            // per n
  std::vector<FinComplex> prods;      // Delta_m x Delta_n
  std::vector<std::vector<Rat>> basis;  // coords in the concatenated Z1 bases
  std::vector<int> z1_offsets;
};

TotDelLevel totdel_level(const SemiCosimplicial& L, int m) {
  TotDelLevel lvl;
  int nmax = L.nmax();
  int total = 0;
  for (int n = 0; n <= nmax; ++n) {
    FinComplex P = product_complex(m, n);
    lvl.prods.push_back(P);
    lvl.z1.push_back(z1_of(P, L.levels[n]));
    lvl.z1_offsets.push_back(total);
    total += static_cast<int>(lvl.z1.back().basis.size());
  }
  // compatibility rows: for n = 1..nmax, j = 0..n:
  //   (push d^j)(beta_{n-1}) = (id x delta_j)^* (beta_n)
  std::vector<std::vector<Rat>> rows;
  for (int n = 1; n <= nmax; ++n) {
    // target: cochains on Delta_m x Delta_{n-1} with L_n coefficients
    CochainPtr target = abelian_cochain_structure(lvl.prods[n - 1], L.levels[n]);
    for (int j = 0; j <= n; ++j) {
      Morphism pushj =
          cochain_pushforward(*lvl.z1[n - 1].C, *target, L.cofaces[n - 1][j]);
      // vertex map id x delta_j : [m]x[n-1] -> [m]x[n]
      std::vector<int> vmap;
      for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= n - 1; ++b)
          vmap.push_back(a * (n + 1) + (b < j ? b : b + 1));
      Morphism pull = cochain_pullback(*lvl.z1[n].C, *target, vmap);
      // rows over the target basis; columns = concatenated Z1 coords
      std::map<int, std::vector<Rat>> row_acc;
      auto add = [&](int target_id, int col, const Rat& c) {
        auto& r = row_acc[target_id];
        if (r.empty()) r.assign(total, Rat(0));
        r[col] += c;
      };
      for (size_t bi = 0; bi < lvl.z1[n - 1].basis.size(); ++bi) {
        Element img = pushj.linear(lvl.z1[n - 1].basis[bi]);
        for (const auto& [id, c] : img.terms())
          add(id, lvl.z1_offsets[n - 1] + static_cast<int>(bi), c);
      }
      for (size_t bi = 0; bi < lvl.z1[n].basis.size(); ++bi) {
        Element img = pull.linear(lvl.z1[n].basis[bi]);
        for (const auto& [id, c] : img.terms())
          add(id, lvl.z1_offsets[n] + static_cast<int>(bi), -c);
      }
      for (auto& [id, r] : row_acc) rows.push_back(std::move(r));
    }
  }
  Mat A(static_cast<int>(rows.size()), total);
  A.a = std::move(rows);
  if (A.rows == 0) {
    // no constraints: the full space
    for (int j = 0; j < total; ++j) {
      std::vector<Rat> e(total, Rat(0));
      e[j] = 1;
      lvl.basis.push_back(std::move(e));
    }
  } else {
    lvl.basis = kernel_basis(A);
  }
  return lvl;
}

// matrix of a simplicial operator theta^*: (TotDel)_m -> (TotDel)_m' level-wise
Mat totdel_map(const SemiCosimplicial& L, const TotDelLevel& from,
               const TotDelLevel& to, int m_from, int m_to,
               const std::vector<int>& theta) {
  int nmax = L.nmax();
  // per n: pullback along theta x id
  int total_to = 0;
  for (const auto& z : to.z1) total_to += static_cast<int>(z.basis.size());
  std::vector<std::vector<Rat>> cols;
  for (const auto& bvec : from.basis) {
    std::vector<Rat> out(total_to, Rat(0));
    for (int n = 0; n <= nmax; ++n) {
      // element of Z1(from, n)
      Element x;
      for (size_t bi = 0; bi < from.z1[n].basis.size(); ++bi) {
        Rat c = bvec[from.z1_offsets[n] + bi];
        if (c == 0) continue;
        Element t = from.z1[n].basis[bi];
        t *= c;
        x += t;
      }
      if (x.is_zero()) continue;
      std::vector<int> vmap;
      for (int a = 0; a <= m_to; ++a)
        for (int b = 0; b <= n; ++b)
          vmap.push_back(theta[a] * (n + 1) + b);
      Morphism pull = cochain_pullback(*from.z1[n].C, *to.z1[n].C, vmap);
      Element img = pull.linear(x);
      if (img.is_zero()) continue;
      if (!to.z1[n].coords) throw error("descent: image leaves Z^1");
      std::vector<Rat> dense(to.z1[n].C->alg.space().dim(), Rat(0));
      for (const auto& [id, c] : img.terms()) dense[id] = c;
      auto coords = to.z1[n].coords->coords(dense);
      if (!coords) throw error("descent: image leaves Z^1");
      for (size_t r = 0; r < coords->size(); ++r)
        out[to.z1_offsets[n] + r] += (*coords)[r];
    }
    cols.push_back(std::move(out));
  }
  Mat A(total_to, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int r = 0; r < total_to; ++r) A.at(r, static_cast<int>(j)) = cols[j][r];
  return A;
}

}  // namespace

DescentReport abelian_descent_check(const SemiCosimplicial& L, int D) {
  DescentReport rep;
  for (const auto& lvl : L.levels)
    if (!lvl->is_abelian()) {
      rep.ok = false;
      rep.detail = "a level is not abelian";
      return rep;
    }
  TotResult T = tot(L);
  std::vector<int> all_ids(T.sub.alg.space().dim());
  for (int i = 0; i < T.sub.alg.space().dim(); ++i) all_ids[i] = i;
  for (int i = 0; i <= D; ++i)
    rep.dims_tot.push_back(cohomology_dim(T.sub.alg, all_ids, -i));

  // Moore complex of m -> (Tot Del)_m, m <= D+1
  std::vector<TotDelLevel> lvls;
  for (int m = 0; m <= D + 1; ++m) lvls.push_back(totdel_level(L, m));

  // face maps d_j: level m -> m-1 given by delta_j: [m-1] -> [m]
  auto face = [&](int m, int j) {
    std::vector<int> theta;
    for (int a = 0; a <= m - 1; ++a) theta.push_back(a < j ? a : a + 1);
    // basis-coords matrix of the pullback, from level m to level m-1
    // columns indexed by lvls[m].basis
    return totdel_map(L, lvls[m], lvls[m - 1], m, m - 1, theta);
  };

  // Moore: N_m = kernel of stacked d_j (j >= 1) in the level-m basis coords
  std::vector<std::vector<std::vector<Rat>>> moore;
  for (int m = 0; m <= D + 1; ++m) {
    int dim = static_cast<int>(lvls[m].basis.size());
    if (m == 0) {
      std::vector<std::vector<Rat>> full;
      for (int jj = 0; jj < dim; ++jj) {
        std::vector<Rat> e(dim, Rat(0));
        e[jj] = 1;
        full.push_back(std::move(e));
      }
      moore.push_back(std::move(full));
      continue;
    }
    std::vector<std::vector<Rat>> rows;
    for (int j = 1; j <= m; ++j) {
      Mat dj = face(m, j);
      for (int r = 0; r < dj.rows; ++r) rows.push_back(dj.a[r]);
    }
    Mat stacked(static_cast<int>(rows.size()), dim);
    stacked.a = std::move(rows);
    moore.push_back(kernel_basis(stacked));
  }
  auto boundary_rank = [&](int m) {
    if (moore[m].empty()) return 0;
    Mat d0 = face(m, 0);
    Mat B(d0.rows, static_cast<int>(moore[m].size()));
    for (size_t col = 0; col < moore[m].size(); ++col)
      for (int r = 0; r < d0.rows; ++r) {
        Rat v(0);
        for (int s = 0; s < d0.cols; ++s) v += d0.a[r][s] * moore[m][col][s];
        B.at(r, static_cast<int>(col)) = v;
      }
    return rank(B);
  };
  for (int i = 0; i <= D; ++i) {
    int dimNi = static_cast<int>(moore[i].size());
    int r_out = (i == 0) ? 0 : boundary_rank(i);
    int r_in = boundary_rank(i + 1);
    rep.dims_moore.push_back(dimNi - r_out - r_in);
  }
  for (int i = 0; i <= D; ++i)
    if (rep.dims_tot[i] != rep.dims_moore[i]) {
      rep.ok = false;
      rep.detail = "mismatch at i = " + std::to_string(i);
    }
  return rep;
}

}  // namespace linfty
