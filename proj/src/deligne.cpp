#include "linfty/deligne.hpp"

#include <algorithm>

namespace linfty {

Element h_i_cochain(const CochainAlgebra& C, int i, const Element& alpha) {
  if (i < 0 || i >= C.X.n_vertices) throw error("h_i: vertex out of range");
  Element out;
  for (const auto& [cid, c] : alpha.terms()) {
    auto [si, lid] = C.decode(cid);
    const std::vector<int>& sigma = C.X.simplices[si];
    if (sigma.size() < 2) continue;
    auto pos = std::lower_bound(sigma.begin(), sigma.end(), i);
    if (pos == sigma.end() || *pos != i) continue;
    int j = static_cast<int>(pos - sigma.begin());
    std::vector<int> tau;
    tau.reserve(sigma.size() - 1);
    for (int v : sigma)
      if (v != i) tau.push_back(v);
    out.add_term(C.id(tau, lid), (j & 1) ? -c : c);
  }
  return out;
}

Contraction vertex_contraction(const CochainAlgebra& C, int i) {
  Contraction ctr;
  ctr.big = C.alg.space_ptr();
  ctr.small = C.L->space_ptr();
  int dimL = C.L->space().dim();
  const CochainAlgebra* Cp = &C;  // cochain algebras are owned by shared_ptrs upstream

  std::vector<int> vertex_ids;
  for (int v = 0; v < C.X.n_vertices; ++v)
    vertex_ids.push_back(C.X.index_of({v}));
  ctr.f1 = [vertex_ids, dimL](int lid) {
    Element out;
    for (int si : vertex_ids) out.add_term(si * dimL + lid, Rat(1));
    return out;
  };
  int vi = C.X.index_of({i});
  ctr.g1 = [vi, dimL](int cid) {
    if (cid / dimL == vi) return Element::unit(cid % dimL);
    return Element();
  };
  // the displayed h^i satisfies h d + d h = id - pi* e_i*; the section 1.2
  // convention needs the opposite homotopy
  ctr.K = [Cp, i](int cid) {
    return -h_i_cochain(*Cp, i, Element::unit(cid));
  };
  BracketOps Q = C.alg.ops();
  ctr.dV = [Q](int cid) { return Q.on_basis(1, {cid}); };
  BracketOps R = C.L->ops();
  ctr.dW = [R](int lid) { return R.on_basis(1, {lid}); };
  return ctr;
}

StarData rho_i(const DeligneSimplex& s, int i) {
  const CochainAlgebra& C = *s.C;
  StarData star;
  star.n = s.n;
  star.vertex = i;
  for (const auto& [cid, c] : s.alpha.terms()) {
    auto [si, lid] = C.decode(cid);
    const std::vector<int>& sigma = C.X.simplices[si];
    if (!std::binary_search(sigma.begin(), sigma.end(), i)) continue;
    if (sigma.size() == 1)
      star.x.add_term(lid, c);
    else
      star.values[sigma].add_term(lid, c);
  }
  return star;
}

DeligneSimplex simplex_from_star(CochainPtr C, const StarData& star) {
  const CochainAlgebra& CA = *C;
  const Space& Lsp = CA.L->space();
  if (!CA.L->ops().is_mc(star.x))
    throw error("simplex_from_star: the vertex value is not Maurer-Cartan");
  // embed the star values; validate their degrees
  Element v;
  for (const auto& [sigma, val] : star.values) {
    if (!std::binary_search(sigma.begin(), sigma.end(), star.vertex))
      throw error("simplex_from_star: star value on a simplex missing the vertex");
    int k = static_cast<int>(sigma.size()) - 1;
    if (!is_homogeneous(Lsp, val, -k))
      throw error("simplex_from_star: star value of wrong degree on a " +
                  std::to_string(k) + "-simplex");
    for (const auto& [lid, c] : val.terms())
      v.add_term(CA.id(sigma, lid), c);
  }
  Contraction ctr = vertex_contraction(CA, star.vertex);
  Element kv = ctr.apply_K(v);
  Transfer session(ctr, CA.alg.ops());
  Element alpha = session.kuranishi_solve(star.x, kv, v);
  return DeligneSimplex{CA.X.dim(), C, alpha};
}

DeligneSimplex face_of(const DeligneSimplex& s, int omitted_vertex) {
  if (s.n == 0) throw error("face_of: a vertex has no faces");
  CochainPtr Cface = cochain_structure_cached(s.n - 1, s.C->L);
  std::vector<int> vmap;
  for (int v = 0; v <= s.n - 1; ++v)
    vmap.push_back(v < omitted_vertex ? v : v + 1);
  Morphism pb = cochain_pullback(*s.C, *Cface, vmap);
  return DeligneSimplex{s.n - 1, Cface, pb.linear(s.alpha)};
}

Element restrict_cochain(const CochainAlgebra& C, const CochainAlgebra& H,
                         const Element& alpha) {
  Element out;
  for (const auto& [cid, c] : alpha.terms()) {
    auto [si, lid] = C.decode(cid);
    const std::vector<int>& sigma = C.X.simplices[si];
    if (!H.X.contains(sigma)) continue;
    out.add_term(H.id(sigma, lid), c);
  }
  return out;
}

DeligneSimplex higher_bch(CochainPtr C, const StarData& star) {
  DeligneSimplex s = simplex_from_star(C, star);
  return face_of(s, star.vertex);
}

Element bch(std::shared_ptr<const Linfty> L, const Element& a,
            const Element& b) {
  const Space& sp = L->space();
  for (int id = 0; id < sp.dim(); ++id)
    if (sp.degree(id) != -1)
      throw error("bch: the algebra is not concentrated in shifted degree -1");
  if (!is_homogeneous(sp, a, -1) || !is_homogeneous(sp, b, -1))
    throw error("bch: arguments must have shifted degree -1");
  CochainPtr C = cochain_structure_cached(2, L);
  // the engine's filler composes edges as log(exp(alpha_12) exp(alpha_01));
  // assigning a to 12 and b to 01 realizes bch(a,b) = log(exp(a) exp(b))
  StarData star;
  star.n = 2;
  star.vertex = 1;
  if (!b.is_zero()) star.values[{0, 1}] = b;
  if (!a.is_zero()) star.values[{1, 2}] = a;
  DeligneSimplex s = simplex_from_star(C, star);
  Element out;
  int edge02 = C->X.index_of({0, 2});
  for (const auto& [cid, c] : s.alpha.terms()) {
    auto [si, lid] = C->decode(cid);
    if (si == edge02) out.add_term(lid, c);
  }
  return out;
}

Element gauge(std::shared_ptr<const Linfty> L, const Element& x,
              const Element& a) {
  const Space& sp = L->space();
  if (!is_homogeneous(sp, a, -1))
    throw error("gauge: the gauge parameter must have shifted degree -1");
  CochainPtr C = cochain_structure_cached(1, L);
  StarData star;
  star.n = 1;
  star.vertex = 1;
  star.x = x;
  if (!a.is_zero()) star.values[{0, 1}] = a;
  DeligneSimplex s = simplex_from_star(C, star);
  Element out;
  int v0 = C->X.index_of({0});
  for (const auto& [cid, c] : s.alpha.terms()) {
    auto [si, lid] = C->decode(cid);
    if (si == v0) out.add_term(lid, c);
  }
  return out;
}

HornData make_horn_data(int n, int k, std::shared_ptr<const Linfty> L,
                        const std::map<std::vector<int>, Element>& values) {
  HornData h;
  h.n = n;
  h.k = k;
  h.H = subcomplex_structure(FinComplex::horn(n, k), L);
  for (const auto& [sigma, val] : values) {
    if (!h.H->X.contains(sigma))
      throw error("make_horn_data: simplex is not in the horn");
    for (const auto& [lid, c] : val.terms())
      h.alpha.add_term(h.H->id(sigma, lid), c);
  }
  if (!h.H->alg.ops().is_mc(h.alpha))
    throw error("make_horn_data: horn data is not Maurer-Cartan on the horn");
  return h;
}

DeligneSimplex horn_fill(CochainPtr C, const HornData& horn) {
  const CochainAlgebra& CA = *C;
  if (CA.X.dim() != horn.n) throw error("horn_fill: dimension mismatch");
  StarData star;
  star.n = horn.n;
  star.vertex = horn.k;
  for (const auto& [cid, c] : horn.alpha.terms()) {
    auto [si, lid] = horn.H->decode(cid);
    const std::vector<int>& sigma = horn.H->X.simplices[si];
    if (!std::binary_search(sigma.begin(), sigma.end(), horn.k)) continue;
    if (sigma.size() == 1)
      star.x.add_term(lid, c);
    else
      star.values[sigma].add_term(lid, c);
  }
  // the top star simplex is not in the horn; its value is the free choice 0
  DeligneSimplex filled = simplex_from_star(C, star);
  Element back = restrict_cochain(CA, *horn.H, filled.alpha);
  if (back != horn.alpha)
    throw error("horn_fill: inconsistent horn data (filler does not restrict to it)");
  return filled;
}

std::optional<Element> abelian_lift_horn(const CochainAlgebra& CL,
                                         const CochainAlgebra& CM,
                                         const CochainAlgebra& HL,
                                         const Morphism& p,
                                         const Element& horn_alpha,
                                         const Element& base_alpha) {
  if (!CL.L->is_abelian() || !CM.L->is_abelian())
    throw error("abelian_lift_horn: coefficients must be abelian");
  const Space& W = CL.alg.space();
  std::vector<int> unknowns;
  for (int id = 0; id < W.dim(); ++id)
    if (W.degree(id) == 0) unknowns.push_back(id);
  Morphism push = cochain_pushforward(CL, CM, p);
  BracketOps Q = CL.alg.ops();

  // rows: restriction-to-horn ids, pushforward ids, curvature (d alpha) ids
  std::map<std::tuple<int, int>, int> rows;  // (block, id) -> row
  auto row_of = [&rows](int block, int id) {
    auto key = std::make_tuple(block, id);
    auto it = rows.find(key);
    if (it == rows.end()) it = rows.emplace(key, static_cast<int>(rows.size())).first;
    return it->second;
  };
  std::vector<std::map<int, Rat>> cols(unknowns.size());
  for (size_t j = 0; j < unknowns.size(); ++j) {
    Element e = Element::unit(unknowns[j]);
    Element r = restrict_cochain(CL, HL, e);
    for (const auto& [id, c] : r.terms()) cols[j][row_of(0, id)] = c;
    Element pp = push.linear(e);
    for (const auto& [id, c] : pp.terms()) cols[j][row_of(1, id)] = c;
    Element dd = Q.d(e);
    for (const auto& [id, c] : dd.terms()) cols[j][row_of(2, id)] = c;
  }
  std::map<int, Rat> rhs;
  for (const auto& [id, c] : horn_alpha.terms()) rhs[row_of(0, id)] = c;
  for (const auto& [id, c] : base_alpha.terms()) rhs[row_of(1, id)] = c;
  Mat A(static_cast<int>(rows.size()), static_cast<int>(unknowns.size()));
  for (size_t j = 0; j < unknowns.size(); ++j)
    for (const auto& [r, c] : cols[j]) A.at(r, static_cast<int>(j)) = c;
  std::vector<Rat> b(rows.size(), Rat(0));
  for (const auto& [r, c] : rhs) b[r] = c;
  auto sol = solve(A, b);
  if (!sol) return std::nullopt;
  Element alpha;
  for (size_t j = 0; j < unknowns.size(); ++j)
    alpha.add_term(unknowns[j], (*sol)[j]);
  return alpha;
}

namespace {

// basis of Z^1(C*(Delta_m;L)) for abelian L, plus the coordinate solver
struct Z1Level {
  CochainPtr C;
  std::vector<Element> basis;
  std::shared_ptr<SubspaceCoords> coords;
};

Z1Level z1_level(std::shared_ptr<const Linfty> L, int m) {
  Z1Level lvl;
  lvl.C = abelian_cochain_structure(FinComplex::full_simplex(m), L);
  const Space& W = lvl.C->alg.space();
  BracketOps Q = lvl.C->alg.ops();
  std::vector<int> deg0;
  for (int id = 0; id < W.dim(); ++id)
    if (W.degree(id) == 0) deg0.push_back(id);
  Mat A(W.dim(), static_cast<int>(deg0.size()));
  for (size_t j = 0; j < deg0.size(); ++j) {
    Element v = Q.d(Element::unit(deg0[j]));
    for (const auto& [out, c] : v.terms()) A.at(out, static_cast<int>(j)) = c;
  }
  std::vector<std::vector<Rat>> dense;
  for (const auto& k : kernel_basis(A)) {
    Element z;
    for (size_t j = 0; j < deg0.size(); ++j) z.add_term(deg0[j], k[j]);
    lvl.basis.push_back(z);
    std::vector<Rat> row(W.dim(), Rat(0));
    for (const auto& [id, c] : z.terms()) row[id] = c;
    dense.push_back(std::move(row));
  }
  if (!dense.empty())
    lvl.coords = std::make_shared<SubspaceCoords>(dense, W.dim());
  return lvl;
}

// matrix of the face map d_j: Z1(m) -> Z1(m-1) in the chosen bases
Mat face_matrix(const Z1Level& from, const Z1Level& to, int j, int m) {
  std::vector<int> vmap;
  for (int v = 0; v <= m - 1; ++v) vmap.push_back(v < j ? v : v + 1);
  Morphism pb = cochain_pullback(*from.C, *to.C, vmap);
  Mat A(static_cast<int>(to.basis.size()), static_cast<int>(from.basis.size()));
  for (size_t col = 0; col < from.basis.size(); ++col) {
    Element img = pb.linear(from.basis[col]);
    if (!to.coords) {
      if (!img.is_zero())
        throw error("abelian_homotopy_groups: face image leaves Z^1");
      continue;
    }
    std::vector<Rat> dense(to.C->alg.space().dim(), Rat(0));
    for (const auto& [id, c] : img.terms()) dense[id] = c;
    auto coords = to.coords->coords(dense);
    if (!coords) throw error("abelian_homotopy_groups: face image leaves Z^1");
    for (size_t r = 0; r < coords->size(); ++r) A.at(static_cast<int>(r), static_cast<int>(col)) = (*coords)[r];
  }
  return A;
}

}  // namespace

AbelianHomotopy abelian_homotopy_groups(std::shared_ptr<const Linfty> L, int i) {
  if (!L->is_abelian())
    throw error("abelian_homotopy_groups: the algebra is not abelian");
  if (i < 0) throw error("abelian_homotopy_groups: negative index");
  AbelianHomotopy out;
  std::vector<int> all_ids(L->space().dim());
  for (int id = 0; id < L->space().dim(); ++id) all_ids[id] = id;
  out.dim_direct = cohomology_dim(*L, all_ids, -i);

  // Moore complex of m -> Z^1(C*(Delta_m;L)) at levels <= i+1
  std::vector<Z1Level> lvls;
  for (int m = 0; m <= i + 1; ++m) lvls.push_back(z1_level(L, m));

  // N_m = intersection of ker d_j (j = 1..m), with boundary d_0
  std::vector<std::vector<std::vector<Rat>>> moore;  // m -> basis (coords in Z1(m))
  for (int m = 0; m <= i + 1; ++m) {
    int dimZ = static_cast<int>(lvls[m].basis.size());
    if (m == 0) {
      std::vector<std::vector<Rat>> full;
      for (int j = 0; j < dimZ; ++j) {
        std::vector<Rat> e(dimZ, Rat(0));
        e[j] = 1;
        full.push_back(std::move(e));
      }
      moore.push_back(std::move(full));
      continue;
    }
    Mat stacked(0, dimZ);
    std::vector<std::vector<Rat>> rows;
    for (int j = 1; j <= m; ++j) {
      Mat dj = face_matrix(lvls[m], lvls[m - 1], j, m);
      for (int r = 0; r < dj.rows; ++r) rows.push_back(dj.a[r]);
    }
    stacked.rows = static_cast<int>(rows.size());
    stacked.a = std::move(rows);
    moore.push_back(kernel_basis(stacked));
  }

  // boundary d_0 between Moore levels, in Z^1 coordinates
  auto boundary = [&](int m) {
    // matrix of d_0 restricted to N_m, expressed in the Z1(m-1) basis
    Mat d0 = face_matrix(lvls[m], lvls[m - 1], 0, m);
    const auto& Nm = moore[m];
    Mat B(d0.rows, static_cast<int>(Nm.size()));
    for (size_t col = 0; col < Nm.size(); ++col)
      for (int r = 0; r < d0.rows; ++r) {
        Rat v(0);
        for (int s = 0; s < d0.cols; ++s) v += d0.a[r][s] * Nm[col][s];
        B.at(r, static_cast<int>(col)) = v;
      }
    return B;
  };

  if (i == 0) {
    int dimN0 = static_cast<int>(moore[0].size());
    int r1 = moore[1].empty() ? 0 : rank(boundary(1));
    out.dim_moore = dimN0 - r1;
    return out;
  }
  // ker(d_0: N_i -> N_{i-1}) mod im(d_0: N_{i+1} -> N_i): ranks suffice
  int dimNi = static_cast<int>(moore[i].size());
  int rank_out = dimNi == 0 ? 0 : rank(boundary(i));
  int rank_in = moore[i + 1].empty() ? 0 : rank(boundary(i + 1));
  out.dim_moore = dimNi - rank_out - rank_in;
  return out;
}

CentralExtension cochain_extension(const CentralExtension& E, int n) {
  CentralExtension out;
  CochainPtr CL = cochain_structure_cached(n, E.total);
  CochainPtr CM = cochain_structure_cached(n, E.base);
  out.total = std::shared_ptr<const Linfty>(CL, &CL->alg);
  out.base = std::shared_ptr<const Linfty>(CM, &CM->alg);
  out.projection = cochain_pushforward(*CL, *CM, E.projection);
  for (int si = 0; si < CL->X.count(); ++si)
    for (int kid : E.kernel_ids) out.kernel_ids.push_back(CL->id(si, kid));
  std::sort(out.kernel_ids.begin(), out.kernel_ids.end());
  return out;
}

DeligneSimplex principal_action(const CentralExtension& E,
                                const DeligneSimplex& beta, const Element& z) {
  CentralExtension En = cochain_extension(E, beta.n);
  if (!En.in_kernel(z))
    throw error("principal_action: z is not kernel-valued");
  if (!is_homogeneous(*En.total->space_ptr(), z, 0) ||
      !En.total->ops().d(z).is_zero())
    throw error("principal_action: z is not a kernel 1-cocycle");
  Element moved = beta.alpha + z;
  if (!En.total->ops().is_mc(moved))
    throw error("principal_action: the action left the Maurer-Cartan set");
  if (En.projection.linear(moved) != En.projection.linear(beta.alpha))
    throw error("principal_action: the projection changed");
  return DeligneSimplex{beta.n, beta.C, moved};
}

Element getzler_form_element(const DeligneSimplex& s) {
  if (!s.C->session)
    throw error("getzler_form_element: the simplex was not built along Dupont");
  Morphism F = s.C->session->inclusion_morphism();
  return F.push(s.alpha);
}

}  // namespace linfty
