#include "linfty/contraction.hpp"

namespace linfty {

namespace {

Element extend(const std::function<Element(int)>& f, const Element& x) {
  Element out;
  for (const auto& [id, c] : x.terms()) {
    Element v = f(id);
    v *= c;
    out += v;
  }
  return out;
}

}  // namespace

Element Contraction::apply_f1(const Element& x) const { return extend(f1, x); }
Element Contraction::apply_g1(const Element& x) const { return extend(g1, x); }
Element Contraction::apply_K(const Element& x) const { return extend(K, x); }
Element Contraction::apply_dV(const Element& x) const { return extend(dV, x); }
Element Contraction::apply_dW(const Element& x) const { return extend(dW, x); }

Contraction identity_contraction(const Linfty& L) {
  Contraction C;
  C.big = L.space_ptr();
  C.small = L.space_ptr();
  BracketOps Q = L.ops();
  C.f1 = [](int id) { return Element::unit(id); };
  C.g1 = [](int id) { return Element::unit(id); };
  C.K = [](int) { return Element(); };
  C.dV = [Q](int id) { return Q.on_basis(1, {id}); };
  C.dW = C.dV;
  return C;
}

CheckReport check_contraction(const Contraction& C,
                              const std::vector<int>& big_ids) {
  CheckReport rep;
  const Space& W = *C.small;
  const Space& V = *C.big;
  for (int w = 0; w < W.dim(); ++w) {
    Element fw = C.f1(w);
    if (!is_homogeneous(V, fw, W.degree(w)))
      rep.fail("f1 not of degree 0 on " + W.name(w));
    if (element_weight(V, fw) < W.weight(w))
      rep.fail("f1 not weight-preserving on " + W.name(w));
    if (C.apply_g1(fw) != Element::unit(w))
      rep.fail("g1 f1 != id on " + W.name(w));
    if (!C.apply_K(fw).is_zero()) rep.fail("K f1 != 0 on " + W.name(w));
    Element lhs = C.apply_dV(fw);
    Element rhs = C.apply_f1(C.dW(w));
    if (lhs != rhs) rep.fail("f1 is not a chain map on " + W.name(w));
  }
  for (int v : big_ids) {
    Element ev = Element::unit(v);
    Element Kv = C.K(v);
    if (!Kv.is_zero() && !is_homogeneous(V, Kv, V.degree(v) - 1))
      rep.fail("K not of degree -1 on " + V.name(v));
    if (element_weight(V, Kv) < V.weight(v))
      rep.fail("K not weight-preserving on " + V.name(v));
    Element homotopy = C.apply_dV(Kv) + C.apply_K(C.dV(v));
    Element target = C.apply_f1(C.g1(v)) - ev;
    if (homotopy != target)
      rep.fail("K dV + dV K != f1 g1 - id on " + V.name(v));
    if (!C.apply_K(Kv).is_zero()) rep.fail("K^2 != 0 on " + V.name(v));
    if (!C.apply_g1(Kv).is_zero()) rep.fail("g1 K != 0 on " + V.name(v));
    Element g_chain = C.apply_dW(C.g1(v)) - C.apply_g1(C.dV(v));
    if (!g_chain.is_zero()) rep.fail("g1 is not a chain map on " + V.name(v));
    Element gv = C.g1(v);
    if (element_weight(W, gv) < V.weight(v))
      rep.fail("g1 not weight-preserving on " + V.name(v));
  }
  return rep;
}

CheckReport check_contraction(const Contraction& C) {
  std::vector<int> ids(C.big->dim());
  for (int i = 0; i < C.big->dim(); ++i) ids[i] = i;
  return check_contraction(C, ids);
}

Element ContractionMorphism::apply(const Element& x) const {
  return extend(phi, x);
}

Element ContractionMorphism::small_map(const Element& w) const {
  return to->apply_g1(apply(from->apply_f1(w)));
}

CheckReport check_contraction_morphism(const ContractionMorphism& m,
                                       const std::vector<int>& big_ids) {
  CheckReport rep;
  const Space& V = *m.from->big;
  for (int v : big_ids) {
    Element pv = m.phi(v);
    if (!pv.is_zero() && !is_homogeneous(*m.to->big, pv, V.degree(v)))
      rep.fail("phi not of degree 0 on " + V.name(v));
    if (element_weight(*m.to->big, pv) < V.weight(v))
      rep.fail("phi not weight-preserving on " + V.name(v));
    Element chain = m.to->apply_dV(pv) - m.apply(m.from->dV(v));
    if (!chain.is_zero()) rep.fail("phi is not a chain map on " + V.name(v));
    Element inter = m.to->apply_K(pv) - m.apply(m.from->K(v));
    if (!inter.is_zero()) rep.fail("K' phi != phi K on " + V.name(v));
  }
  return rep;
}

Transfer::Transfer(const Contraction& C, BracketOps Q)
    : C_(&C), Q_(std::move(Q)) {
  if (Q_.space != C_->big)
    throw error("Transfer: ambient structure is not over the contraction's big space");
  if (C_->big->nilpotency() != C_->small->nilpotency())
    throw error("Transfer: big and small nilpotency bounds differ");
  amax_ = C_->big->nilpotency() - 1;
  // the contraction's differential must be the ambient q_1
  for (int v = 0; v < C_->big->dim(); ++v) {
    if (C_->dV(v) != Q_.on_basis(1, {v}))
      throw error("Transfer: q_1 of the ambient structure differs from dV on " +
                  C_->big->name(v));
  }
}

SymElement Transfer::F_component(int k, const MultiIndex& m) {
  auto key = std::make_pair(k, m);
  auto it = F_cache_.find(key);
  if (it != F_cache_.end()) return it->second;
  int n = static_cast<int>(m.size());
  SymElement out;
  if (k >= 1 && k <= n) {
    const Space& W = *C_->small;
    std::vector<int> degrees(n);
    for (int s = 0; s < n; ++s) degrees[s] = W.degree(m[s]);
    for (const auto& parts : compositions(n, k)) {
      for (const Perm& p : multi_unshuffles(parts)) {
        int eps = koszul_sign(degrees, p);
        std::vector<Element> blocks;
        blocks.reserve(k);
        int pos = 0;
        bool dead = false;
        for (int b = 0; b < k && !dead; ++b) {
          MultiIndex block(parts[b]);
          for (int s = 0; s < parts[b]; ++s) block[s] = m[p[pos + s]];
          pos += parts[b];
          Element v = f(parts[b], block);
          if (v.is_zero()) dead = true;
          blocks.push_back(std::move(v));
        }
        if (dead) continue;
        SymElement prod = sym_product(*C_->big, blocks);
        prod *= Rat(eps);
        out += prod;
      }
    }
    out *= 1 / factorial(k);
  }
  F_cache_.emplace(key, out);
  return out;
}

Element Transfer::f(int i, const MultiIndex& m) {
  if (i == 1) return C_->f1(m[0]);
  if (i > amax_) return Element();
  auto key = std::make_pair(i, m);
  auto it = f_cache_.find(key);
  if (it != f_cache_.end()) return it->second;
  if (multiindex_weight(*C_->small, m) >= C_->small->nilpotency()) {
    f_cache_.emplace(key, Element());
    return Element();
  }
  Element out;
  for (int k = 2; k <= i; ++k) {
    SymElement Fk = F_component(k, m);
    Element qk = Q_.eval_sym(Fk.corestrict(k));
    out += C_->apply_K(qk);
  }
  f_cache_.emplace(key, out);
  return out;
}

Element Transfer::r(int i, const MultiIndex& m) {
  if (i == 1) return C_->dW(m[0]);
  if (i > amax_) return Element();
  auto key = std::make_pair(i, m);
  auto it = r_cache_.find(key);
  if (it != r_cache_.end()) return it->second;
  if (multiindex_weight(*C_->small, m) >= C_->small->nilpotency()) {
    r_cache_.emplace(key, Element());
    return Element();
  }
  Element out;
  for (int k = 2; k <= i; ++k) {
    SymElement Fk = F_component(k, m);
    Element qk = Q_.eval_sym(Fk.corestrict(k));
    out += C_->apply_g1(qk);
  }
  r_cache_.emplace(key, out);
  return out;
}

SymElement Transfer::k_sigma(const MultiIndex& m) {
  const Space& V = *C_->big;
  int i = static_cast<int>(m.size());
  std::vector<int> degrees(i);
  for (int s = 0; s < i; ++s) degrees[s] = V.degree(m[s]);
  SymElement out;
  for (const Perm& p : all_permutations(i)) {
    int eps = koszul_sign(degrees, p);
    for (int j = 0; j < i; ++j) {
      // f1 g1 on slots < j, K on slot j, identity on the rest; K is odd and
      // passes the first j slots
      int pass = 0;
      for (int s = 0; s < j; ++s) pass += degrees[p[s]];
      int sign = (pass & 1) ? -eps : eps;
      std::vector<Element> factors;
      factors.reserve(i);
      bool dead = false;
      for (int s = 0; s < i && !dead; ++s) {
        Element v;
        if (s < j)
          v = C_->apply_f1(C_->g1(m[p[s]]));
        else if (s == j)
          v = C_->K(m[p[s]]);
        else
          v = Element::unit(m[p[s]]);
        if (v.is_zero()) dead = true;
        factors.push_back(std::move(v));
      }
      if (dead) continue;
      SymElement prod = sym_product(V, factors);
      prod *= Rat(sign);
      out += prod;
    }
  }
  out *= 1 / factorial(i);
  return out;
}

Element Transfer::g(int i, const MultiIndex& m) {
  if (i == 1) return C_->g1(m[0]);
  if (i > amax_) return Element();
  auto key = std::make_pair(i, m);
  auto it = g_cache_.find(key);
  if (it != g_cache_.end()) return it->second;
  if (multiindex_weight(*C_->big, m) >= C_->big->nilpotency()) {
    g_cache_.emplace(key, Element());
    return Element();
  }
  Element out;
  SymElement ks = k_sigma(m);
  for (int k = 1; k <= i - 1; ++k) {
    // Q^k_i applied to each term of K^Sigma, then g_k
    for (const auto& [mi, c] : ks.terms()) {
      SymElement comp = coderivation_component(Q_, k, mi);
      for (const auto& [mk, ck] : comp.terms()) {
        Element v = g(k, mk);
        v *= c * ck;
        out += v;
      }
    }
  }
  g_cache_.emplace(key, out);
  return out;
}

Linfty Transfer::transferred() {
  SpacePtr W = C_->small;
  int N = W->nilpotency();
  Linfty R(W);
  for (int i = 1; i <= amax_; ++i) {
    MultiMap t(W, W, i, 1);
    for (const MultiIndex& m : symmetric_basis(*W, i, N)) {
      Element v = r(i, m);
      if (!v.is_zero()) t.set(m, std::move(v));
    }
    if (!t.is_zero()) R.set_q(i, std::move(t));
  }
  return R;
}

Morphism Transfer::inclusion_morphism() {
  SpacePtr W = C_->small;
  int N = W->nilpotency();
  std::vector<MultiMap> tables;
  for (int i = 1; i <= amax_; ++i) {
    MultiMap t(W, C_->big, i, 0);
    for (const MultiIndex& m : symmetric_basis(*W, i, N)) {
      Element v = f(i, m);
      if (!v.is_zero()) t.set(m, std::move(v));
    }
    tables.push_back(std::move(t));
  }
  return Morphism::from_tables(W, C_->big, std::move(tables));
}

Morphism Transfer::projection_morphism() {
  return Morphism::procedural(
      C_->big, C_->small, amax_,
      [this](int i, const MultiIndex& m) { return g(i, m); });
}

Element Transfer::g_eval_power(int i, const Element& x) {
  std::vector<Element> args(i, x);
  return eval_multilinear(*C_->big, i, args,
                          [this, i](const MultiIndex& m) { return g(i, m); });
}

Element Transfer::pushforward_G(const Element& x) {
  if (!is_homogeneous(*C_->big, x, 0))
    throw error("pushforward_G: element is not of shifted degree 0");
  Element out = C_->apply_g1(x);
  for (int i = 2; i <= amax_; ++i) {
    Element t = g_eval_power(i, x);
    t *= 1 / factorial(i);
    out += t;
  }
  return out;
}

Element Transfer::small_curvature(const Element& y) {
  if (!is_homogeneous(*C_->small, y, 0))
    throw error("small_curvature: element is not of shifted degree 0");
  Element out;
  for (int i = 1; i <= amax_; ++i) {
    std::vector<Element> args(i, y);
    Element t = eval_multilinear(
        *C_->small, i, args,
        [this, i](const MultiIndex& m) { return r(i, m); });
    t *= 1 / factorial(i);
    out += t;
  }
  return out;
}

std::pair<Element, Element> Transfer::kuranishi_forward(const Element& x) {
  if (!Q_.is_mc(x)) throw error("kuranishi_forward: x is not Maurer-Cartan");
  return {pushforward_G(x), C_->apply_K(x)};
}

Element Transfer::kuranishi_solve(const Element& y, const Element& kv,
                                  const Element& v_preimage, bool verify) {
  if (C_->apply_K(v_preimage) != kv)
    throw error("kuranishi_solve: kv is not K of the supplied preimage");
  if (!small_curvature(y).is_zero())
    throw error("kuranishi_solve: y is not Maurer-Cartan in the transferred structure");
  Element constant = C_->apply_f1(y) - C_->apply_dV(kv);
  Element x;  // x_0 = 0
  int N = C_->big->nilpotency();
  for (int step = 0; step <= N + 1; ++step) {
    Element next = constant;
    for (int i = 2; i <= amax_; ++i) {
      std::vector<Element> args(i, x);
      Element qi = Q_.eval(i, args);
      Element term = C_->apply_K(qi) - C_->apply_f1(g_eval_power(i, x));
      term *= 1 / factorial(i);
      next += term;
    }
    if (next == x) {
      if (verify) {
        if (!Q_.is_mc(x)) throw error("kuranishi_solve: fixed point is not MC");
        if (C_->apply_K(x) != kv)
          throw error("kuranishi_solve: fixed point has wrong K-component");
        if (pushforward_G(x) != y)
          throw error("kuranishi_solve: fixed point has wrong G-pushforward");
      }
      return x;
    }
    x = std::move(next);
  }
  throw error("kuranishi_solve: iteration failed to stabilize within the nilpotency bound");
}

}  // namespace linfty
