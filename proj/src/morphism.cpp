#include "linfty/morphism.hpp"

namespace linfty {

Morphism Morphism::from_tables(SpacePtr src, SpacePtr dst,
                               std::vector<MultiMap> tables) {
  for (size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].arity() != static_cast<int>(i) + 1)
      throw error("Morphism::from_tables: table arities must be 1,2,...");
    if (tables[i].degree() != 0)
      throw error("Morphism::from_tables: coefficients must have degree 0");
  }
  Morphism m;
  m.src_ = std::move(src);
  m.dst_ = std::move(dst);
  m.arity_max_ = static_cast<int>(tables.size());
  bool strict = true;
  for (size_t i = 1; i < tables.size(); ++i)
    if (!tables[i].is_zero()) strict = false;
  m.strict_ = strict;
  auto shared = std::make_shared<std::vector<MultiMap>>(std::move(tables));
  m.f_ = [shared](int i, const MultiIndex& mi) {
    if (i < 1 || i > static_cast<int>(shared->size())) return Element();
    return (*shared)[i - 1].at(mi);
  };
  return m;
}

Morphism Morphism::strict(SpacePtr src, SpacePtr dst, MultiMap f1) {
  if (f1.arity() != 1 || f1.degree() != 0)
    throw error("Morphism::strict: f1 must be an arity-1 degree-0 map");
  std::vector<MultiMap> t;
  t.push_back(std::move(f1));
  return from_tables(std::move(src), std::move(dst), std::move(t));
}

Morphism Morphism::identity(SpacePtr sp) {
  MultiMap f1(sp, sp, 1, 0);
  for (int id = 0; id < sp->dim(); ++id) f1.set({id}, Element::unit(id));
  return strict(sp, sp, std::move(f1));
}

Morphism Morphism::procedural(SpacePtr src, SpacePtr dst, int arity_max,
                              std::function<Element(int, const MultiIndex&)> f) {
  Morphism m;
  m.src_ = std::move(src);
  m.dst_ = std::move(dst);
  m.arity_max_ = arity_max;
  m.strict_ = false;
  m.f_ = std::move(f);
  return m;
}

Element Morphism::coeff(int i, const MultiIndex& m) const {
  if (i < 1 || i > arity_max_) return Element();
  return f_(i, m);
}

Element Morphism::eval(int i, std::span<const Element> args) const {
  if (i > arity_max_) return Element();
  return eval_multilinear(*src_, i, args,
                          [&](const MultiIndex& m) { return coeff(i, m); });
}

Element Morphism::linear(const Element& x) const {
  Element out;
  for (const auto& [id, c] : x.terms()) {
    Element v = coeff(1, {id});
    v *= c;
    out += v;
  }
  return out;
}

Element Morphism::push(const Element& x) const {
  if (!is_homogeneous(*src_, x, 0))
    throw error("pushforward: element is not homogeneous of shifted degree 0");
  Element out;
  std::vector<Element> args;
  for (int i = 1; i <= arity_max_; ++i) {
    args.assign(i, x);
    Element t = eval(i, args);
    t *= 1 / factorial(i);
    out += t;
  }
  return out;
}

SymElement morphism_component(const Morphism& F, int k, const MultiIndex& m) {
  int n = static_cast<int>(m.size());
  SymElement out;
  if (k < 1 || k > n) return out;
  const Space& sp = *F.source();
  std::vector<int> degrees(n);
  for (int s = 0; s < n; ++s) degrees[s] = sp.degree(m[s]);
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
        Element v = F.coeff(parts[b], block);
        if (v.is_zero()) dead = true;
        blocks.push_back(std::move(v));
      }
      if (dead) continue;
      SymElement prod = sym_product(*F.target(), blocks);
      prod *= Rat(eps);
      out += prod;
    }
  }
  out *= 1 / factorial(k);
  return out;
}

SymElement morphism_apply(const Morphism& F, const MultiIndex& m) {
  SymElement out;
  for (int k = 1; k <= static_cast<int>(m.size()); ++k)
    out += morphism_component(F, k, m);
  return out;
}

SymElement morphism_apply(const Morphism& F, const SymElement& s) {
  SymElement out;
  for (const auto& [m, c] : s.terms()) {
    SymElement t = morphism_apply(F, m);
    t *= c;
    out += t;
  }
  return out;
}

Morphism compose(const Morphism& F, const Morphism& G) {
  if (G.target() != F.source())
    throw error("compose: target(G) and source(F) are different spaces");
  SpacePtr src = G.source();
  SpacePtr dst = F.target();
  int N = src->nilpotency();
  int amax = N - 1;
  std::vector<MultiMap> tables;
  for (int n = 1; n <= amax; ++n) {
    MultiMap t(src, dst, n, 0);
    for (const MultiIndex& m : symmetric_basis(*src, n, N)) {
      Element val;
      for (int k = 1; k <= n; ++k) {
        SymElement comp = morphism_component(G, k, m);
        for (const auto& [mi, c] : comp.terms()) {
          Element v = F.coeff(k, mi);
          v *= c;
          val += v;
        }
      }
      if (!val.is_zero()) t.set(m, std::move(val));
    }
    tables.push_back(std::move(t));
  }
  while (!tables.empty() && tables.back().is_zero()) tables.pop_back();
  if (tables.empty()) tables.emplace_back(src, dst, 1, 0);
  return Morphism::from_tables(src, dst, std::move(tables));
}

Element morphism_residual(const Morphism& F, const BracketOps& R,
                          const BracketOps& Q, const MultiIndex& m) {
  int n = static_cast<int>(m.size());
  Element out;
  // (F.R)_1 at arity n: sum_k f_k ( R^k_n )
  for (int k = 1; k <= n; ++k) {
    SymElement comp = coderivation_component(R, k, m);
    for (const auto& [mi, c] : comp.terms()) {
      Element v = F.coeff(k, mi);
      v *= c;
      out += v;
    }
  }
  // minus (Q.F)_1 at arity n: sum_k q_k ( F^k_n )
  for (int k = 1; k <= n; ++k) {
    SymElement comp = morphism_component(F, k, m);
    for (const auto& [mi, c] : comp.terms()) {
      Element v = Q.on_basis(k, mi);
      v *= c;
      out -= v;
    }
  }
  return out;
}

CheckReport check_morphism_on(const Morphism& F, const BracketOps& R,
                              const BracketOps& Q,
                              const std::vector<MultiIndex>& domain) {
  CheckReport rep;
  for (const MultiIndex& m : domain) {
    Element res = morphism_residual(F, R, Q, m);
    if (!res.is_zero()) {
      rep.fail("F.R != Q.F on " + multiindex_str(*F.source(), m) + " -> " +
                   element_str(*F.target(), res),
               static_cast<int>(m.size()), m);
    }
  }
  return rep;
}

CheckReport check_morphism(const Morphism& F, const BracketOps& R,
                           const BracketOps& Q) {
  CheckReport rep;
  int N = F.source()->nilpotency();
  for (int n = 1; n < N; ++n) {
    CheckReport sub =
        check_morphism_on(F, R, Q, symmetric_basis(*F.source(), n, N));
    if (!sub.ok) {
      rep.ok = false;
      rep.failures.push_back(sub.failures.front());
    }
  }
  return rep;
}

}  // namespace linfty
