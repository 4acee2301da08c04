#include "linfty/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace linfty {

Element BracketOps::eval(int i, std::span<const Element> args) const {
  if (i > arity_max) return Element();
  return eval_multilinear(*space, i, args,
                          [&](const MultiIndex& m) { return q(i, m); });
}

Element BracketOps::eval_sym(const SymElement& s) const {
  Element out;
  for (const auto& [m, c] : s.terms()) {
    Element v = on_basis(static_cast<int>(m.size()), m);
    v *= c;
    out += v;
  }
  return out;
}

Element BracketOps::d(const Element& x) const {
  Element out;
  for (const auto& [id, c] : x.terms()) {
    Element v = on_basis(1, {id});
    v *= c;
    out += v;
  }
  return out;
}

Element BracketOps::curvature(const Element& x) const {
  if (!is_homogeneous(*space, x, 0))
    throw error("curvature: element is not homogeneous of shifted degree 0");
  Element out;
  std::vector<Element> args;
  for (int i = 1; i <= arity_max; ++i) {
    args.assign(i, x);
    Element t = eval(i, args);
    t *= 1 / factorial(i);
    out += t;
  }
  return out;
}

bool BracketOps::is_mc(const Element& x) const { return curvature(x).is_zero(); }

SymElement coderivation_component(const BracketOps& Q, int k,
                                  const MultiIndex& m) {
  int n = static_cast<int>(m.size());
  int j = n - k + 1;  // arity of the applied coefficient
  SymElement out;
  if (j < 1 || j > n) return out;
  std::vector<int> degrees(n);
  for (int s = 0; s < n; ++s) degrees[s] = Q.space->degree(m[s]);
  for (const Perm& p : unshuffles(j, n - j)) {
    int eps = koszul_sign(degrees, p);
    MultiIndex block(j);
    for (int s = 0; s < j; ++s) block[s] = m[p[s]];
    Element head = Q.on_basis(j, block);
    if (head.is_zero()) continue;
    std::vector<Element> factors;
    factors.reserve(n - j + 1);
    factors.push_back(head);
    for (int s = j; s < n; ++s) factors.push_back(Element::unit(m[p[s]]));
    SymElement prod = sym_product(*Q.space, factors);
    prod *= Rat(eps);
    out += prod;
  }
  return out;
}

SymElement coderivation_apply(const BracketOps& Q, const MultiIndex& m) {
  SymElement out;
  int n = static_cast<int>(m.size());
  for (int k = 1; k <= n; ++k) out += coderivation_component(Q, k, m);
  return out;
}

SymElement coderivation_apply(const BracketOps& Q, const SymElement& s) {
  SymElement out;
  for (const auto& [m, c] : s.terms()) {
    SymElement t = coderivation_apply(Q, m);
    t *= c;
    out += t;
  }
  return out;
}

void CheckReport::fail(std::string what, int arity, MultiIndex at) {
  ok = false;
  failures.push_back({std::move(what), arity, std::move(at)});
}

std::string CheckReport::summary() const {
  if (ok) return "ok";
  std::ostringstream out;
  out << failures.size() << " failure(s); first: " << failures.front().what;
  if (failures.front().arity) out << " [arity " << failures.front().arity << "]";
  return out.str();
}

Linfty::Linfty(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw error("Linfty: null space");
}

void Linfty::set_q(int arity, MultiMap m) {
  if (m.arity() != arity) throw error("set_q: arity mismatch");
  if (m.degree() != 1) throw error("set_q: Taylor coefficients must have degree +1");
  if (m.source() != space_ || m.target() != space_)
    throw error("set_q: table is not over the algebra's space");
  if (arity > arity_max() && !m.is_zero())
    throw error("set_q: arity exceeds the weight-forced bound");
  if (static_cast<int>(q_.size()) < arity)
    q_.resize(arity, MultiMap(space_, space_, 1, 1));
  // keep placeholder arities consistent
  for (int i = 1; i <= arity; ++i)
    if (q_[i - 1].arity() != i) q_[i - 1] = MultiMap(space_, space_, i, 1);
  q_[arity - 1] = std::move(m);
}

void Linfty::add_q_term(int arity, const std::vector<int>& tuple, int out_id,
                        const Rat& c) {
  if (static_cast<int>(q_.size()) < arity) {
    int old = static_cast<int>(q_.size());
    q_.resize(arity, MultiMap(space_, space_, 1, 1));
    for (int i = old + 1; i <= arity; ++i)
      q_[i - 1] = MultiMap(space_, space_, i, 1);
  }
  q_[arity - 1].add_tuple_term(tuple, out_id, c);
}

Element Linfty::q(int i, const MultiIndex& m) const {
  if (i < 1 || i > static_cast<int>(q_.size())) return Element();
  return q_[i - 1].at(m);
}

const MultiMap* Linfty::q_table(int i) const {
  if (i < 1 || i > static_cast<int>(q_.size())) return nullptr;
  return &q_[i - 1];
}

bool Linfty::is_abelian() const {
  for (size_t i = 1; i < q_.size(); ++i)
    if (!q_[i].is_zero()) return false;
  return true;
}

BracketOps Linfty::ops() const {
  auto tables = std::make_shared<std::vector<MultiMap>>(q_);
  BracketOps ops;
  ops.space = space_;
  ops.arity_max = arity_max();
  ops.q = [tables](int i, const MultiIndex& m) {
    if (i < 1 || i > static_cast<int>(tables->size())) return Element();
    return (*tables)[i - 1].at(m);
  };
  return ops;
}

CheckReport check_linfty_on(const BracketOps& Q,
                            const std::vector<MultiIndex>& domain) {
  CheckReport rep;
  for (const MultiIndex& m : domain) {
    int n = static_cast<int>(m.size());
    Element residual;
    for (int k = 1; k <= n; ++k)
      residual += Q.eval_sym(coderivation_component(Q, k, m));
    if (!residual.is_zero()) {
      rep.fail("Q^2 != 0 on " + multiindex_str(*Q.space, m) + " -> " +
                   element_str(*Q.space, residual),
               n, m);
    }
  }
  return rep;
}

CheckReport check_linfty(const Linfty& L) {
  BracketOps Q = L.ops();
  CheckReport rep;
  int N = L.space().nilpotency();
  for (int n = 1; n < N; ++n) {
    auto dom = symmetric_basis(L.space(), n, N);
    CheckReport sub = check_linfty_on(Q, dom);
    if (!sub.ok) {
      rep.ok = false;
      // report only the first failure per arity
      rep.failures.push_back(sub.failures.front());
    }
  }
  return rep;
}

void Dgla::set_d(int id, Element v) {
  if (!v.is_zero()) diff[id] = std::move(v);
}

void Dgla::set_bracket(int a, int b, Element v) {
  bracket[{a, b}] = v;
  int sign = (space->degree(a) & 1) && (space->degree(b) & 1) ? 1 : -1;
  if (a != b) {
    Element w = v;
    w *= Rat(sign);
    bracket[{b, a}] = std::move(w);
  }
}

Element Dgla::apply_d(const Element& x) const {
  Element out;
  for (const auto& [id, c] : x.terms()) {
    auto it = diff.find(id);
    if (it == diff.end()) continue;
    Element v = it->second;
    v *= c;
    out += v;
  }
  return out;
}

Element Dgla::br(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      auto it = bracket.find({a, b});
      if (it == bracket.end()) continue;
      Element v = it->second;
      v *= ca * cb;
      out += v;
    }
  return out;
}

CheckReport Dgla::validate() const {
  CheckReport rep;
  const Space& sp = *space;
  int dim = sp.dim();
  // degree/weight sanity of the stored maps
  for (const auto& [id, v] : diff) {
    if (!is_homogeneous(sp, v, sp.degree(id) + 1))
      rep.fail("d is not of degree +1 on " + sp.name(id));
    if (element_weight(sp, v) < sp.weight(id))
      rep.fail("d does not preserve weights on " + sp.name(id));
  }
  for (const auto& [ab, v] : bracket) {
    auto [a, b] = ab;
    if (!is_homogeneous(sp, v, sp.degree(a) + sp.degree(b)))
      rep.fail("[,] is not of degree 0 on (" + sp.name(a) + "," + sp.name(b) + ")");
    if (element_weight(sp, v) < sp.weight(a) + sp.weight(b))
      rep.fail("[,] violates weight additivity on (" + sp.name(a) + "," +
               sp.name(b) + ")");
  }
  // d^2 = 0
  for (int a = 0; a < dim; ++a) {
    if (!apply_d(apply_d(Element::unit(a))).is_zero())
      rep.fail("d^2 != 0 on " + sp.name(a));
  }
  // graded antisymmetry [a,b] = -(-1)^{|a||b|}[b,a]
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Element lhs = br(Element::unit(a), Element::unit(b));
      Element rhs = br(Element::unit(b), Element::unit(a));
      int s = (sp.degree(a) & 1) && (sp.degree(b) & 1) ? 1 : -1;
      rhs *= Rat(s);
      if (lhs != rhs)
        rep.fail("graded antisymmetry fails on (" + sp.name(a) + "," +
                 sp.name(b) + ")");
    }
  // Leibniz d[a,b] = [da,b] + (-1)^{|a|}[a,db]
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Element ea = Element::unit(a), eb = Element::unit(b);
      Element lhs = apply_d(br(ea, eb));
      Element rhs = br(apply_d(ea), eb);
      Element t = br(ea, apply_d(eb));
      t *= Rat((sp.degree(a) & 1) ? -1 : 1);
      rhs += t;
      if (lhs != rhs)
        rep.fail("Leibniz fails on (" + sp.name(a) + "," + sp.name(b) + ")");
    }
  // graded Jacobi [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c) {
        Element ea = Element::unit(a), eb = Element::unit(b), ec = Element::unit(c);
        Element lhs = br(ea, br(eb, ec));
        Element rhs = br(br(ea, eb), ec);
        Element t = br(eb, br(ea, ec));
        t *= Rat((sp.degree(a) & 1) && (sp.degree(b) & 1) ? -1 : 1);
        rhs += t;
        if (lhs != rhs) {
          rep.fail("Jacobi fails on (" + sp.name(a) + "," + sp.name(b) + "," +
                   sp.name(c) + ")");
          return rep;
        }
      }
  return rep;
}

Linfty dgla_import(const Dgla& g) {
  CheckReport rep = g.validate();
  if (!rep.ok) throw error("dgla_import: " + rep.summary());
  const Space& sp = *g.space;
  auto shifted = std::make_shared<Space>(sp.label() + "[1]", sp.nilpotency());
  for (int id = 0; id < sp.dim(); ++id) {
    const BasisInfo& b = sp.info(id);
    shifted->add({b.name, b.degree - 1, b.weight});
  }
  Linfty L(shifted);
  for (int id = 0; id < sp.dim(); ++id) {
    Element dv = g.apply_d(Element::unit(id));
    for (const auto& [out, c] : dv.terms()) L.add_q_term(1, {id}, out, -c);
  }
  // q_2(a,b) = (-1)^{|a|} [a,b], unshifted degree in the sign
  for (int a = 0; a < sp.dim(); ++a)
    for (int b = a; b < sp.dim(); ++b) {
      if (a == b && (shifted->degree(a) & 1)) continue;  // a (.) a = 0
      Element v = g.br(Element::unit(a), Element::unit(b));
      if (v.is_zero()) continue;
      Rat c((sp.degree(a) & 1) ? -1 : 1);
      for (const auto& [out, cv] : v.terms())
        L.add_q_term(2, {a, b}, out, c * cv);
    }
  return L;
}

Element dgla_curvature_shifted(const Dgla& g, const Linfty& imported,
                               const Element& x) {
  // oracle route: -(dx + [x,x]/2) computed with the unshifted operations
  (void)imported;
  Element out = g.apply_d(x);
  Element b = g.br(x, x);
  b *= Rat(1, 2);
  out += b;
  return -out;
}

ProductResult product_algebra(const std::vector<const Linfty*>& factors,
                              const std::string& label) {
  int N = 1;
  for (const Linfty* f : factors) N = std::max(N, f->space().nilpotency());
  auto sp = std::make_shared<Space>(label, N);
  ProductResult res;
  res.factor_ids.resize(factors.size());
  for (size_t fi = 0; fi < factors.size(); ++fi) {
    const Space& fsp = factors[fi]->space();
    for (int id = 0; id < fsp.dim(); ++id) {
      const BasisInfo& b = fsp.info(id);
      res.factor_ids[fi].push_back(
          sp->add({"P" + std::to_string(fi) + "." + b.name, b.degree, b.weight}));
    }
  }
  Linfty P(sp);
  for (size_t fi = 0; fi < factors.size(); ++fi) {
    const Linfty& F = *factors[fi];
    for (int i = 1; i <= F.arity_max(); ++i) {
      const MultiMap* t = F.q_table(i);
      if (!t) continue;
      for (const auto& [m, v] : t->table()) {
        MultiIndex pm(m.size());
        for (size_t s = 0; s < m.size(); ++s) pm[s] = res.factor_ids[fi][m[s]];
        for (const auto& [out, c] : v.terms())
          P.add_q_term(i, pm, res.factor_ids[fi][out], c);
      }
    }
  }
  res.alg = std::move(P);
  return res;
}

namespace {

std::vector<Rat> to_dense(const Space& sp, const Element& x) {
  std::vector<Rat> v(sp.dim(), Rat(0));
  for (const auto& [id, c] : x.terms()) v[id] = c;
  return v;
}

}  // namespace

Element Subalgebra::include(const Element& sub) const {
  Element out;
  for (const auto& [id, c] : sub.terms()) {
    Element v = embedding[id];
    v *= c;
    out += v;
  }
  return out;
}

Subalgebra subalgebra_from_vectors(const BracketOps& parent,
                                   std::vector<Element> vectors,
                                   const std::string& label) {
  const Space& psp = *parent.space;
  int N = psp.nilpotency();
  auto sp = std::make_shared<Space>(label, N);
  for (size_t i = 0; i < vectors.size(); ++i) {
    auto deg = element_degree(psp, vectors[i]);
    if (!deg) throw error("subalgebra: spanning vector not homogeneous");
    int w = element_weight(psp, vectors[i]);
    sp->add({"k" + std::to_string(i), *deg, w});
  }
  std::vector<std::vector<Rat>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) rows.push_back(to_dense(psp, v));
  auto coords = std::make_shared<SubspaceCoords>(std::move(rows), psp.dim());
  auto vecs = std::make_shared<std::vector<Element>>(vectors);
  SpacePtr pspace = parent.space;

  auto restrict_fn = [coords, pspace](const Element& x)
      -> std::optional<Element> {
    auto c = coords->coords(to_dense(*pspace, x));
    if (!c) return std::nullopt;
    Element out;
    for (size_t i = 0; i < c->size(); ++i)
      out.add_term(static_cast<int>(i), (*c)[i]);
    return out;
  };

  Linfty S(sp);
  for (int i = 1; i <= parent.arity_max; ++i) {
    MultiMap table(sp, sp, i, 1);
    for (const MultiIndex& m : symmetric_basis(*sp, i, N)) {
      std::vector<Element> args;
      args.reserve(m.size());
      for (int id : m) args.push_back((*vecs)[id]);
      Element val = parent.eval(i, args);
      if (val.is_zero()) continue;
      auto c = restrict_fn(val);
      if (!c)
        throw error("subalgebra: family is not closed under q_" +
                    std::to_string(i));
      table.set(m, *c);
    }
    if (!table.is_zero()) S.set_q(i, std::move(table));
  }
  Subalgebra out;
  out.alg = std::move(S);
  out.embedding = std::move(vectors);
  out.restrict = restrict_fn;
  return out;
}

std::vector<Element> constrained_kernel_adapted(
    const SpacePtr& parent, const std::vector<LinearConstraint>& constraints) {
  const Space& sp = *parent;
  std::set<int> degrees;
  for (int id = 0; id < sp.dim(); ++id) degrees.insert(sp.degree(id));
  std::vector<Element> out;
  std::vector<std::vector<Rat>> chosen_dense;

  for (int d : degrees) {
    std::vector<int> cols;
    for (int id = 0; id < sp.dim(); ++id)
      if (sp.degree(id) == d) cols.push_back(id);
    // evaluate constraints on the columns once
    struct Col {
      int id;
      std::vector<std::pair<std::pair<int, int>, Rat>> rows;  // (constraint, target id) -> c
    };
    std::vector<Col> data;
    std::map<std::pair<int, int>, int> row_index;
    for (int id : cols) {
      Col c{id, {}};
      for (size_t k = 0; k < constraints.size(); ++k) {
        Element v = constraints[k].map(id);
        for (const auto& [tid, cv] : v.terms()) {
          std::pair<int, int> key{static_cast<int>(k), tid};
          if (!row_index.count(key))
            row_index.emplace(key, static_cast<int>(row_index.size()));
          c.rows.push_back({key, cv});
        }
      }
      data.push_back(std::move(c));
    }
    int max_w = sp.nilpotency() - 1;
    std::vector<Element> picked_this_degree;
    std::vector<std::vector<Rat>> picked_dense;
    for (int p = max_w; p >= 1; --p) {
      std::vector<int> sub;  // indices into cols of weight >= p
      for (size_t ci = 0; ci < data.size(); ++ci)
        if (sp.weight(data[ci].id) >= p) sub.push_back(static_cast<int>(ci));
      if (sub.empty()) continue;
      Mat A(static_cast<int>(row_index.size()), static_cast<int>(sub.size()));
      for (size_t j = 0; j < sub.size(); ++j)
        for (const auto& [key, cv] : data[sub[j]].rows)
          A.at(row_index[key], static_cast<int>(j)) += cv;
      for (const auto& kvec : kernel_basis(A)) {
        Element cand;
        for (size_t j = 0; j < sub.size(); ++j)
          cand.add_term(data[sub[j]].id, kvec[j]);
        if (cand.is_zero()) continue;
        // keep if independent of already-picked vectors (this degree)
        std::vector<Rat> dense = to_dense(sp, cand);
        if (!picked_dense.empty()) {
          SubspaceCoords sc(picked_dense, sp.dim());
          if (sc.contains(dense)) continue;
        }
        picked_dense.push_back(dense);
        picked_this_degree.push_back(std::move(cand));
      }
    }
    for (auto& v : picked_this_degree) out.push_back(std::move(v));
  }
  return out;
}

int cohomology_dim(const Linfty& L, const std::vector<int>& ids, int k) {
  const Space& sp = L.space();
  BracketOps Q = L.ops();
  std::vector<int> deg_k, deg_km1;
  for (int id : ids) {
    if (sp.degree(id) == k) deg_k.push_back(id);
    if (sp.degree(id) == k - 1) deg_km1.push_back(id);
  }
  auto d_matrix = [&](const std::vector<int>& dom) {
    std::map<int, int> rows;
    std::vector<std::vector<std::pair<int, Rat>>> colvals;
    for (int id : dom) {
      Element v = Q.d(Element::unit(id));
      std::vector<std::pair<int, Rat>> col;
      for (const auto& [out, c] : v.terms()) {
        if (!rows.count(out)) rows.emplace(out, static_cast<int>(rows.size()));
        col.push_back({rows[out], c});
      }
      colvals.push_back(std::move(col));
    }
    Mat A(static_cast<int>(rows.size()), static_cast<int>(dom.size()));
    for (size_t j = 0; j < colvals.size(); ++j)
      for (const auto& [r, c] : colvals[j]) A.at(r, static_cast<int>(j)) = c;
    return A;
  };
  int rank_out = deg_k.empty() ? 0 : rank(d_matrix(deg_k));
  int rank_in = deg_km1.empty() ? 0 : rank(d_matrix(deg_km1));
  int z = static_cast<int>(deg_k.size()) - rank_out;
  return z - rank_in;
}

}  // namespace linfty
