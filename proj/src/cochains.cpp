#include "linfty/cochains.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace linfty {

FinComplex FinComplex::full_simplex(int n) {
  FinComplex X;
  X.n_vertices = n + 1;
  X.simplices = faces_of_simplex(n);
  for (size_t i = 0; i < X.simplices.size(); ++i)
    X.index.emplace(X.simplices[i], static_cast<int>(i));
  return X;
}

FinComplex FinComplex::boundary(int n) {
  std::vector<std::vector<int>> simps;
  for (const auto& s : faces_of_simplex(n))
    if (static_cast<int>(s.size()) <= n) simps.push_back(s);
  return from_simplices(n + 1, std::move(simps));
}

FinComplex FinComplex::horn(int n, int k) {
  if (k < 0 || k > n) throw error("horn: bad index");
  std::vector<int> missing_face;
  for (int v = 0; v <= n; ++v)
    if (v != k) missing_face.push_back(v);
  std::vector<std::vector<int>> simps;
  for (const auto& s : faces_of_simplex(n)) {
    if (static_cast<int>(s.size()) == n + 1) continue;
    if (s == missing_face) continue;
    simps.push_back(s);
  }
  return from_simplices(n + 1, std::move(simps));
}

FinComplex FinComplex::from_simplices(int n_vertices,
                                      std::vector<std::vector<int>> simps) {
  std::set<std::vector<int>> closed;
  for (auto& s : simps) {
    if (s.empty()) throw error("FinComplex: empty simplex");
    for (size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] >= s[i + 1]) throw error("FinComplex: simplex not sorted");
    if (s.front() < 0 || s.back() >= n_vertices)
      throw error("FinComplex: vertex out of range");
    // close under faces
    int m = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << m); ++mask) {
      std::vector<int> face;
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) face.push_back(s[i]);
      closed.insert(std::move(face));
    }
  }
  FinComplex X;
  X.n_vertices = n_vertices;
  X.simplices.assign(closed.begin(), closed.end());
  std::sort(X.simplices.begin(), X.simplices.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (size_t i = 0; i < X.simplices.size(); ++i)
    X.index.emplace(X.simplices[i], static_cast<int>(i));
  return X;
}

int FinComplex::index_of(const std::vector<int>& s) const {
  auto it = index.find(s);
  if (it == index.end()) throw error("FinComplex: simplex not present");
  return it->second;
}

int FinComplex::dim() const {
  int d = -1;
  for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

namespace {

std::string form_term_name(const PolyForm::Key& key, const std::string& lname) {
  std::ostringstream out;
  out << "t^(";
  for (size_t i = 0; i < key.first.size(); ++i) {
    if (i) out << ",";
    out << key.first[i];
  }
  out << ")dt{";
  for (size_t i = 0; i < key.second.size(); ++i) {
    if (i) out << ",";
    out << key.second[i];
  }
  out << "}|" << lname;
  return out.str();
}

}  // namespace

FormAlgebra::FormAlgebra(int n, std::shared_ptr<const Linfty> L)
    : n_(n), L_(std::move(L)) {
  sp_ = std::make_shared<Space>("Omega(D" + std::to_string(n) + ";" +
                                    L_->space().label() + ")",
                                L_->space().nilpotency());
}

int FormAlgebra::intern(const std::vector<int>& expo,
                        const std::vector<int>& wedge, int lid) {
  std::pair<PolyForm::Key, int> key{{expo, wedge}, lid};
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;
  const Space& lsp = L_->space();
  int degree = static_cast<int>(wedge.size()) + lsp.degree(lid);
  int id = sp_->add({form_term_name(key.first, lsp.name(lid)), degree,
                     lsp.weight(lid)});
  PolyForm f(n_);
  f.add_term(expo, wedge, Rat(1));
  forms_.push_back(std::move(f));
  keys_.push_back(key.first);
  lids_.push_back(lid);
  intern_.emplace(std::move(key), id);
  return id;
}

Element FormAlgebra::tensor(const PolyForm& a, int lid) {
  Element out;
  for (const auto& [key, c] : a.terms())
    out.add_term(intern(key.first, key.second, lid), c);
  return out;
}

Element FormAlgebra::d_basis(int id) {
  // copy: tensor() interns new ids and may reallocate the backing store
  PolyForm form = forms_[id];
  int lid = lids_[id];
  int fdeg = static_cast<int>(keys_[id].second.size());
  Element out = tensor(derham_d(form), lid);
  Element q1 = L_->q(1, {lid});
  if (!q1.is_zero()) {
    Rat sign((fdeg & 1) ? -1 : 1);
    for (const auto& [out_lid, c] : q1.terms()) {
      Element t = tensor(form, out_lid);
      t *= sign * c;
      out += t;
    }
  }
  return out;
}

Element FormAlgebra::K_basis(int id) {
  return tensor(dupont_s(forms_[id]), lids_[id]);
}

Element FormAlgebra::q_basis(int i, const MultiIndex& m) {
  if (i == 1) return d_basis(m[0]);
  const Space& lsp = L_->space();
  // Koszul prefactor: interleaving (each x_j past the later form factors a_l)
  // and the odd operator q_i passing all the form factors
  int sign = 1;
  int total_form_degree = 0;
  for (int id : m) total_form_degree += static_cast<int>(keys_[id].second.size());
  if (total_form_degree & 1) sign = -sign;
  for (size_t j = 0; j + 1 < m.size(); ++j) {
    int xdeg = lsp.degree(lids_[m[j]]);
    if (!(xdeg & 1)) continue;
    int pass = 0;
    for (size_t l = j + 1; l < m.size(); ++l)
      pass += static_cast<int>(keys_[m[l]].second.size());
    if (pass & 1) sign = -sign;
  }
  PolyForm w = forms_[m[0]];
  for (size_t j = 1; j < m.size(); ++j) {
    w = wedge(w, forms_[m[j]]);
    if (w.is_zero()) return Element();
  }
  std::vector<int> lids(m.size());
  for (size_t j = 0; j < m.size(); ++j) lids[j] = lids_[m[j]];
  int lsign = 1;
  if (!sort_with_sign(lsp, lids, lsign)) return Element();
  Element qv = L_->q(i, lids);
  if (qv.is_zero()) return Element();
  Element out;
  for (const auto& [out_lid, c] : qv.terms()) {
    Element t = tensor(w, out_lid);
    t *= Rat(sign * lsign) * c;
    out += t;
  }
  return out;
}

BracketOps FormAlgebra::ops() {
  BracketOps o;
  o.space = sp_;
  o.arity_max = L_->space().nilpotency() - 1;
  o.q = [this](int i, const MultiIndex& m) { return q_basis(i, m); };
  return o;
}

Element FormAlgebra::pullback_basis(FormAlgebra& target,
                                    const std::vector<int>& theta, int id) {
  PolyForm pulled = pullback_ordinal(forms_[id], theta, n_);
  return target.tensor(pulled, lids_[id]);
}

int CochainAlgebra::id(int simplex_index, int lid) const {
  return simplex_index * L->space().dim() + lid;
}

int CochainAlgebra::id(const std::vector<int>& simplex, int lid) const {
  return id(X.index_of(simplex), lid);
}

std::pair<int, int> CochainAlgebra::decode(int cid) const {
  int dl = L->space().dim();
  return {cid / dl, cid % dl};
}

namespace {

std::string simplex_name(const std::vector<int>& s) {
  std::ostringstream out;
  out << "c[";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out << ",";
    out << s[i];
  }
  out << "]";
  return out.str();
}

SpacePtr cochain_space(const FinComplex& X, const Linfty& L,
                       const std::string& label) {
  auto sp = std::make_shared<Space>(label, L.space().nilpotency());
  for (const auto& s : X.simplices) {
    for (int lid = 0; lid < L.space().dim(); ++lid) {
      const BasisInfo& b = L.space().info(lid);
      sp->add({simplex_name(s) + "|" + b.name,
               static_cast<int>(s.size()) - 1 + b.degree, b.weight});
    }
  }
  return sp;
}

}  // namespace

CochainPtr cochain_structure(int n, std::shared_ptr<const Linfty> L,
                             bool force) {
  if (!force && (n > 3 || L->space().dim() > 8)) {
    std::ostringstream msg;
    int dimW = (1 << (n + 1)) - 1;  // simplices of Delta_n
    msg << "cochain_structure budget guard: n = " << n
        << ", dim L = " << L->space().dim()
        << " (defaults: n <= 3, dim L <= 8); cost estimate: ";
    Rat est(0);
    int d = dimW * L->space().dim();
    for (int i = 1; i < L->space().nilpotency(); ++i)
      est += binomial(d + i - 1, i);
    msg << rat_str(est) << " transfer multi-indices. Pass force to override.";
    throw error(msg.str());
  }
  auto C = std::make_shared<CochainAlgebra>();
  C->X = FinComplex::full_simplex(n);
  C->L = L;
  C->forms = std::make_shared<FormAlgebra>(n, L);
  SpacePtr W = cochain_space(C->X, *L,
                             "C*(D" + std::to_string(n) + ";" +
                                 L->space().label() + ")");

  auto FA = C->forms;
  auto XC = C->X;
  int dimL = L->space().dim();

  auto ctr = std::make_shared<Contraction>();
  ctr->big = FA->space();
  ctr->small = W;
  ctr->f1 = [FA, XC, dimL, n](int wid) {
    int simplex = wid / dimL, lid = wid % dimL;
    return FA->tensor(whitney(XC.simplices[simplex], n), lid);
  };
  ctr->g1 = [FA, XC, dimL](int vid) {
    const PolyForm& form = FA->form_of(vid);
    int lid = FA->lid_of(vid);
    int fdeg = static_cast<int>(FA->key_of(vid).second.size());
    Element out;
    for (size_t si = 0; si < XC.simplices.size(); ++si) {
      if (static_cast<int>(XC.simplices[si].size()) - 1 != fdeg) continue;
      Rat v = integrate_face(form, XC.simplices[si]);
      if (v != 0) out.add_term(static_cast<int>(si) * dimL + lid, v);
    }
    return out;
  };
  ctr->K = [FA](int vid) { return FA->K_basis(vid); };
  ctr->dV = [FA](int vid) { return FA->d_basis(vid); };
  // dW = g1 . dV . f1 (a chain map by the side conditions)
  Contraction* raw = ctr.get();
  ctr->dW = [raw](int wid) {
    return raw->apply_g1(raw->apply_dV(raw->f1(wid)));
  };

  C->dupont = ctr;
  C->session = std::make_shared<Transfer>(*ctr, FA->ops());
  C->alg = C->session->transferred();
  return C;
}

namespace {

std::map<std::pair<int, const Linfty*>, CochainPtr>& cochain_cache() {
  static std::map<std::pair<int, const Linfty*>, CochainPtr> cache;
  return cache;
}

}  // namespace

CochainPtr cochain_structure_cached(int n, std::shared_ptr<const Linfty> L) {
  auto key = std::make_pair(n, L.get());
  auto& cache = cochain_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  CochainPtr C = cochain_structure(n, L);
  cache.emplace(key, C);
  return C;
}

CochainPtr subcomplex_structure(const FinComplex& X,
                                std::shared_ptr<const Linfty> L) {
  if (X.dim() >= 0 && X.count() == (1 << (X.dim() + 1)) - 1 &&
      X.n_vertices == X.dim() + 1) {
    // X is a full simplex
    return cochain_structure_cached(X.dim(), L);
  }
  auto C = std::make_shared<CochainAlgebra>();
  C->X = X;
  C->L = L;
  SpacePtr W = cochain_space(X, *L, "C*(X;" + L->space().label() + ")");
  Linfty R(W);
  int dimL = L->space().dim();
  int N = L->space().nilpotency();

  // per-dimension transferred structures on the closures
  std::map<int, CochainPtr> closures;
  for (const auto& tau : X.simplices) {
    int k = static_cast<int>(tau.size()) - 1;
    if (!closures.count(k)) closures[k] = cochain_structure_cached(k, L);
  }

  for (int arity = 1; arity < N; ++arity) {
    MultiMap table(W, W, arity, 1);
    for (const MultiIndex& m : symmetric_basis(*W, arity, N)) {
      Element value;
      // value at tau: computed in the closure of tau
      for (const auto& tau : X.simplices) {
        int k = static_cast<int>(tau.size()) - 1;
        const CochainAlgebra& CT = *closures[k];
        // reindex the multi-index into the closure (all sigma_j must lie in tau)
        MultiIndex mt(m.size());
        bool inside = true;
        for (size_t j = 0; j < m.size() && inside; ++j) {
          int simplex = m[j] / dimL, lid = m[j] % dimL;
          const std::vector<int>& sigma = X.simplices[simplex];
          std::vector<int> re;
          re.reserve(sigma.size());
          for (int v : sigma) {
            auto pos = std::lower_bound(tau.begin(), tau.end(), v);
            if (pos == tau.end() || *pos != v) {
              inside = false;
              break;
            }
            re.push_back(static_cast<int>(pos - tau.begin()));
          }
          if (!inside) break;
          mt[j] = CT.id(re, lid);
        }
        if (!inside) continue;
        std::sort(mt.begin(), mt.end());
        // relabeling preserves the canonical order and all degrees, so no sign
        Element v = CT.alg.q(arity, mt);
        if (v.is_zero()) continue;
        int top = CT.X.count() - 1;  // the top simplex is last in canonical order
        for (const auto& [cid, c] : v.terms()) {
          auto [si, lid] = CT.decode(cid);
          if (si != top) continue;  // only the top-simplex component lands on tau
          value.add_term(C->id(X.index_of(tau), lid), c);
        }
      }
      if (!value.is_zero()) table.set(m, std::move(value));
    }
    if (!table.is_zero()) R.set_q(arity, std::move(table));
  }
  C->alg = std::move(R);
  return C;
}

CochainPtr abelian_cochain_structure(const FinComplex& X,
                                     std::shared_ptr<const Linfty> L) {
  if (!L->is_abelian())
    throw error("abelian_cochain_structure: coefficients are not abelian");
  auto C = std::make_shared<CochainAlgebra>();
  C->X = X;
  C->L = L;
  SpacePtr W = cochain_space(X, *L, "C*ab(X;" + L->space().label() + ")");
  Linfty R(W);
  int dimL = L->space().dim();
  MultiMap q1(W, W, 1, 1);
  for (int si = 0; si < X.count(); ++si) {
    const std::vector<int>& sigma = X.simplices[si];
    for (int lid = 0; lid < dimL; ++lid) {
      Element v;
      // simplicial coboundary: sum over cofaces with the insertion sign
      for (int vert = 0; vert < X.n_vertices; ++vert) {
        if (std::binary_search(sigma.begin(), sigma.end(), vert)) continue;
        std::vector<int> tau = sigma;
        tau.insert(std::upper_bound(tau.begin(), tau.end(), vert), vert);
        if (!X.contains(tau)) continue;
        int pos = static_cast<int>(
            std::lower_bound(tau.begin(), tau.end(), vert) - tau.begin());
        v.add_term(C->id(tau, lid), (pos & 1) ? Rat(-1) : Rat(1));
      }
      Element dq = L->q(1, {lid});
      if (!dq.is_zero()) {
        int k = static_cast<int>(sigma.size()) - 1;
        Rat s((k & 1) ? -1 : 1);
        for (const auto& [out_lid, c] : dq.terms())
          v.add_term(C->id(si, out_lid), s * c);
      }
      if (!v.is_zero()) q1.set({C->id(si, lid)}, std::move(v));
    }
  }
  if (!q1.is_zero()) R.set_q(1, std::move(q1));
  C->alg = std::move(R);
  return C;
}

Morphism cochain_pullback(const CochainAlgebra& Y, const CochainAlgebra& X,
                          const std::vector<int>& vertex_map) {
  if (static_cast<int>(vertex_map.size()) != X.X.n_vertices)
    throw error("cochain_pullback: vertex map arity mismatch");
  int dimL = X.L->space().dim();
  if (X.L.get() != Y.L.get())
    throw error("cochain_pullback: different coefficient algebras");
  MultiMap f1(Y.alg.space_ptr(), X.alg.space_ptr(), 1, 0);
  std::map<int, Element> columns;  // Y basis id -> sum over X simplices
  for (int ti = 0; ti < X.X.count(); ++ti) {
    const std::vector<int>& tau = X.X.simplices[ti];
    std::vector<int> image;
    image.reserve(tau.size());
    bool injective = true;
    for (size_t j = 0; j < tau.size(); ++j) {
      int w = vertex_map[tau[j]];
      if (j > 0) {
        if (w == image.back()) injective = false;
        else if (w < image.back())
          throw error("cochain_pullback: map is not monotone on a simplex");
      }
      image.push_back(w);
    }
    if (!injective) continue;
    if (!Y.X.contains(image))
      throw error("cochain_pullback: image simplex is not in the target complex");
    int si = Y.X.index_of(image);
    for (int lid = 0; lid < dimL; ++lid)
      columns[si * dimL + lid].add_term(ti * dimL + lid, Rat(1));
  }
  for (auto& [yid, v] : columns) f1.set({yid}, std::move(v));
  return Morphism::strict(Y.alg.space_ptr(), X.alg.space_ptr(), std::move(f1));
}

Morphism cochain_pushforward(const CochainAlgebra& src,
                             const CochainAlgebra& dst, const Morphism& phi) {
  if (!phi.is_strict()) throw error("cochain_pushforward: phi must be strict");
  if (src.X.simplices != dst.X.simplices)
    throw error("cochain_pushforward: different complexes");
  if (phi.source() != src.L->space_ptr() || phi.target() != dst.L->space_ptr())
    throw error("cochain_pushforward: phi does not match the coefficients");
  int dimL = src.L->space().dim();
  MultiMap f1(src.alg.space_ptr(), dst.alg.space_ptr(), 1, 0);
  for (int si = 0; si < src.X.count(); ++si) {
    for (int lid = 0; lid < dimL; ++lid) {
      Element img = phi.coeff(1, {lid});
      if (img.is_zero()) continue;
      Element v;
      for (const auto& [out_lid, c] : img.terms())
        v.add_term(dst.id(si, out_lid), c);
      f1.set({src.id(si, lid)}, std::move(v));
    }
  }
  return Morphism::strict(src.alg.space_ptr(), dst.alg.space_ptr(), std::move(f1));
}

std::map<std::vector<int>, Element> mc_restriction_family(
    const CochainAlgebra& C, const Element& alpha) {
  std::map<std::vector<int>, Element> family;
  int dimL = C.L->space().dim();
  for (const auto& tau : C.X.simplices) {
    int k = static_cast<int>(tau.size()) - 1;
    CochainPtr CT = cochain_structure_cached(k, C.L);
    Element restricted;
    for (const auto& [cid, c] : alpha.terms()) {
      auto [si, lid] = C.decode(cid);
      const std::vector<int>& sigma = C.X.simplices[si];
      std::vector<int> re;
      bool inside = true;
      for (int v : sigma) {
        auto pos = std::lower_bound(tau.begin(), tau.end(), v);
        if (pos == tau.end() || *pos != v) {
          inside = false;
          break;
        }
        re.push_back(static_cast<int>(pos - tau.begin()));
      }
      if (!inside) continue;
      restricted.add_term(CT->id(re, lid), c);
    }
    family[tau] = std::move(restricted);
    (void)dimL;
  }
  return family;
}

Element mc_from_family(const CochainAlgebra& C,
                       const std::map<std::vector<int>, Element>& family) {
  Element alpha;
  for (const auto& tau : C.X.simplices) {
    auto it = family.find(tau);
    if (it == family.end()) throw error("mc_from_family: family misses a simplex");
    int k = static_cast<int>(tau.size()) - 1;
    CochainPtr CT = cochain_structure_cached(k, C.L);
    int top = CT->X.count() - 1;
    for (const auto& [cid, c] : it->second.terms()) {
      auto [si, lid] = CT->decode(cid);
      if (si == top) alpha.add_term(C.id(C.X.index_of(tau), lid), c);
    }
  }
  // compatibility: restricting back must reproduce the family
  auto back = mc_restriction_family(C, alpha);
  for (const auto& [tau, v] : family)
    if (back.at(tau) != v)
      throw error("mc_from_family: incompatible restriction family");
  return alpha;
}

}  // namespace linfty
