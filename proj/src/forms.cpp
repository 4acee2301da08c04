#include "linfty/forms.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace linfty {

PolyForm PolyForm::constant(int n, const Rat& c) {
  PolyForm f(n);
  f.add_term(std::vector<int>(n, 0), {}, c);
  return f;
}

PolyForm PolyForm::bary_t(int i, int n) {
  PolyForm f(n);
  std::vector<int> e(n, 0);
  if (i == 0) {
    f.add_term(e, {}, Rat(1));
    for (int j = 1; j <= n; ++j) {
      e.assign(n, 0);
      e[j - 1] = 1;
      f.add_term(e, {}, Rat(-1));
    }
  } else {
    e[i - 1] = 1;
    f.add_term(e, {}, Rat(1));
  }
  return f;
}

PolyForm PolyForm::bary_dt(int i, int n) {
  PolyForm f(n);
  std::vector<int> e(n, 0);
  if (i == 0) {
    for (int j = 1; j <= n; ++j) f.add_term(e, {j}, Rat(-1));
  } else {
    f.add_term(e, {i}, Rat(1));
  }
  return f;
}

void PolyForm::add_term(const std::vector<int>& expo,
                        const std::vector<int>& wedge, const Rat& c) {
  if (c == 0) return;
  if (static_cast<int>(expo.size()) != n_)
    throw error("PolyForm::add_term: exponent arity mismatch");
  for (size_t i = 0; i + 1 < wedge.size(); ++i)
    if (wedge[i] >= wedge[i + 1]) throw error("PolyForm::add_term: wedge not sorted");
  if (!wedge.empty() && (wedge.front() < 1 || wedge.back() > n_))
    throw error("PolyForm::add_term: wedge index out of range");
  Key k{expo, wedge};
  auto [it, fresh] = terms_.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && n_ == 0) n_ = o.n_;
  if (n_ != o.n_) throw error("PolyForm: simplex dimension mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) { return *this += -o; }

PolyForm& PolyForm::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

PolyForm PolyForm::operator-() const {
  PolyForm f(*this);
  for (auto& [k, v] : f.terms_) v = -v;
  return f;
}

int PolyForm::top_degree() const {
  int d = -1;
  for (const auto& [k, v] : terms_)
    d = std::max(d, static_cast<int>(k.second.size()));
  return d;
}

int PolyForm::poly_degree() const {
  int d = -1;
  for (const auto& [k, v] : terms_) {
    int e = 0;
    for (int x : k.first) e += x;
    d = std::max(d, e);
  }
  return d;
}

PolyForm PolyForm::degree_part(int k) const {
  PolyForm f(n_);
  for (const auto& [key, v] : terms_)
    if (static_cast<int>(key.second.size()) == k)
      f.add_term(key.first, key.second, v);
  return f;
}

std::string PolyForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << rat_str(v);
    for (int i = 0; i < n_; ++i)
      if (k.first[i] > 0) {
        out << "*t" << i + 1;
        if (k.first[i] > 1) out << "^" << k.first[i];
      }
    for (int w : k.second) out << "*dt" << w;
  }
  return out.str();
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
  if (a.simplex_dim() != b.simplex_dim())
    throw error("wedge: simplex dimension mismatch");
  int n = a.simplex_dim();
  PolyForm out(n);
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      // merge wedge subsets; sign counts transpositions of dt's
      const auto& wa = ka.second;
      const auto& wb = kb.second;
      bool dead = false;
      int inversions = 0;
      for (int x : wa)
        for (int y : wb) {
          if (x == y) dead = true;
          if (y < x) ++inversions;
        }
      if (dead) continue;
      std::vector<int> w;
      w.reserve(wa.size() + wb.size());
      std::merge(wa.begin(), wa.end(), wb.begin(), wb.end(),
                 std::back_inserter(w));
      std::vector<int> e(n);
      for (int i = 0; i < n; ++i) e[i] = ka.first[i] + kb.first[i];
      Rat c = ca * cb;
      if (inversions & 1) c = -c;
      out.add_term(e, w, c);
    }
  }
  return out;
}

PolyForm derham_d(const PolyForm& a) {
  int n = a.simplex_dim();
  PolyForm out(n);
  for (const auto& [k, c] : a.terms()) {
    for (int i = 1; i <= n; ++i) {
      int e = k.first[i - 1];
      if (e == 0) continue;
      if (std::binary_search(k.second.begin(), k.second.end(), i)) continue;
      // insert dt_i in front, then move into sorted position
      int before = 0;
      for (int w : k.second)
        if (w < i) ++before;
      std::vector<int> expo = k.first;
      expo[i - 1] -= 1;
      std::vector<int> wed = k.second;
      wed.insert(std::upper_bound(wed.begin(), wed.end(), i), i);
      Rat coeff = c * e;
      if (before & 1) coeff = -coeff;
      out.add_term(expo, wed, coeff);
    }
  }
  return out;
}

PolyForm whitney(const std::vector<int>& sigma, int n) {
  for (size_t i = 0; i + 1 < sigma.size(); ++i)
    if (sigma[i] >= sigma[i + 1]) throw error("whitney: vertices not sorted");
  if (sigma.empty() || sigma.front() < 0 || sigma.back() > n)
    throw error("whitney: face is not contained in the simplex");
  int k = static_cast<int>(sigma.size()) - 1;
  PolyForm out(n);
  for (int j = 0; j <= k; ++j) {
    PolyForm term = PolyForm::bary_t(sigma[j], n);
    for (int l = 0; l <= k; ++l) {
      if (l == j) continue;
      term = wedge(term, PolyForm::bary_dt(sigma[l], n));
    }
    if (j & 1) term *= Rat(-1);
    out += term;
  }
  out *= factorial(k);
  return out;
}

PolyForm pullback_affine(const PolyForm& a, int m,
                         const std::vector<PolyForm>& images) {
  int n = a.simplex_dim();
  if (static_cast<int>(images.size()) != n)
    throw error("pullback_affine: wrong number of coordinate images");
  std::vector<PolyForm> dimages;
  dimages.reserve(n);
  for (const auto& im : images) dimages.push_back(derham_d(im));
  PolyForm out(m);
  for (const auto& [k, c] : a.terms()) {
    PolyForm term = PolyForm::constant(m, c);
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < k.first[i]; ++e) term = wedge(term, images[i]);
    for (int w : k.second) term = wedge(term, dimages[w - 1]);
    out += term;
  }
  return out;
}

PolyForm pullback_ordinal(const PolyForm& a, const std::vector<int>& theta,
                          int n) {
  int m = static_cast<int>(theta.size()) - 1;
  for (size_t j = 0; j + 1 < theta.size(); ++j)
    if (theta[j] > theta[j + 1]) throw error("pullback_ordinal: map not monotone");
  if (theta.empty() || theta.front() < 0 || theta.back() > n)
    throw error("pullback_ordinal: map out of range");
  std::vector<PolyForm> images;
  images.reserve(n);
  for (int i = 1; i <= n; ++i) {
    PolyForm im(m);
    for (int j = 0; j <= m; ++j)
      if (theta[j] == i) im += PolyForm::bary_t(j, m);
    images.push_back(std::move(im));
  }
  return pullback_affine(a, m, images);
}

namespace {

// radial homotopy toward vertex 0, exact on monomials
PolyForm homotopy_h0(const PolyForm& a) {
  int n = a.simplex_dim();
  PolyForm out(n);
  for (const auto& [key, c] : a.terms()) {
    int k = static_cast<int>(key.second.size());
    if (k == 0) continue;
    int etot = 0;
    for (int e : key.first) etot += e;
    Rat base = c / Rat(etot + k);
    for (int j = 0; j < k; ++j) {
      int s = key.second[j];
      std::vector<int> expo = key.first;
      expo[s - 1] += 1;
      std::vector<int> wed;
      wed.reserve(k - 1);
      for (int l = 0; l < k; ++l)
        if (l != j) wed.push_back(key.second[l]);
      Rat coeff = base;
      if (j & 1) coeff = -coeff;
      out.add_term(expo, wed, coeff);
    }
  }
  return out;
}

// affine involution exchanging the barycentric vertices 0 and i
PolyForm swap_vertex(const PolyForm& a, int i) {
  int n = a.simplex_dim();
  std::vector<PolyForm> images;
  images.reserve(n);
  for (int j = 1; j <= n; ++j) {
    if (j == i)
      images.push_back(PolyForm::bary_t(0, n));
    else
      images.push_back(PolyForm::bary_t(j, n));
  }
  return pullback_affine(a, n, images);
}

}  // namespace

PolyForm vertex_homotopy(const PolyForm& a, int i) {
  if (i < 0 || i > a.simplex_dim()) throw error("vertex_homotopy: bad vertex");
  if (i == 0) return homotopy_h0(a);
  return swap_vertex(homotopy_h0(swap_vertex(a, i)), i);
}

Rat eval_at_vertex(const PolyForm& a, int i) {
  // vertex i has t_i = 1, others 0
  Rat v(0);
  for (const auto& [key, c] : a.terms()) {
    if (!key.second.empty()) continue;
    bool ok = true;
    for (int j = 1; j <= a.simplex_dim() && ok; ++j) {
      int e = key.first[j - 1];
      if (j != i && e > 0) ok = false;
    }
    if (ok) v += c;
  }
  return v;
}

std::vector<std::vector<int>> faces_of_simplex(int n) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= n + 1; ++size) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
      }
      for (int v = start; v <= n; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

Rat integrate_face(const PolyForm& a, const std::vector<int>& sigma) {
  int n = a.simplex_dim();
  for (size_t i = 0; i + 1 < sigma.size(); ++i)
    if (sigma[i] >= sigma[i + 1]) throw error("integrate_face: face not sorted");
  if (sigma.empty() || sigma.front() < 0 || sigma.back() > n)
    throw error("integrate_face: face is not contained in the simplex");
  int k = static_cast<int>(sigma.size()) - 1;
  PolyForm pulled = pullback_ordinal(a, sigma, n);
  Rat total(0);
  std::vector<int> full(k);
  for (int i = 0; i < k; ++i) full[i] = i + 1;
  for (const auto& [key, c] : pulled.terms()) {
    if (key.second != full) continue;
    int etot = 0;
    Rat numer(1);
    for (int e : key.first) {
      etot += e;
      numer *= factorial(e);
    }
    total += c * numer / factorial(k + etot);
  }
  return total;
}

PolyForm whitney_extension(const SCochain& c, int n) {
  PolyForm out(n);
  for (const auto& [sigma, v] : c) {
    PolyForm w = whitney(sigma, n);
    w *= v;
    out += w;
  }
  return out;
}

SCochain integration_cochain(const PolyForm& a, int n) {
  SCochain out;
  for (const auto& sigma : faces_of_simplex(n)) {
    Rat v = integrate_face(a, sigma);
    if (v != 0) out[sigma] = v;
  }
  return out;
}

PolyForm dupont_s(const PolyForm& a) {
  // s_n = - sum_{k=0}^{n-1} (-1)^k sum_{i_0<...<i_k} omega_{i_0..i_k} ^ h^{i_k}...h^{i_0}
  // satisfies s d + d s = EI - id and the side conditions s E = I s = s^2 = 0
  // (verified exhaustively on monomial bases in the tests).
  int n = a.simplex_dim();
  PolyForm out(n);
  for (const auto& sigma : faces_of_simplex(n)) {
    if (static_cast<int>(sigma.size()) > n) continue;  // k <= n-1
    PolyForm h = a;
    for (int v : sigma) h = vertex_homotopy(h, v);
    if (h.is_zero()) continue;
    PolyForm t = wedge(whitney(sigma, n), h);
    if ((sigma.size() - 1) & 1) t *= Rat(-1);
    out += t;
  }
  out *= Rat(-1);
  return out;
}

}  // namespace linfty
