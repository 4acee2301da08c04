#include "linfty/multilinear.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace linfty {

bool multiindex_valid(const Space& sp, const MultiIndex& m) {
  for (size_t i = 0; i + 1 < m.size(); ++i) {
    if (m[i] > m[i + 1]) return false;
    if (m[i] == m[i + 1] && (sp.degree(m[i]) & 1)) return false;
  }
  return !m.empty();
}

int multiindex_degree(const Space& sp, const MultiIndex& m) {
  int d = 0;
  for (int id : m) d += sp.degree(id);
  return d;
}

int multiindex_weight(const Space& sp, const MultiIndex& m) {
  int w = 0;
  for (int id : m) w += sp.weight(id);
  return w;
}

std::string multiindex_str(const Space& sp, const MultiIndex& m) {
  std::ostringstream out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out << "(.)";
    out << sp.name(m[i]);
  }
  return out.str();
}

static void sym_basis_rec(const Space& sp, int i, int start, int max_weight,
                          int weight_so_far, MultiIndex& cur,
                          std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == i) {
    out.push_back(cur);
    return;
  }
  int remaining = i - static_cast<int>(cur.size());
  for (int id = start; id < sp.dim(); ++id) {
    if (!cur.empty() && id == cur.back() && (sp.degree(id) & 1)) continue;
    int w = weight_so_far + sp.weight(id);
    // every later pick weighs >= 1
    if (max_weight >= 0 && w + (remaining - 1) >= max_weight) continue;
    cur.push_back(id);
    sym_basis_rec(sp, i, id, max_weight, w, cur, out);
    cur.pop_back();
  }
}

std::vector<MultiIndex> symmetric_basis(const Space& sp, int i,
                                        int max_weight) {
  if (i < 1) throw error("symmetric_basis: arity must be >= 1");
  std::vector<MultiIndex> out;
  MultiIndex cur;
  sym_basis_rec(sp, i, 0, max_weight, 0, cur, out);
  return out;
}

void SymElement::add_term(const MultiIndex& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymElement& SymElement::operator+=(const SymElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SymElement& SymElement::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

SymElement SymElement::corestrict(int arity) const {
  SymElement out;
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.size()) == arity) out.add_term(m, c);
  return out;
}

bool sort_with_sign(const Space& sp, std::vector<int>& ids, int& sign) {
  // insertion sort; adjacent swap of odd-degree elements flips the sign
  int n = static_cast<int>(ids.size());
  for (int i = 1; i < n; ++i) {
    for (int j = i; j > 0 && ids[j - 1] > ids[j]; --j) {
      if ((sp.degree(ids[j - 1]) & 1) && (sp.degree(ids[j]) & 1)) sign = -sign;
      std::swap(ids[j - 1], ids[j]);
    }
  }
  for (int i = 0; i + 1 < n; ++i)
    if (ids[i] == ids[i + 1] && (sp.degree(ids[i]) & 1)) return false;
  return true;
}

SymElement sym_product(const Space& sp, std::span<const Element> factors) {
  SymElement out;
  int k = static_cast<int>(factors.size());
  if (k == 0) return out;
  for (const auto& f : factors)
    if (f.is_zero()) return out;
  std::vector<int> pick(k, 0);
  while (true) {
    std::vector<int> ids(k);
    Rat coeff(1);
    for (int j = 0; j < k; ++j) {
      const auto& [id, c] = factors[j].terms()[pick[j]];
      ids[j] = id;
      coeff *= c;
    }
    int sign = 1;
    if (sort_with_sign(sp, ids, sign)) out.add_term(ids, sign * coeff);
    int j = k - 1;
    while (j >= 0 && pick[j] + 1 == factors[j].size()) {
      pick[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++pick[j];
  }
  return out;
}

MultiMap::MultiMap(SpacePtr source, SpacePtr target, int arity, int degree)
    : source_(std::move(source)), target_(std::move(target)), arity_(arity),
      degree_(degree) {
  if (arity_ < 1) throw error("MultiMap arity must be >= 1");
}

void MultiMap::set(const MultiIndex& m, Element v) {
  if (static_cast<int>(m.size()) != arity_) throw error("MultiMap::set: arity mismatch");
  if (!multiindex_valid(*source_, m)) throw error("MultiMap::set: non-canonical multi-index");
  if (v.is_zero()) {
    table_.erase(m);
    return;
  }
  int din = multiindex_degree(*source_, m);
  int win = multiindex_weight(*source_, m);
  for (const auto& [id, c] : v.terms()) {
    if (target_->degree(id) != din + degree_)
      throw error("MultiMap::set: output degree violates homogeneity on " +
                  multiindex_str(*source_, m));
    if (target_->weight(id) < win)
      throw error("MultiMap::set: output violates weight additivity on " +
                  multiindex_str(*source_, m));
  }
  table_[m] = std::move(v);
}

void MultiMap::add_tuple_term(const std::vector<int>& tuple, int out_id,
                              const Rat& c) {
  std::vector<int> ids = tuple;
  int sign = 1;
  if (!sort_with_sign(*source_, ids, sign)) return;
  Element v = at(ids);
  v.add_term(out_id, sign * c);
  set(ids, std::move(v));
}

Element MultiMap::at(const MultiIndex& m) const {
  auto it = table_.find(m);
  return it == table_.end() ? Element() : it->second;
}

Element eval_multilinear(
    const Space& sp, int arity, std::span<const Element> args,
    const std::function<Element(const MultiIndex&)>& on_basis) {
  if (static_cast<int>(args.size()) != arity)
    throw error("eval_multilinear: arity mismatch");
  Element out;
  for (const auto& a : args)
    if (a.is_zero()) return out;
  std::vector<int> pick(arity, 0);
  while (true) {
    std::vector<int> ids(arity);
    Rat coeff(1);
    for (int j = 0; j < arity; ++j) {
      const auto& [id, c] = args[j].terms()[pick[j]];
      ids[j] = id;
      coeff *= c;
    }
    int sign = 1;
    if (sort_with_sign(sp, ids, sign)) {
      Element v = on_basis(ids);
      v *= sign * coeff;
      out += v;
    }
    int j = arity - 1;
    while (j >= 0 && pick[j] + 1 == args[j].size()) {
      pick[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++pick[j];
  }
  return out;
}

Element MultiMap::eval(std::span<const Element> args) const {
  return eval_multilinear(*source_, arity_, args,
                          [this](const MultiIndex& m) { return at(m); });
}

}  // namespace linfty
