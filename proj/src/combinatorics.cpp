#include "linfty/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace linfty {

int koszul_sign(const std::vector<int>& degrees, const Perm& p) {
  if (degrees.size() != p.size())
    throw error("koszul_sign: degree/permutation length mismatch");
  int n = static_cast<int>(p.size());
  int sign = 1;
  // inversions (a < b with p[a] > p[b]) contribute (-1)^{|x_{p[a]}||x_{p[b]}|}
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (p[a] > p[b] && (degrees[p[a]] & 1) && (degrees[p[b]] & 1))
        sign = -sign;
  return sign;
}

static void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < n; ++v) {
    cur.push_back(v);
    subsets_rec(n, k, v + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<Perm> unshuffles(int i, int j) {
  if (i < 0 || j < 0) throw error("unshuffles: negative block size");
  int n = i + j;
  std::vector<std::vector<int>> picks;
  std::vector<int> cur;
  subsets_rec(n, i, 0, cur, picks);
  std::vector<Perm> out;
  out.reserve(picks.size());
  for (const auto& s : picks) {
    Perm p = s;
    std::vector<char> used(n, 0);
    for (int v : s) used[v] = 1;
    for (int v = 0; v < n; ++v)
      if (!used[v]) p.push_back(v);
    out.push_back(std::move(p));
  }
  return out;
}

static void multi_rec(const std::vector<int>& parts, size_t block,
                      std::vector<int> remaining, Perm cur,
                      std::vector<Perm>& out) {
  if (block == parts.size()) {
    out.push_back(cur);
    return;
  }
  int k = parts[block];
  // choose k of the remaining values, in increasing order
  int m = static_cast<int>(remaining.size());
  std::vector<std::vector<int>> picks;
  std::vector<int> tmp;
  subsets_rec(m, k, 0, tmp, picks);
  for (const auto& s : picks) {
    Perm next = cur;
    std::vector<int> rest;
    std::vector<char> used(m, 0);
    for (int idx : s) {
      next.push_back(remaining[idx]);
      used[idx] = 1;
    }
    for (int idx = 0; idx < m; ++idx)
      if (!used[idx]) rest.push_back(remaining[idx]);
    multi_rec(parts, block + 1, std::move(rest), std::move(next), out);
  }
}

std::vector<Perm> multi_unshuffles(const std::vector<int>& parts) {
  int n = std::accumulate(parts.begin(), parts.end(), 0);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Perm> out;
  multi_rec(parts, 0, all, {}, out);
  return out;
}

std::vector<std::vector<int>> compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k <= 0 || n < k) return out;
  std::vector<int> cur(k, 1);
  // distribute n-k extra among k slots
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == k - 1) {
      cur[slot] = 1 + left;
      out.push_back(cur);
      return;
    }
    for (int extra = 0; extra <= left; ++extra) {
      cur[slot] = 1 + extra;
      rec(slot + 1, left - extra);
    }
  };
  rec(0, n - k);
  return out;
}

std::vector<Perm> all_permutations(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm compose_perm(const Perm& s, const Perm& t) {
  Perm r(t.size());
  for (size_t i = 0; i < t.size(); ++i) r[i] = s[t[i]];
  return r;
}

}  // namespace linfty
