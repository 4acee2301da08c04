#pragma once

#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

/// A permutation p of {0..n-1}; the reordered tuple is (x_{p[0]},...,x_{p[n-1]}).
using Perm = std::vector<int>;

/// Koszul sign eps(p) with x_{p[0]} (.) ... (.) x_{p[n-1]} = eps(p) x_0 (.) ... (.) x_{n-1}
/// for homogeneous elements of the given degrees. Throws on length mismatch.
int koszul_sign(const std::vector<int>& degrees, const Perm& p);

/// All (i,j)-unshuffles of {0..i+j-1}: p increasing on the first i slots and
/// on the last j slots. |result| = C(i+j, i).
std::vector<Perm> unshuffles(int i, int j);

/// Unshuffles with blocks of the given sizes (increasing within each block).
std::vector<Perm> multi_unshuffles(const std::vector<int>& parts);

/// Ordered compositions of n into k positive parts.
std::vector<std::vector<int>> compositions(int n, int k);

/// All permutations of {0..n-1}.
std::vector<Perm> all_permutations(int n);

Perm compose_perm(const Perm& s, const Perm& t);  // (s . t)[i] = s[t[i]]

}  // namespace linfty
