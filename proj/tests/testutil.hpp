#pragma once

#include <vector>

#include "linfty/element.hpp"

namespace linfty {

/// SplitMix64: deterministic across platforms for a given seed (the standard
/// library distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [lo, hi].
  int range(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Small rational with numerator in [-4,4] and denominator in [1,4].
  Rat rat() {
    int num = range(-4, 4);
    int den = range(1, 4);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  /// Nonzero variant.
  Rat rat_nonzero() {
    Rat r = rat();
    while (r == 0) r = rat();
    return r;
  }

 private:
  std::uint64_t state_;
};

inline Element rand_element(Rng& rng, const Space& sp,
                            const std::vector<int>& ids) {
  Element e;
  for (int id : ids) e.add_term(id, rng.rat());
  (void)sp;
  return e;
}

/// Random element of the given homogeneous shifted degree.
inline Element rand_element_of_degree(Rng& rng, const Space& sp, int degree) {
  Element e;
  for (int id = 0; id < sp.dim(); ++id)
    if (sp.degree(id) == degree) e.add_term(id, rng.rat());
  return e;
}

}  // namespace linfty
