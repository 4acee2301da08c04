#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

/// A named basis element of a graded space, stored in the shifted
/// presentation: `degree` is the degree in W = V[1], `weight` the filtration
/// weight (F^p W = span of elements of weight >= p).
struct BasisInfo {
  std::string name;
  int degree = 0;
  int weight = 1;
};

/// Finite-dimensional graded space with a nilpotent weight filtration
/// (F^N = 0). Basis order is fixed at insertion and never changes; all
/// sign-sensitive computations depend on it. Spaces may keep growing via
/// add() (used for the lazily-interned polynomial-form bases); existing ids
/// are stable.
class Space {
 public:
  Space(std::string label, int nilpotency);

  /// Interns a basis element. Names must be unique; weight must lie in
  /// [1, nilpotency). Returns the new id.
  int add(const BasisInfo& b);

  int dim() const { return static_cast<int>(basis_.size()); }
  const BasisInfo& info(int id) const { return basis_.at(id); }
  int degree(int id) const { return basis_.at(id).degree; }
  int weight(int id) const { return basis_.at(id).weight; }
  const std::string& name(int id) const { return basis_.at(id).name; }

  /// Id of a named element, or -1.
  int find(const std::string& name) const;

  int nilpotency() const { return nilp_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  int nilp_;
  std::vector<BasisInfo> basis_;
  std::map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<Space>;

}  // namespace linfty
