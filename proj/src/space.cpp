#include "linfty/space.hpp"

namespace linfty {

Space::Space(std::string label, int nilpotency)
    : label_(std::move(label)), nilp_(nilpotency) {
  if (nilp_ < 1) throw error("nilpotency bound must be >= 1");
}

int Space::add(const BasisInfo& b) {
  if (b.name.empty()) throw error("basis element needs a name");
  if (b.weight < 1 || b.weight >= nilp_)
    throw error("basis weight out of range [1," + std::to_string(nilp_) +
                ") for '" + b.name + "' in space " + label_);
  auto [it, fresh] = index_.emplace(b.name, dim());
  if (!fresh) throw error("duplicate basis name '" + b.name + "' in " + label_);
  basis_.push_back(b);
  return it->second;
}

int Space::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

}  // namespace linfty
