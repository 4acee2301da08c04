#include "linfty/element.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace linfty {

Element Element::unit(int id, Rat c) {
  Element e;
  if (c != 0) e.terms_.emplace_back(id, std::move(c));
  return e;
}

void Element::add_term(int id, const Rat& c) {
  if (c == 0) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), id,
      [](const std::pair<int, Rat>& t, int i) { return t.first < i; });
  if (it != terms_.end() && it->first == id) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {id, c});
  }
}

Element& Element::operator+=(const Element& o) {
  if (o.terms_.empty()) return *this;
  std::vector<std::pair<int, Rat>> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.cbegin();
  auto b = o.terms_.cbegin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Rat s = a->second + b->second;
      if (s != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Element& Element::operator-=(const Element& o) { return *this += -o; }

Element& Element::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [id, v] : terms_) v *= c;
  return *this;
}

Element Element::operator-() const {
  Element e(*this);
  for (auto& [id, v] : e.terms_) v = -v;
  return e;
}

Rat Element::coeff(int id) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), id,
      [](const std::pair<int, Rat>& t, int i) { return t.first < i; });
  if (it != terms_.end() && it->first == id) return it->second;
  return Rat(0);
}

std::optional<int> element_degree(const Space& sp, const Element& x) {
  if (x.is_zero()) return std::nullopt;
  int d = sp.degree(x.terms().front().first);
  for (const auto& [id, c] : x.terms())
    if (sp.degree(id) != d) return std::nullopt;
  return d;
}

bool is_homogeneous(const Space& sp, const Element& x, int degree) {
  for (const auto& [id, c] : x.terms())
    if (sp.degree(id) != degree) return false;
  return true;
}

int weight_infinity() { return INT_MAX; }

int element_weight(const Space& sp, const Element& x) {
  int w = weight_infinity();
  for (const auto& [id, c] : x.terms()) w = std::min(w, sp.weight(id));
  return w;
}

std::string element_str(const Space& sp, const Element& x) {
  if (x.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, c] : x.terms()) {
    if (!first) out << " + ";
    out << rat_str(c) << "*" << sp.name(id);
    first = false;
  }
  return out.str();
}

}  // namespace linfty
