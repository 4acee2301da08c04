#include "linfty/rational.hpp"

namespace linfty {

Rat rat_parse(const std::string& s) {
  if (s.empty()) throw error("empty rational literal");
  std::string num = s, den = "1";
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  auto check = [](const std::string& t, bool sign_ok) {
    if (t.empty()) return false;
    size_t i = 0;
    if (sign_ok && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!check(num, true) || !check(den, false))
    throw error("malformed rational literal: " + s);
  Rat r{mpz_class(num), mpz_class(den)};
  if (r.get_den() == 0) throw error("zero denominator: " + s);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat factorial(int n) {
  if (n < 0) throw error("factorial of negative");
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
  return Rat(z);
}

Rat binomial(int n, int k) {
  if (k < 0 || k > n) return Rat(0);
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rat(z);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace linfty
