#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace linfty {

/// Exact rational scalar. All arithmetic in the engine is exact; there is no
/// floating-point mode and no tolerance anywhere.
using Rat = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse "p" or "p/q" (decimal integers, optional leading '-').
Rat rat_parse(const std::string& s);

/// Canonical "p" or "p/q" form with positive denominator.
std::string rat_str(const Rat& r);

Rat factorial(int n);
Rat binomial(int n, int k);

/// FNV-1a over bytes; used for input hashes in reports.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace linfty
