#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nevlab/double_double.hpp"

namespace nevlab {

/// log x for x >= 1 and 0 on [0, 1). Negative input throws.
double log_plus(double x);

/// von Mangoldt function by trial division; n = 0 throws.
double mangoldt(std::uint64_t n);

struct PrimePower {
  std::uint32_t prime = 0;  // 0 when n is not a prime power
  std::uint32_t exponent = 0;
};

/// Lambda(n) for every n <= limit, stored exactly as (p, k) descriptors.
/// Immutable after construction.
class MangoldtTable {
 public:
  explicit MangoldtTable(std::uint32_t limit = 1'000'000);

  std::uint32_t limit() const { return limit_; }
  PrimePower descriptor(std::uint32_t n) const;
  double value(std::uint32_t n) const;

  /// Process-wide table of at least `min_limit` entries.
  static std::shared_ptr<const MangoldtTable> shared(std::uint32_t min_limit = 1'000'000);

 private:
  std::uint32_t limit_;
  std::vector<PrimePower> entries_;
};

/// Smallest-prime-factor sieve plus double-double logarithms of the primes.
/// The Dirichlet-series kernels walk n upward and build n^{-s} from the
/// factorisation n = p * (n / p).
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint32_t limit);

  std::uint32_t limit() const { return limit_; }
  std::uint32_t smallest_factor(std::uint32_t n) const { return spf_[n]; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  /// log p for primes()[i], to double-double accuracy.
  const std::vector<DD>& prime_logs() const { return prime_logs_; }

  /// Shared sieve covering at least `min_limit`; grows geometrically and
  /// never shrinks. Safe to call concurrently.
  static std::shared_ptr<const PrimeSieve> shared(std::uint32_t min_limit);

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
  std::vector<DD> prime_logs_;
};

}  // namespace nevlab
