#include "nevlab/number_theory.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "nevlab/types.hpp"

namespace nevlab {

double log_plus(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw NumericError(ErrorKind::InvalidArgument, "log_plus: argument must be nonnegative");
  }
  return x >= 1.0 ? std::log(x) : 0.0;
}

double mangoldt(std::uint64_t n) {
  if (n == 0) throw NumericError(ErrorKind::InvalidArgument, "mangoldt: n must be positive");
  if (n == 1) return 0.0;
  std::uint64_t p = 0;
  if (n % 2 == 0) {
    p = 2;
  } else {
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
      if (n % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) p = n;
  }
  while (n % p == 0) n /= p;
  return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

namespace {

std::vector<std::uint32_t> smallest_prime_factors(std::uint32_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf[i] != 0) continue;
    spf[i] = i;
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

}  // namespace

MangoldtTable::MangoldtTable(std::uint32_t limit) : limit_(limit) {
  if (limit == 0) throw NumericError(ErrorKind::InvalidArgument, "MangoldtTable: limit must be positive");
  const auto spf = smallest_prime_factors(limit);
  entries_.assign(static_cast<std::size_t>(limit) + 1, PrimePower{});
  for (std::uint32_t n = 2; n <= limit; ++n) {
    const std::uint32_t p = spf[n];
    std::uint32_t m = n;
    std::uint32_t k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m == 1) entries_[n] = PrimePower{p, k};
  }
}

PrimePower MangoldtTable::descriptor(std::uint32_t n) const {
  if (n == 0 || n > limit_) {
    throw NumericError(ErrorKind::InvalidArgument, "MangoldtTable: index out of range");
  }
  return entries_[n];
}

double MangoldtTable::value(std::uint32_t n) const {
  const PrimePower d = descriptor(n);
  return d.prime == 0 ? 0.0 : std::log(static_cast<double>(d.prime));
}

std::shared_ptr<const MangoldtTable> MangoldtTable::shared(std::uint32_t min_limit) {
  static std::mutex mutex;
  static std::shared_ptr<const MangoldtTable> table;
  std::lock_guard lock(mutex);
  if (!table || table->limit() < min_limit) {
    table = std::make_shared<const MangoldtTable>(std::max<std::uint32_t>(min_limit, 1'000'000));
  }
  return table;
}

PrimeSieve::PrimeSieve(std::uint32_t limit) : limit_(std::max<std::uint32_t>(limit, 2)) {
  spf_ = smallest_prime_factors(limit_);
  for (std::uint32_t n = 2; n <= limit_; ++n) {
    if (spf_[n] == n) primes_.push_back(n);
  }
  prime_logs_.reserve(primes_.size());
  for (std::uint32_t p : primes_) prime_logs_.push_back(dd_log(DD(static_cast<double>(p))));
}

std::shared_ptr<const PrimeSieve> PrimeSieve::shared(std::uint32_t min_limit) {
  static std::mutex mutex;
  static std::shared_ptr<const PrimeSieve> sieve;
  std::lock_guard lock(mutex);
  if (!sieve || sieve->limit() < min_limit) {
    std::uint32_t limit = sieve ? sieve->limit() : 1u << 16;
    while (limit < min_limit) limit = limit > (1u << 30) ? min_limit : limit * 2;
    sieve = std::make_shared<const PrimeSieve>(limit);
  }
  return sieve;
}

}  // namespace nevlab
