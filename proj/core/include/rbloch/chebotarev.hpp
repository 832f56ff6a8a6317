#pragma once

#include <cstdint>
#include <vector>

namespace rbloch {

struct ChebotarevReport {
  std::uint64_t ell = 0;
  std::uint64_t bound = 0;
  /// Primes p <= bound with ell | p + 1.
  std::vector<std::uint64_t> primes;
  std::uint64_t prime_count = 0;
  double density = 0.0;
  /// 1 / (ell - 1), the share of the Frobenius class {-1} in (Z/ell)^x.
  double expected = 0.0;
  double relative_deviation = 0.0;
};

/// Throws DomainError unless ell is an odd prime and bound >= 2.
ChebotarevReport chebotarev_search(std::uint64_t ell, std::uint64_t bound);

}  // namespace rbloch
