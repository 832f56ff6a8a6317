#include "rbloch/chebotarev.hpp"

#include <cmath>
#include <string>

#include "rbloch/errors.hpp"
#include "rbloch/finite_field.hpp"

namespace rbloch {

ChebotarevReport chebotarev_search(std::uint64_t ell, std::uint64_t bound) {
  if (ell % 2 == 0 || !is_prime(ell)) throw DomainError("ell must be an odd prime, got " + std::to_string(ell));
  if (bound < 2) throw DomainError("bound must be at least 2");
  if (bound > (std::uint64_t{1} << 32)) throw DomainError("bound too large for the sieve");

  std::vector<bool> composite(bound + 1, false);
  ChebotarevReport r;
  r.ell = ell;
  r.bound = bound;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    ++r.prime_count;
    if ((p + 1) % ell == 0) r.primes.push_back(p);
    for (std::uint64_t m = p * p; m <= bound; m += p) composite[m] = true;
  }
  r.density = static_cast<double>(r.primes.size()) / static_cast<double>(r.prime_count);
  r.expected = 1.0 / static_cast<double>(ell - 1);
  r.relative_deviation = std::abs(r.density - r.expected) / r.expected;
  return r;
}

}  // namespace rbloch
