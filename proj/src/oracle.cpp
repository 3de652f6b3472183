#include "qcong/oracle.hpp"

#include <stdexcept>
#include <vector>

namespace qcong::oracle {

namespace {

void check_bound(std::int64_t n, std::int64_t bound) {
  if (n > bound)
    throw std::out_of_range("enumeration bound exceeded: n = " +
                            std::to_string(n) + " > " + std::to_string(bound));
}

// Partitions of `remaining` into parts >= `low`, every odd part < odd_limit.
// Parts are chosen in non-decreasing order, so the filter prunes as we go.
std::int64_t count_tail(std::int64_t remaining, std::int64_t low,
                        std::int64_t odd_limit) {
  if (remaining == 0) return 1;
  std::int64_t total = 0;
  for (std::int64_t part = low; part <= remaining; ++part) {
    if (part % 2 == 1 && part >= odd_limit) continue;
    total += count_tail(remaining - part, part, odd_limit);
  }
  return total;
}

// Distinct-part variant: next part must strictly exceed the previous one.
std::int64_t count_tail_distinct(std::int64_t remaining, std::int64_t low,
                                 std::int64_t odd_limit) {
  if (remaining == 0) return 1;
  std::int64_t total = 0;
  for (std::int64_t part = low; part <= remaining; ++part) {
    if (part % 2 == 1 && part >= odd_limit) continue;
    total += count_tail_distinct(remaining - part, part + 1, odd_limit);
  }
  return total;
}

// Enumerates partitions of `remaining` into parts >= low (multiplicities
// free), all odd parts < odd_limit, accumulating weight(mu, sizes) where
// `sizes` counts distinct part sizes seen so far (the smallest included).
template <typename Weight>
std::int64_t weight_rest(std::int64_t remaining, std::int64_t low,
                         std::int64_t odd_limit, std::int64_t mu,
                         Weight weight, std::int64_t sizes = 1) {
  if (remaining == 0) return weight(mu, sizes);
  std::int64_t total = 0;
  for (std::int64_t part = low; part <= remaining; ++part) {
    if (part % 2 == 1 && part >= odd_limit) continue;
    for (std::int64_t count = 1; count * part <= remaining; ++count)
      total += weight_rest(remaining - count * part, part + 1, odd_limit, mu,
                           weight, sizes + 1);
  }
  return total;
}

// Weighted enumeration over partitions with smallest part s (multiplicity mu)
// and all odd parts < 2s.  `weight(mu, distinct_sizes)` scores one partition.
template <typename Weight>
std::int64_t sum_over_smallest(std::int64_t n, Weight weight) {
  std::int64_t total = 0;
  for (std::int64_t s = 1; s <= n; ++s)
    for (std::int64_t mu = 1; mu * s <= n; ++mu)
      total += weight_rest(n - mu * s, s + 1, 2 * s, mu, weight);
  return total;
}

}  // namespace

mpz_class count_p(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("count_p needs n >= 0");
  std::vector<mpz_class> dp(static_cast<std::size_t>(n) + 1, mpz_class(0));
  dp[0] = 1;
  for (std::int64_t part = 1; part <= n; ++part)
    for (std::int64_t m = part; m <= n; ++m)
      dp[static_cast<std::size_t>(m)] += dp[static_cast<std::size_t>(m - part)];
  return dp[static_cast<std::size_t>(n)];
}

std::int64_t count_p_omega(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("count_p_omega needs n >= 1");
  check_bound(n, kMaxEnumerationN);
  std::int64_t total = 0;
  for (std::int64_t s = 1; s <= n; ++s)
    total += count_tail(n - s, s, 2 * s);
  return total;
}

std::int64_t count_p_nu(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("count_p_nu needs n >= 0");
  check_bound(n, kMaxEnumerationN);
  if (n == 0) return 1;
  std::int64_t total = 0;
  // Smallest positive part s, remaining parts strictly larger.
  for (std::int64_t s = 1; s <= n; ++s)
    total += count_tail_distinct(n - s, s + 1, 2 * s);
  // Partitions with an extra zero part: smallest part 0 forbids odd parts.
  for (std::int64_t s = 2; s <= n; s += 2)
    total += count_tail_distinct(n - s, s + 1, 1);  // odd_limit 1: no odds
  return total;
}

std::int64_t count_spt_omega(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("count_spt_omega needs n >= 1");
  check_bound(n, kMaxSptEnumerationN);
  return sum_over_smallest(n, [](std::int64_t mu, std::int64_t) { return mu; });
}

std::int64_t count_sptbar_omega(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("count_sptbar_omega needs n >= 1");
  check_bound(n, kMaxSptEnumerationN);
  // Each distinct part size other than the smallest may independently carry
  // an overline, so a partition with d distinct sizes yields 2^{d-1}
  // overpartitions, each contributing its smallest-part multiplicity.
  return sum_over_smallest(n, [](std::int64_t mu, std::int64_t sizes) {
    return mu << (sizes - 1);
  });
}

}  // namespace qcong::oracle
