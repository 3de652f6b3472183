#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace qcong::oracle {

// Enumeration is exponential; callers beyond these bounds should trust the
// series instead.
constexpr std::int64_t kMaxEnumerationN = 40;
constexpr std::int64_t kMaxSptEnumerationN = 35;

/// p(n): number of partitions of n, by dynamic programming.
mpz_class count_p(std::int64_t n);

/// Partitions of n in which each odd part is less than twice the smallest part.
std::int64_t count_p_omega(std::int64_t n);

/// Partitions of n into distinct non-negative parts (a single zero part
/// permitted) in which each odd part is less than twice the smallest part.
/// With a zero part present no odd part can qualify, so those partitions are
/// the all-even ones; this convention reproduces the coefficients of nu(-q).
std::int64_t count_p_nu(std::int64_t n);

/// Total number of smallest parts across the partitions counted by
/// count_p_omega.
std::int64_t count_spt_omega(std::int64_t n);

/// Total number of smallest parts across overpartitions of n in which the
/// smallest part is always overlined and each odd part is less than twice
/// the smallest part.
std::int64_t count_sptbar_omega(std::int64_t n);

}  // namespace qcong::oracle
