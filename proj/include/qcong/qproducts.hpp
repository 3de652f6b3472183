#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>

#include "qcong/series.hpp"

namespace qcong {

/// Normal form for eta quotients: a finite map j -> e_j representing the
/// product over j of E_j^{e_j}, where E_j = (q^j; q^j)_inf.  Zero exponents
/// are never stored.
class EtaExponentMap {
 public:
  EtaExponentMap() = default;
  EtaExponentMap(
      std::initializer_list<std::pair<const std::int64_t, std::int64_t>> init);

  /// Sets the exponent of E_j (erases the entry when e == 0).
  void set(std::int64_t j, std::int64_t e);
  std::int64_t exponent(std::int64_t j) const;
  const std::map<std::int64_t, std::int64_t>& entries() const {
    return entries_;
  }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::int64_t, std::int64_t> entries_;
};

/// (q^a; q^b)_inf truncated to `precision` coefficients; only factors
/// 1 - q^{a+kb} with a+kb < precision contribute.
Series pochhammer_inf(std::int64_t a, std::int64_t b, std::int64_t precision,
                      std::optional<std::uint64_t> modulus = {});

/// (q^a; q^b)_n: exactly n factors.
Series pochhammer_fin(std::int64_t a, std::int64_t b, std::int64_t n,
                      std::int64_t precision,
                      std::optional<std::uint64_t> modulus = {});

/// E_j = (q^j; q^j)_inf, built sparsely from the pentagonal-number expansion.
Series eta(std::int64_t j, std::int64_t precision,
           std::optional<std::uint64_t> modulus = {});

/// Product over j of E_j^{e_j}.  Each factor is applied as a sparse
/// multiplication or division pass, so the cost per unit of |e_j| is
/// O(N * sqrt(N/j)) rather than a dense convolution.
Series eta_quotient(const EtaExponentMap& exponents, std::int64_t precision,
                    std::optional<std::uint64_t> modulus = {});

/// phi(-q) = 1 + 2*sum_{j>=1} (-1)^j q^{j^2}  (equals E1^2/E2).
Series theta_phi_neg(std::int64_t precision,
                     std::optional<std::uint64_t> modulus = {});

/// psi(q) = sum_{j>=0} q^{j(j+1)/2}  (equals E2^2/E1).
Series theta_psi(std::int64_t precision,
                 std::optional<std::uint64_t> modulus = {});

/// Euler's pentagonal sum: sum over all integers k of (-1)^k q^{k(3k+1)/2}.
Series pentagonal_series(std::int64_t precision,
                         std::optional<std::uint64_t> modulus = {});

/// Jacobi's cube: sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}  (equals E1^3).
Series jacobi_cube_series(std::int64_t precision,
                          std::optional<std::uint64_t> modulus = {});

}  // namespace qcong
