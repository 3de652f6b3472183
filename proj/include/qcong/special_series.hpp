#pragma once

#include <cstdint>
#include <optional>

#include "qcong/series.hpp"

namespace qcong {

/// The named series atoms available to the expression language, beyond
/// E_j and Pochhammer products.
enum class NamedSeriesTag {
  kOmega,       // third-order mock theta omega(q)
  kNu,          // third-order mock theta nu(q)
  kPNu,         // generating function of p_nu(n) = nu(-q)
  kPOmega,      // generating function of p_omega(n) = q*omega(q)
  kSptwOdd,     // spt_omega at odd arguments: index n holds spt_omega(2n+1)
  kSptbarwOdd,  // overlined variant: index n holds sptbar_omega(2n+1)
  kT,           // Rogers-Ramanujan quotient (q^2,q^3;q^5)/(q,q^4;q^5)
  kK,           // E2*E5^5 / (E1*E10^5)
  kPhi,         // phi(-q)
  kPsi,         // psi(q)
};

/// omega(q) = sum_{n>=0} q^{2n^2+2n} / (q; q^2)_{n+1}^2.
Series omega_series(std::int64_t precision,
                    std::optional<std::uint64_t> modulus = {});

/// nu(q) = sum_{n>=0} q^{n(n+1)} / (-q; q^2)_{n+1}.
Series nu_series(std::int64_t precision,
                 std::optional<std::uint64_t> modulus = {});

/// Generating function of p_nu: nu(-q), with p_nu(0) = 1 in the constant term.
Series p_nu_series(std::int64_t precision,
                   std::optional<std::uint64_t> modulus = {});

/// Generating function of p_omega: q * omega(q); index n holds p_omega(n).
Series p_omega_series(std::int64_t precision,
                      std::optional<std::uint64_t> modulus = {});

/// E2^8/E1^5: index n holds spt_omega(2n+1).  Even arguments have no series
/// here; the combinatorial oracle covers them at small n.
Series sptw_odd_series(std::int64_t precision,
                       std::optional<std::uint64_t> modulus = {});

/// E2^9/E1^6: index n holds sptbar_omega(2n+1).
Series sptbarw_odd_series(std::int64_t precision,
                          std::optional<std::uint64_t> modulus = {});

/// T(q) = (q^2;q^5)(q^3;q^5) / ((q;q^5)(q^4;q^5)), all infinite products.
/// This is the integer-exponent form of the Rogers-Ramanujan quotient; the
/// q^{1/5} prefactor of the continued fraction itself is not representable
/// here and is deliberately left out.
Series t_series(std::int64_t precision,
                std::optional<std::uint64_t> modulus = {});

/// K = E2*E5^5 / (E1*E10^5).
Series k_series(std::int64_t precision,
                std::optional<std::uint64_t> modulus = {});

/// 1-shell totally symmetric plane partition counts, on the arithmetic
/// progression where they reduce to p_nu: f(6m+1) = p_nu(2m).  Arguments not
/// of the form 6m+1 are outside the implemented domain.
mpz_class f_value(std::int64_t n);

Series named_series(NamedSeriesTag tag, std::int64_t precision,
                    std::optional<std::uint64_t> modulus = {});

}  // namespace qcong
