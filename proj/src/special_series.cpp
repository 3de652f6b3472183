#include "qcong/special_series.hpp"

#include <stdexcept>
#include <vector>

#include "qcong/qproducts.hpp"

namespace qcong {

namespace {

// In-place division by (1 + sign*q^m), maintained only up to `limit`:
// c'[i] = c[i] - sign*c'[i-m].
void divide_binomial_exact(std::vector<mpz_class>& c, std::int64_t m, int sign,
                           std::int64_t limit) {
  for (std::int64_t i = m; i < limit; ++i) {
    if (sign > 0)
      c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - m)];
    else
      c[static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(i - m)];
  }
}

void divide_binomial_mod(std::vector<std::uint64_t>& c, std::int64_t m,
                         int sign, std::uint64_t mod, std::int64_t limit) {
  for (std::int64_t i = m; i < limit; ++i) {
    std::uint64_t& x = c[static_cast<std::size_t>(i)];
    std::uint64_t y = c[static_cast<std::size_t>(i - m)];
    if (sign > 0)
      x = x >= y ? x - y : x + (mod - y);
    else {
      x += y;
      if (x >= mod) x -= mod;
    }
  }
}

// Shared shape of the omega/nu summations: a running reciprocal Pochhammer
// product, extended by one binomial factor per term and added in at the
// term's leading exponent.  Later terms cannot touch kept coefficients once
// the exponent reaches the precision.
template <typename Exponent, typename Factors>
Series mock_theta_sum(std::int64_t precision,
                      std::optional<std::uint64_t> modulus, Exponent exponent,
                      Factors factors_for_term, int factor_sign) {
  if (precision < 1)
    throw std::invalid_argument("series precision must be >= 1");
  // A term with leading exponent e only ever contributes cur[0 .. N-e-1], and
  // exponents grow, so the running product need not be maintained past N-e.
  if (modulus) {
    std::uint64_t mod = *modulus;
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(precision), 0);
    cur[0] = 1 % mod;
    std::vector<std::uint64_t> out(static_cast<std::size_t>(precision), 0);
    for (std::int64_t n = 0; exponent(n) < precision; ++n) {
      std::int64_t e = exponent(n);
      for (std::int64_t k = 0; k < factors_for_term(n); ++k)
        divide_binomial_mod(cur, 2 * n + 1, factor_sign, mod, precision - e);
      for (std::int64_t i = 0; i + e < precision; ++i) {
        std::uint64_t& x = out[static_cast<std::size_t>(i + e)];
        x += cur[static_cast<std::size_t>(i)];
        if (x >= mod) x -= mod;
      }
    }
    return Series::from_residues(std::move(out), mod);
  }
  std::vector<mpz_class> cur(static_cast<std::size_t>(precision), mpz_class(0));
  cur[0] = 1;
  std::vector<mpz_class> out(static_cast<std::size_t>(precision), mpz_class(0));
  for (std::int64_t n = 0; exponent(n) < precision; ++n) {
    std::int64_t e = exponent(n);
    for (std::int64_t k = 0; k < factors_for_term(n); ++k)
      divide_binomial_exact(cur, 2 * n + 1, factor_sign, precision - e);
    for (std::int64_t i = 0; i + e < precision; ++i)
      out[static_cast<std::size_t>(i + e)] += cur[static_cast<std::size_t>(i)];
  }
  return Series::from_coeffs(std::move(out));
}

}  // namespace

Series omega_series(std::int64_t precision,
                    std::optional<std::uint64_t> modulus) {
  // Denominator (q; q^2)_{n+1}^2: two factors (1 - q^{2n+1}) per term.
  return mock_theta_sum(
      precision, modulus, [](std::int64_t n) { return 2 * n * n + 2 * n; },
      [](std::int64_t) { return std::int64_t{2}; }, -1);
}

Series nu_series(std::int64_t precision,
                 std::optional<std::uint64_t> modulus) {
  // Denominator (-q; q^2)_{n+1}: one factor (1 + q^{2n+1}) per term.
  return mock_theta_sum(
      precision, modulus, [](std::int64_t n) { return n * (n + 1); },
      [](std::int64_t) { return std::int64_t{1}; }, +1);
}

Series p_nu_series(std::int64_t precision,
                   std::optional<std::uint64_t> modulus) {
  return negate_q(nu_series(precision, modulus));
}

Series p_omega_series(std::int64_t precision,
                      std::optional<std::uint64_t> modulus) {
  if (precision == 1) return Series::zero(1, modulus);
  return shift(omega_series(precision - 1, modulus), 1);
}

Series sptw_odd_series(std::int64_t precision,
                       std::optional<std::uint64_t> modulus) {
  return eta_quotient(EtaExponentMap{{2, 8}, {1, -5}}, precision, modulus);
}

Series sptbarw_odd_series(std::int64_t precision,
                          std::optional<std::uint64_t> modulus) {
  return eta_quotient(EtaExponentMap{{2, 9}, {1, -6}}, precision, modulus);
}

Series t_series(std::int64_t precision,
                std::optional<std::uint64_t> modulus) {
  Series num = mul(pochhammer_inf(2, 5, precision, modulus),
                   pochhammer_inf(3, 5, precision, modulus));
  Series den = mul(pochhammer_inf(1, 5, precision, modulus),
                   pochhammer_inf(4, 5, precision, modulus));
  return div(num, den);
}

Series k_series(std::int64_t precision,
                std::optional<std::uint64_t> modulus) {
  return eta_quotient(EtaExponentMap{{2, 1}, {5, 5}, {1, -1}, {10, -5}},
                      precision, modulus);
}

mpz_class f_value(std::int64_t n) {
  if (n < 1 || n % 6 != 1)
    throw std::invalid_argument(
        "f(n) is only exposed for arguments of the form 6m+1, got " +
        std::to_string(n));
  std::int64_t m = (n - 1) / 6;
  return p_nu_series(2 * m + 1).coeff(2 * m);
}

Series named_series(NamedSeriesTag tag, std::int64_t precision,
                    std::optional<std::uint64_t> modulus) {
  switch (tag) {
    case NamedSeriesTag::kOmega:
      return omega_series(precision, modulus);
    case NamedSeriesTag::kNu:
      return nu_series(precision, modulus);
    case NamedSeriesTag::kPNu:
      return p_nu_series(precision, modulus);
    case NamedSeriesTag::kPOmega:
      return p_omega_series(precision, modulus);
    case NamedSeriesTag::kSptwOdd:
      return sptw_odd_series(precision, modulus);
    case NamedSeriesTag::kSptbarwOdd:
      return sptbarw_odd_series(precision, modulus);
    case NamedSeriesTag::kT:
      return t_series(precision, modulus);
    case NamedSeriesTag::kK:
      return k_series(precision, modulus);
    case NamedSeriesTag::kPhi:
      return theta_phi_neg(precision, modulus);
    case NamedSeriesTag::kPsi:
      return theta_psi(precision, modulus);
  }
  throw std::logic_error("unhandled series tag");
}

}  // namespace qcong
