#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcong {

/// Dense truncated formal power series in q.
///
/// A series knows its first `precision()` coefficients (of q^0 .. q^{precision-1})
/// and nothing beyond them.  Coefficients are exact arbitrary-precision integers,
/// or residues in [0, M) when a modulus M is attached.  Values are immutable after
/// construction; all operations below are pure functions returning new series.
class Series {
 public:
  static Series zero(std::int64_t precision,
                     std::optional<std::uint64_t> modulus = {});
  static Series one(std::int64_t precision,
                    std::optional<std::uint64_t> modulus = {});
  /// The series q itself (coefficient 1 at q^1 when precision permits).
  static Series var_q(std::int64_t precision,
                      std::optional<std::uint64_t> modulus = {});
  static Series constant(const mpz_class& c, std::int64_t precision,
                         std::optional<std::uint64_t> modulus = {});
  /// c * q^degree, truncated to `precision` coefficients.
  static Series monomial(const mpz_class& c, std::int64_t degree,
                         std::int64_t precision,
                         std::optional<std::uint64_t> modulus = {});
  static Series from_coeffs(std::vector<mpz_class> coeffs);
  static Series from_residues(std::vector<std::uint64_t> residues,
                              std::uint64_t modulus);

  std::int64_t precision() const noexcept { return precision_; }
  bool is_exact() const noexcept { return mod_ == 0; }
  std::optional<std::uint64_t> modulus() const noexcept {
    if (mod_ == 0) return std::nullopt;
    return mod_;
  }

  /// Coefficient of q^n.  Asking beyond the known prefix is an error,
  /// distinct from a zero coefficient.
  mpz_class coeff(std::int64_t n) const;
  bool coeff_is_zero(std::int64_t n) const;

  const std::vector<mpz_class>& exact_coeffs() const;
  const std::vector<std::uint64_t>& residues() const;

 private:
  Series(std::int64_t precision, std::uint64_t mod)
      : precision_(precision), mod_(mod) {}

  std::int64_t precision_;
  std::uint64_t mod_;  // 0 = exact mode
  std::vector<mpz_class> big_;
  std::vector<std::uint64_t> res_;
};

// Ring operations.  Binary operations truncate to the shorter operand's
// precision; mixing an exact operand with a modular one reduces the exact
// side first, and two modular operands must share the same modulus.
Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series scalar_mul(const mpz_class& c, const Series& a);
Series negate(const Series& a);
Series mul(const Series& a, const Series& b);

/// a / b as power series.  Requires the constant term of b to be a unit
/// (+-1 in exact mode, invertible mod M in modular mode).
Series div(const Series& a, const Series& b);
Series invert(const Series& a);

/// Integer power by repeated squaring; negative exponents go through invert.
Series pow(const Series& a, std::int64_t e);

/// Multiplication by q^m; precision grows by m.
Series shift(const Series& a, std::int64_t m);

/// q -> q^k; precision becomes k * a.precision().
Series substitute(const Series& a, std::int64_t k);

/// q -> -q (an involution).  In modular mode the sign is applied before
/// reduction, so residues stay in [0, M).
Series negate_q(const Series& a);

/// Arithmetic-progression extraction: coefficient of q^n in the result is
/// a's coefficient of q^{step*n + offset}.
Series extract_ap(const Series& a, std::int64_t step, std::int64_t offset);

Series reduce_mod(const Series& a, std::uint64_t m);
Series truncate(const Series& a, std::int64_t precision);

mpz_class coeff(const Series& a, std::int64_t n);

/// Prefix comparison against an explicit target.  A shorter overlap is an
/// error, never a silent pass.
bool agree_to(const Series& a, const Series& b, std::int64_t n);
std::optional<std::int64_t> first_mismatch(const Series& a, const Series& b,
                                           std::int64_t n);
bool is_zero_to(const Series& a, std::int64_t n);

std::string to_string(const Series& a, std::int64_t max_terms = 10);

}  // namespace qcong
