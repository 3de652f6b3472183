#include "qcong/qproducts.hpp"

#include <stdexcept>
#include <vector>

namespace qcong {

EtaExponentMap::EtaExponentMap(
    std::initializer_list<std::pair<const std::int64_t, std::int64_t>> init) {
  for (const auto& [j, e] : init) set(j, e);
}

void EtaExponentMap::set(std::int64_t j, std::int64_t e) {
  if (j < 1) throw std::invalid_argument("eta index must be >= 1");
  if (e == 0)
    entries_.erase(j);
  else
    entries_[j] = e;
}

std::int64_t EtaExponentMap::exponent(std::int64_t j) const {
  auto it = entries_.find(j);
  return it == entries_.end() ? 0 : it->second;
}

namespace {

void check_args(std::int64_t a, std::int64_t b) {
  if (a < 1 || b < 1)
    throw std::invalid_argument("Pochhammer arguments must be >= 1");
}

// Multiplies the coefficient vector in place by (1 - q^m).
void apply_binomial_exact(std::vector<mpz_class>& c, std::int64_t m) {
  for (std::int64_t i = static_cast<std::int64_t>(c.size()) - 1; i >= m; --i)
    c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - m)];
}

void apply_binomial_mod(std::vector<std::uint64_t>& c, std::int64_t m,
                        std::uint64_t mod) {
  for (std::int64_t i = static_cast<std::int64_t>(c.size()) - 1; i >= m; --i) {
    std::uint64_t& x = c[static_cast<std::size_t>(i)];
    std::uint64_t y = c[static_cast<std::size_t>(i - m)];
    x = x >= y ? x - y : x + (mod - y);
  }
}

template <typename Step>
Series build_product(std::int64_t precision,
                     std::optional<std::uint64_t> modulus, Step&& step) {
  if (precision < 1)
    throw std::invalid_argument("series precision must be >= 1");
  if (modulus) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(precision), 0);
    c[0] = 1 % *modulus;
    step([&](std::int64_t m) { apply_binomial_mod(c, m, *modulus); });
    return Series::from_residues(std::move(c), *modulus);
  }
  std::vector<mpz_class> c(static_cast<std::size_t>(precision), mpz_class(0));
  c[0] = 1;
  step([&](std::int64_t m) { apply_binomial_exact(c, m); });
  return Series::from_coeffs(std::move(c));
}

// Exponents j*k(3k±1)/2 with sign (-1)^k, for all k with exponent < limit.
struct PentTerm {
  std::int64_t exponent;
  int sign;
};

std::vector<PentTerm> pentagonal_terms(std::int64_t j, std::int64_t limit) {
  std::vector<PentTerm> out;
  for (std::int64_t k = 1;; ++k) {
    std::int64_t g1 = k * (3 * k - 1) / 2;
    std::int64_t g2 = k * (3 * k + 1) / 2;
    int sign = (k % 2 == 0) ? 1 : -1;
    bool any = false;
    if (g1 <= (limit - 1) / j) {
      out.push_back({j * g1, sign});
      any = true;
    }
    if (g2 <= (limit - 1) / j) {
      out.push_back({j * g2, sign});
      any = true;
    }
    if (!any) break;
  }
  return out;
}

}  // namespace

Series pochhammer_inf(std::int64_t a, std::int64_t b, std::int64_t precision,
                      std::optional<std::uint64_t> modulus) {
  check_args(a, b);
  return build_product(precision, modulus, [&](auto&& factor) {
    for (std::int64_t m = a; m < precision; m += b) factor(m);
  });
}

Series pochhammer_fin(std::int64_t a, std::int64_t b, std::int64_t n,
                      std::int64_t precision,
                      std::optional<std::uint64_t> modulus) {
  check_args(a, b);
  if (n < 0) throw std::invalid_argument("Pochhammer length must be >= 0");
  return build_product(precision, modulus, [&](auto&& factor) {
    std::int64_t m = a;
    for (std::int64_t k = 0; k < n; ++k, m += b)
      if (m < precision) factor(m);
  });
}

Series eta(std::int64_t j, std::int64_t precision,
           std::optional<std::uint64_t> modulus) {
  if (j < 1) throw std::invalid_argument("eta index must be >= 1");
  if (precision < 1)
    throw std::invalid_argument("series precision must be >= 1");
  Series s = Series::one(precision, modulus);
  if (modulus) {
    std::vector<std::uint64_t> c = s.residues();
    for (const auto& t : pentagonal_terms(j, precision))
      c[static_cast<std::size_t>(t.exponent)] =
          t.sign > 0 ? 1 % *modulus : *modulus - 1;
    return Series::from_residues(std::move(c), *modulus);
  }
  std::vector<mpz_class> c = s.exact_coeffs();
  for (const auto& t : pentagonal_terms(j, precision))
    c[static_cast<std::size_t>(t.exponent)] = t.sign;
  return Series::from_coeffs(std::move(c));
}

Series eta_quotient(const EtaExponentMap& exponents, std::int64_t precision,
                    std::optional<std::uint64_t> modulus) {
  Series acc = Series::one(precision, modulus);
  // Multiplications first: products of eta factors keep coefficients small,
  // divisions then grow them only once.
  for (const auto& [j, e] : exponents.entries()) {
    if (e <= 0) continue;
    Series f = eta(j, precision, modulus);
    for (std::int64_t k = 0; k < e; ++k) acc = mul(acc, f);
  }
  for (const auto& [j, e] : exponents.entries()) {
    if (e >= 0) continue;
    Series f = eta(j, precision, modulus);
    for (std::int64_t k = 0; k < -e; ++k) acc = div(acc, f);
  }
  return acc;
}

namespace {

template <typename Emit>
Series build_sparse_sum(std::int64_t precision,
                        std::optional<std::uint64_t> modulus, Emit&& emit) {
  if (precision < 1)
    throw std::invalid_argument("series precision must be >= 1");
  std::vector<mpz_class> c(static_cast<std::size_t>(precision), mpz_class(0));
  emit([&](std::int64_t e, const mpz_class& v) {
    if (e < precision) c[static_cast<std::size_t>(e)] = v;
  });
  Series s = Series::from_coeffs(std::move(c));
  return modulus ? reduce_mod(s, *modulus) : s;
}

}  // namespace

Series theta_phi_neg(std::int64_t precision,
                     std::optional<std::uint64_t> modulus) {
  return build_sparse_sum(precision, modulus, [&](auto&& set) {
    set(0, 1);
    for (std::int64_t j = 1; j * j < precision; ++j)
      set(j * j, j % 2 == 0 ? 2 : -2);
  });
}

Series theta_psi(std::int64_t precision,
                 std::optional<std::uint64_t> modulus) {
  return build_sparse_sum(precision, modulus, [&](auto&& set) {
    for (std::int64_t j = 0; j * (j + 1) / 2 < precision; ++j)
      set(j * (j + 1) / 2, 1);
  });
}

Series pentagonal_series(std::int64_t precision,
                         std::optional<std::uint64_t> modulus) {
  return build_sparse_sum(precision, modulus, [&](auto&& set) {
    set(0, 1);
    for (const auto& t : pentagonal_terms(1, precision))
      set(t.exponent, t.sign);
  });
}

Series jacobi_cube_series(std::int64_t precision,
                          std::optional<std::uint64_t> modulus) {
  return build_sparse_sum(precision, modulus, [&](auto&& set) {
    for (std::int64_t k = 0; k * (k + 1) / 2 < precision; ++k)
      set(k * (k + 1) / 2, mpz_class(k % 2 == 0 ? 2 * k + 1 : -(2 * k + 1)));
  });
}

}  // namespace qcong
