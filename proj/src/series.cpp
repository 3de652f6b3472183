#include "qcong/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qcong {

namespace {

constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 63) - 1;
constexpr std::int64_t kMaxPrecision = std::int64_t{1} << 33;

void check_precision(std::int64_t precision) {
  if (precision < 1) throw std::invalid_argument("series precision must be >= 1");
  if (precision > kMaxPrecision)
    throw std::length_error("series precision too large");
}

void check_modulus(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  if (m > kMaxModulus)
    throw std::invalid_argument("modulus must fit in a machine word (< 2^63)");
}

std::uint64_t mod_of(const mpz_class& v, std::uint64_t m) {
  // mpz_fdiv_ui uses floor division, so the result is in [0, m) for any sign.
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  // Extended Euclid; the constant term of every denominator we meet is a
  // unit, but check anyway.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m),
               new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1)
    throw std::invalid_argument("constant term is not a unit modulo " +
                                std::to_string(m));
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

// Shared-mode view of a binary operation's inputs: both sides brought to the
// same mode, min precision.
struct Harmonized {
  Series lhs;
  Series rhs;
  std::uint64_t mod;  // 0 = exact
};

}  // namespace

Series Series::zero(std::int64_t precision, std::optional<std::uint64_t> modulus) {
  return constant(0, precision, modulus);
}

Series Series::one(std::int64_t precision, std::optional<std::uint64_t> modulus) {
  return constant(1, precision, modulus);
}

Series Series::var_q(std::int64_t precision,
                     std::optional<std::uint64_t> modulus) {
  return monomial(1, 1, precision, modulus);
}

Series Series::constant(const mpz_class& c, std::int64_t precision,
                        std::optional<std::uint64_t> modulus) {
  return monomial(c, 0, precision, modulus);
}

Series Series::monomial(const mpz_class& c, std::int64_t degree,
                        std::int64_t precision,
                        std::optional<std::uint64_t> modulus) {
  check_precision(precision);
  if (degree < 0) throw std::invalid_argument("monomial degree must be >= 0");
  if (modulus) {
    check_modulus(*modulus);
    Series s(precision, *modulus);
    s.res_.assign(static_cast<std::size_t>(precision), 0);
    if (degree < precision) s.res_[static_cast<std::size_t>(degree)] = mod_of(c, *modulus);
    return s;
  }
  Series s(precision, 0);
  s.big_.assign(static_cast<std::size_t>(precision), mpz_class(0));
  if (degree < precision) s.big_[static_cast<std::size_t>(degree)] = c;
  return s;
}

Series Series::from_coeffs(std::vector<mpz_class> coeffs) {
  check_precision(static_cast<std::int64_t>(coeffs.size()));
  Series s(static_cast<std::int64_t>(coeffs.size()), 0);
  s.big_ = std::move(coeffs);
  return s;
}

Series Series::from_residues(std::vector<std::uint64_t> residues,
                             std::uint64_t modulus) {
  check_precision(static_cast<std::int64_t>(residues.size()));
  check_modulus(modulus);
  for (auto& r : residues) r %= modulus;
  Series s(static_cast<std::int64_t>(residues.size()), modulus);
  s.res_ = std::move(residues);
  return s;
}

mpz_class Series::coeff(std::int64_t n) const {
  if (n < 0 || n >= precision_)
    throw std::out_of_range("coefficient index " + std::to_string(n) +
                            " is beyond known precision " +
                            std::to_string(precision_));
  if (mod_ == 0) return big_[static_cast<std::size_t>(n)];
  return mpz_class(static_cast<unsigned long>(res_[static_cast<std::size_t>(n)]));
}

bool Series::coeff_is_zero(std::int64_t n) const {
  if (n < 0 || n >= precision_)
    throw std::out_of_range("coefficient index beyond known precision");
  if (mod_ == 0) return sgn(big_[static_cast<std::size_t>(n)]) == 0;
  return res_[static_cast<std::size_t>(n)] == 0;
}

const std::vector<mpz_class>& Series::exact_coeffs() const {
  if (mod_ != 0) throw std::logic_error("series is modular, not exact");
  return big_;
}

const std::vector<std::uint64_t>& Series::residues() const {
  if (mod_ == 0) throw std::logic_error("series is exact, not modular");
  return res_;
}

namespace {

Harmonized harmonize(const Series& a, const Series& b) {
  std::int64_t n = std::min(a.precision(), b.precision());
  auto ma = a.modulus(), mb = b.modulus();
  if (ma && mb && *ma != *mb)
    throw std::invalid_argument("modulus mismatch: " + std::to_string(*ma) +
                                " vs " + std::to_string(*mb));
  std::uint64_t m = ma ? *ma : (mb ? *mb : 0);
  Series lhs = (m != 0 && a.is_exact()) ? reduce_mod(a, m) : a;
  Series rhs = (m != 0 && b.is_exact()) ? reduce_mod(b, m) : b;
  return Harmonized{truncate(lhs, n), truncate(rhs, n), m};
}

std::vector<std::pair<std::int64_t, std::uint64_t>> nonzeros_mod(
    const std::vector<std::uint64_t>& v) {
  std::vector<std::pair<std::int64_t, std::uint64_t>> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out.emplace_back(static_cast<std::int64_t>(i), v[i]);
  return out;
}

std::vector<std::int64_t> nonzeros_exact(const std::vector<mpz_class>& v) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

// Cauchy product truncated to n coefficients, iterating over the sparser
// operand's support.  Pentagonal-type factors make this the workhorse for
// eta quotients.
std::vector<mpz_class> conv_exact(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b,
                                  std::int64_t n) {
  auto nza = nonzeros_exact(a);
  auto nzb = nonzeros_exact(b);
  const bool a_outer = nza.size() <= nzb.size();
  const auto& outer = a_outer ? a : b;
  const auto& inner = a_outer ? b : a;
  const auto& nz = a_outer ? nza : nzb;
  std::vector<mpz_class> out(static_cast<std::size_t>(n), mpz_class(0));
  for (std::int64_t i : nz) {
    if (i >= n) break;
    const mpz_class& v = outer[static_cast<std::size_t>(i)];
    std::int64_t jmax = std::min<std::int64_t>(
        static_cast<std::int64_t>(inner.size()), n - i);
    for (std::int64_t j = 0; j < jmax; ++j) {
      const mpz_class& w = inner[static_cast<std::size_t>(j)];
      if (sgn(w) != 0)
        mpz_addmul(out[static_cast<std::size_t>(i + j)].get_mpz_t(),
                   v.get_mpz_t(), w.get_mpz_t());
    }
  }
  return out;
}

std::vector<std::uint64_t> conv_mod(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b,
                                    std::int64_t n, std::uint64_t m) {
  auto nza = nonzeros_mod(a);
  auto nzb = nonzeros_mod(b);
  const bool a_outer = nza.size() <= nzb.size();
  const auto& inner = a_outer ? b : a;
  const auto& nz = a_outer ? nza : nzb;
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n), 0);
  if (m <= (std::uint64_t{1} << 32)) {
    // Products fit in 64 bits; accumulate per output index in 128 bits and
    // reduce once.
    for (std::int64_t k = 0; k < n; ++k) {
      unsigned __int128 acc = 0;
      for (const auto& [i, v] : nz) {
        if (i > k) break;
        std::int64_t j = k - i;
        if (j < static_cast<std::int64_t>(inner.size()))
          acc += static_cast<unsigned __int128>(v) *
                 inner[static_cast<std::size_t>(j)];
      }
      out[static_cast<std::size_t>(k)] = static_cast<std::uint64_t>(acc % m);
    }
  } else {
    for (std::int64_t k = 0; k < n; ++k) {
      std::uint64_t acc = 0;
      for (const auto& [i, v] : nz) {
        if (i > k) break;
        std::int64_t j = k - i;
        if (j < static_cast<std::int64_t>(inner.size()))
          acc = add_mod(acc, mul_mod(v, inner[static_cast<std::size_t>(j)], m), m);
      }
      out[static_cast<std::size_t>(k)] = acc;
    }
  }
  return out;
}

}  // namespace

Series add(const Series& a, const Series& b) {
  Harmonized h = harmonize(a, b);
  std::int64_t n = h.lhs.precision();
  if (h.mod == 0) {
    std::vector<mpz_class> out(h.lhs.exact_coeffs());
    const auto& bc = h.rhs.exact_coeffs();
    for (std::int64_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] += bc[static_cast<std::size_t>(i)];
    return Series::from_coeffs(std::move(out));
  }
  std::vector<std::uint64_t> out(h.lhs.residues());
  const auto& bc = h.rhs.residues();
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        add_mod(out[static_cast<std::size_t>(i)], bc[static_cast<std::size_t>(i)], h.mod);
  return Series::from_residues(std::move(out), h.mod);
}

Series sub(const Series& a, const Series& b) {
  Harmonized h = harmonize(a, b);
  std::int64_t n = h.lhs.precision();
  if (h.mod == 0) {
    std::vector<mpz_class> out(h.lhs.exact_coeffs());
    const auto& bc = h.rhs.exact_coeffs();
    for (std::int64_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(i)] -= bc[static_cast<std::size_t>(i)];
    return Series::from_coeffs(std::move(out));
  }
  std::vector<std::uint64_t> out(h.lhs.residues());
  const auto& bc = h.rhs.residues();
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        sub_mod(out[static_cast<std::size_t>(i)], bc[static_cast<std::size_t>(i)], h.mod);
  return Series::from_residues(std::move(out), h.mod);
}

Series scalar_mul(const mpz_class& c, const Series& a) {
  if (a.is_exact()) {
    std::vector<mpz_class> out(a.exact_coeffs());
    for (auto& x : out) x *= c;
    return Series::from_coeffs(std::move(out));
  }
  std::uint64_t m = *a.modulus();
  std::uint64_t cr = mod_of(c, m);
  std::vector<std::uint64_t> out(a.residues());
  for (auto& x : out) x = mul_mod(x, cr, m);
  return Series::from_residues(std::move(out), m);
}

Series negate(const Series& a) { return scalar_mul(-1, a); }

Series mul(const Series& a, const Series& b) {
  Harmonized h = harmonize(a, b);
  std::int64_t n = h.lhs.precision();
  if (h.mod == 0)
    return Series::from_coeffs(
        conv_exact(h.lhs.exact_coeffs(), h.rhs.exact_coeffs(), n));
  return Series::from_residues(
      conv_mod(h.lhs.residues(), h.rhs.residues(), n, h.mod), h.mod);
}

Series div(const Series& a, const Series& b) {
  Harmonized h = harmonize(a, b);
  std::int64_t n = h.lhs.precision();
  if (h.mod == 0) {
    const auto& ac = h.lhs.exact_coeffs();
    const auto& bc = h.rhs.exact_coeffs();
    const mpz_class& b0 = bc[0];
    if (b0 != 1 && b0 != -1)
      throw std::invalid_argument(
          "exact division needs constant term +-1, got " + b0.get_str());
    auto nzb = nonzeros_exact(bc);  // includes index 0
    std::vector<mpz_class> out(static_cast<std::size_t>(n), mpz_class(0));
    mpz_class acc;
    for (std::int64_t k = 0; k < n; ++k) {
      acc = ac[static_cast<std::size_t>(k)];
      for (std::int64_t i : nzb) {
        if (i == 0) continue;
        if (i > k) break;
        mpz_submul(acc.get_mpz_t(), bc[static_cast<std::size_t>(i)].get_mpz_t(),
                   out[static_cast<std::size_t>(k - i)].get_mpz_t());
      }
      out[static_cast<std::size_t>(k)] = (b0 == 1) ? acc : -acc;
    }
    return Series::from_coeffs(std::move(out));
  }
  const auto& ac = h.lhs.residues();
  const auto& bc = h.rhs.residues();
  std::uint64_t m = h.mod;
  std::uint64_t inv_b0 = inv_mod(bc[0], m);
  auto nzb = nonzeros_mod(bc);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n), 0);
  const bool small = m <= (std::uint64_t{1} << 32);
  for (std::int64_t k = 0; k < n; ++k) {
    std::uint64_t s;
    if (small) {
      unsigned __int128 acc = 0;
      for (const auto& [i, v] : nzb) {
        if (i == 0) continue;
        if (i > k) break;
        acc += static_cast<unsigned __int128>(v) *
               out[static_cast<std::size_t>(k - i)];
      }
      s = static_cast<std::uint64_t>(acc % m);
    } else {
      s = 0;
      for (const auto& [i, v] : nzb) {
        if (i == 0) continue;
        if (i > k) break;
        s = add_mod(s, mul_mod(v, out[static_cast<std::size_t>(k - i)], m), m);
      }
    }
    out[static_cast<std::size_t>(k)] =
        mul_mod(sub_mod(ac[static_cast<std::size_t>(k)], s, m), inv_b0, m);
  }
  return Series::from_residues(std::move(out), m);
}

Series invert(const Series& a) {
  return div(Series::one(a.precision(), a.modulus()), a);
}

Series pow(const Series& a, std::int64_t e) {
  if (e == 0) return Series::one(a.precision(), a.modulus());
  Series base = e < 0 ? invert(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1
                          : static_cast<std::uint64_t>(e);
  Series result = Series::one(a.precision(), a.modulus());
  bool result_is_one = true;
  while (k > 0) {
    if (k & 1) {
      result = result_is_one ? base : mul(result, base);
      result_is_one = false;
    }
    k >>= 1;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

Series shift(const Series& a, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("shift offset must be >= 0");
  std::int64_t n = a.precision() + m;
  if (a.is_exact()) {
    std::vector<mpz_class> out(static_cast<std::size_t>(n), mpz_class(0));
    const auto& ac = a.exact_coeffs();
    for (std::int64_t i = 0; i < a.precision(); ++i)
      out[static_cast<std::size_t>(i + m)] = ac[static_cast<std::size_t>(i)];
    return Series::from_coeffs(std::move(out));
  }
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n), 0);
  const auto& ac = a.residues();
  for (std::int64_t i = 0; i < a.precision(); ++i)
    out[static_cast<std::size_t>(i + m)] = ac[static_cast<std::size_t>(i)];
  return Series::from_residues(std::move(out), *a.modulus());
}

Series substitute(const Series& a, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("substitution power must be >= 1");
  if (k > kMaxPrecision / a.precision())
    throw std::length_error("substitution would overflow precision");
  std::int64_t n = a.precision() * k;
  check_precision(n);
  if (a.is_exact()) {
    std::vector<mpz_class> out(static_cast<std::size_t>(n), mpz_class(0));
    const auto& ac = a.exact_coeffs();
    for (std::int64_t i = 0; i < a.precision(); ++i)
      out[static_cast<std::size_t>(i * k)] = ac[static_cast<std::size_t>(i)];
    return Series::from_coeffs(std::move(out));
  }
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n), 0);
  const auto& ac = a.residues();
  for (std::int64_t i = 0; i < a.precision(); ++i)
    out[static_cast<std::size_t>(i * k)] = ac[static_cast<std::size_t>(i)];
  return Series::from_residues(std::move(out), *a.modulus());
}

Series negate_q(const Series& a) {
  if (a.is_exact()) {
    std::vector<mpz_class> out(a.exact_coeffs());
    for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
    return Series::from_coeffs(std::move(out));
  }
  std::uint64_t m = *a.modulus();
  std::vector<std::uint64_t> out(a.residues());
  for (std::size_t i = 1; i < out.size(); i += 2)
    out[i] = out[i] == 0 ? 0 : m - out[i];
  return Series::from_residues(std::move(out), m);
}

Series extract_ap(const Series& a, std::int64_t step, std::int64_t offset) {
  if (step < 1) throw std::invalid_argument("extraction step must be >= 1");
  if (offset < 0 || offset >= step)
    throw std::invalid_argument("extraction offset must satisfy 0 <= offset < step");
  if (a.precision() <= offset)
    throw std::invalid_argument(
        "series precision " + std::to_string(a.precision()) +
        " too small to extract offset " + std::to_string(offset));
  std::int64_t n = (a.precision() - offset + step - 1) / step;
  if (a.is_exact()) {
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(n));
    const auto& ac = a.exact_coeffs();
    for (std::int64_t i = 0; i < n; ++i)
      out.push_back(ac[static_cast<std::size_t>(step * i + offset)]);
    return Series::from_coeffs(std::move(out));
  }
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  const auto& ac = a.residues();
  for (std::int64_t i = 0; i < n; ++i)
    out.push_back(ac[static_cast<std::size_t>(step * i + offset)]);
  return Series::from_residues(std::move(out), *a.modulus());
}

Series reduce_mod(const Series& a, std::uint64_t m) {
  check_modulus(m);
  if (a.is_exact()) {
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(a.precision()));
    for (const auto& c : a.exact_coeffs()) out.push_back(mod_of(c, m));
    return Series::from_residues(std::move(out), m);
  }
  std::uint64_t old = *a.modulus();
  if (old == m) return a;
  if (old % m != 0)
    throw std::invalid_argument("cannot reduce mod " + std::to_string(m) +
                                ": existing modulus " + std::to_string(old) +
                                " is not a multiple");
  std::vector<std::uint64_t> out(a.residues());
  for (auto& x : out) x %= m;
  return Series::from_residues(std::move(out), m);
}

Series truncate(const Series& a, std::int64_t precision) {
  check_precision(precision);
  if (precision > a.precision())
    throw std::invalid_argument("cannot extend a series by truncation");
  if (precision == a.precision()) return a;
  if (a.is_exact()) {
    const auto& ac = a.exact_coeffs();
    return Series::from_coeffs(
        std::vector<mpz_class>(ac.begin(), ac.begin() + precision));
  }
  const auto& ac = a.residues();
  return Series::from_residues(
      std::vector<std::uint64_t>(ac.begin(), ac.begin() + precision),
      *a.modulus());
}

mpz_class coeff(const Series& a, std::int64_t n) { return a.coeff(n); }

bool agree_to(const Series& a, const Series& b, std::int64_t n) {
  return !first_mismatch(a, b, n).has_value();
}

std::optional<std::int64_t> first_mismatch(const Series& a, const Series& b,
                                           std::int64_t n) {
  if (n < 1) throw std::invalid_argument("comparison target must be >= 1");
  if (a.precision() < n || b.precision() < n)
    throw std::invalid_argument(
        "comparison to " + std::to_string(n) + " coefficients needs both series that long (have " +
        std::to_string(a.precision()) + " and " + std::to_string(b.precision()) + ")");
  for (std::int64_t i = 0; i < n; ++i)
    if (a.coeff(i) != b.coeff(i)) return i;
  return std::nullopt;
}

bool is_zero_to(const Series& a, std::int64_t n) {
  if (a.precision() < n)
    throw std::invalid_argument("zero test beyond known precision");
  for (std::int64_t i = 0; i < n; ++i)
    if (!a.coeff_is_zero(i)) return false;
  return true;
}

std::string to_string(const Series& a, std::int64_t max_terms) {
  std::ostringstream os;
  bool first = true;
  std::int64_t shown = 0;
  for (std::int64_t i = 0; i < a.precision() && shown < max_terms; ++i) {
    if (a.coeff_is_zero(i)) continue;
    mpz_class c = a.coeff(i);
    if (first) {
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
      c = abs(c);
    }
    if (i == 0)
      os << c.get_str();
    else if (c == 1)
      os << "q" << (i == 1 ? "" : "^" + std::to_string(i));
    else
      os << c.get_str() << "*q" << (i == 1 ? "" : "^" + std::to_string(i));
    ++shown;
  }
  if (first) os << "0";
  os << " + O(q^" << a.precision() << ")";
  return os.str();
}

}  // namespace qcong
