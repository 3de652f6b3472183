#include "qcong/special_series.hpp"

#include "doctest.h"
#include "qcong/qproducts.hpp"
#include "qcong/series.hpp"

using namespace qcong;

namespace {

std::vector<long> prefix(const Series& s, std::int64_t n) {
  std::vector<long> out;
  for (std::int64_t i = 0; i < n; ++i) out.push_back(s.coeff(i).get_si());
  return out;
}

}  // namespace

TEST_CASE("omega expansion") {
  Series w = omega_series(30);
  CHECK(prefix(w, 6) == std::vector<long>{1, 2, 3, 4, 6, 8});
  CHECK(w.coeff(0) == 1);
  // First case of the mod-5 congruence on the omega coefficients themselves.
  CHECK(omega_series(28).coeff(27) % 5 == 0);
}

TEST_CASE("nu and p_nu expansions") {
  Series pnu = p_nu_series(10);
  CHECK(prefix(pnu, 7) == std::vector<long>{1, 1, 2, 2, 2, 3, 4});
  CHECK(p_nu_series(9).coeff(8) == 5);

  Series even = extract_ap(p_nu_series(2 * 60), 2, 0);
  CHECK(agree_to(even, eta_quotient(EtaExponentMap{{2, 3}, {1, -2}}, 60), 60));

  // nu(-q) written via negate_q directly.
  CHECK(prefix(negate_q(nu_series(6)), 6) ==
        std::vector<long>{1, 1, 2, 2, 2, 3});
}

TEST_CASE("p_omega expansion and dissection") {
  Series pw = p_omega_series(40);
  CHECK(pw.coeff(0) == 0);
  CHECK(pw.coeff(4) == 4);
  CHECK(pw.coeff(12) == 36);

  Series part = extract_ap(p_omega_series(8 * 50 + 5), 8, 4);
  Series rhs = scalar_mul(4, eta_quotient(EtaExponentMap{{2, 10}, {1, -9}}, 50));
  CHECK(agree_to(part, rhs, 50));
}

TEST_CASE("spt series at odd arguments") {
  Series sptw = sptw_odd_series(12);
  CHECK(prefix(sptw, 3) == std::vector<long>{1, 5, 12});
  CHECK(sptw.coeff(11) == 1275);  // spt_omega(23)

  Series sptb = sptbarw_odd_series(13);
  CHECK(prefix(sptb, 3) == std::vector<long>{1, 6, 18});
  CHECK(sptb.coeff(12) == 8327);  // sptbar_omega(25)

  CHECK(agree_to(sptbarw_odd_series(40),
                 eta_quotient(EtaExponentMap{{2, 9}, {1, -6}}, 40), 40));
}

TEST_CASE("t_series and k_series") {
  Series t = t_series(10);
  CHECK(prefix(t, 5) == std::vector<long>{1, 1, 0, -1, 0});
  CHECK(t.coeff(0) == 1);
  CHECK(k_series(10).coeff(0) == 1);

  // K satisfies T(q) T(q^2)^2 - q^2 / (T(q) T(q^2)^2) == K.
  const std::int64_t n = 300;
  Series x = t_series(n);
  Series y = truncate(substitute(t_series((n + 1) / 2), 2), n);
  Series xy2 = mul(x, pow(y, 2));
  Series lhs = sub(xy2, mul(Series::monomial(1, 2, n), invert(xy2)));
  CHECK(agree_to(lhs, k_series(n), n));
}

TEST_CASE("nu relates to omega through the even part") {
  // nu(-q) == q*omega(q^2) + E4^3/E2^2 to 300 coefficients.
  const std::int64_t n = 300;
  Series lhs = p_nu_series(n);
  Series w2 = truncate(shift(substitute(omega_series((n + 1) / 2), 2), 1), n);
  Series rhs = add(w2, eta_quotient(EtaExponentMap{{4, 3}, {2, -2}}, n));
  CHECK(agree_to(lhs, rhs, n));
}

TEST_CASE("f_value on the 6m+1 progression") {
  CHECK(f_value(1) == 1);
  CHECK(f_value(7) == 2);
  CHECK(f_value(25) == 5);
  CHECK_THROWS_AS(f_value(2), std::invalid_argument);
  CHECK_THROWS_AS(f_value(9), std::invalid_argument);
  CHECK_THROWS_AS(f_value(-5), std::invalid_argument);
}

TEST_CASE("modular construction matches reduced exact construction") {
  for (std::uint64_t m : {5ull, 625ull}) {
    CHECK(agree_to(omega_series(50, m), reduce_mod(omega_series(50), m), 50));
    CHECK(agree_to(p_nu_series(50, m), reduce_mod(p_nu_series(50), m), 50));
    CHECK(agree_to(t_series(50, m), reduce_mod(t_series(50), m), 50));
  }
}

TEST_CASE("named_series covers every tag") {
  for (auto tag :
       {NamedSeriesTag::kOmega, NamedSeriesTag::kNu, NamedSeriesTag::kPNu,
        NamedSeriesTag::kPOmega, NamedSeriesTag::kSptwOdd,
        NamedSeriesTag::kSptbarwOdd, NamedSeriesTag::kT, NamedSeriesTag::kK,
        NamedSeriesTag::kPhi, NamedSeriesTag::kPsi}) {
    Series s = named_series(tag, 20);
    CHECK(s.precision() >= 20);
  }
}
