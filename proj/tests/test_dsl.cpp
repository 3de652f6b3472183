#include "qcong/dsl.hpp"

#include <random>

#include "doctest.h"
#include "qcong/qproducts.hpp"
#include "qcong/special_series.hpp"

using namespace qcong;
using namespace qcong::dsl;

namespace {

std::vector<long> prefix(const Series& s, std::int64_t n) {
  std::vector<long> out;
  for (std::int64_t i = 0; i < n; ++i) out.push_back(s.coeff(i).get_si());
  return out;
}

Series eval_str(const std::string& text, std::int64_t n,
                std::optional<std::uint64_t> mod = {}) {
  Environment env;
  return evaluate(*parse_expr(text), n, env, mod);
}

ExprPtr random_expr(std::mt19937_64& rng, int depth) {
  SourcePos pos;
  auto leaf = [&]() -> ExprPtr {
    switch (rng() % 5) {
      case 0:
        return std::make_shared<Expr>(
            IntLit{mpz_class(static_cast<long>(rng() % 1000))}, pos);
      case 1: return std::make_shared<Expr>(QVar{}, pos);
      case 2:
        return std::make_shared<Expr>(
            EAtom{1 + static_cast<std::int64_t>(rng() % 30)}, pos);
      case 3:
        return std::make_shared<Expr>(
            JAtom{1 + static_cast<std::int64_t>(rng() % 5),
                  1 + static_cast<std::int64_t>(rng() % 7)},
            pos);
      default: {
        static const char* names[] = {"T",  "K",   "PHI",  "PSI",
                                      "OMEGA", "NU", "PNU", "x_17"};
        return std::make_shared<Expr>(NameRef{names[rng() % 8]}, pos);
      }
    }
  };
  if (depth <= 0) return leaf();
  switch (rng() % 8) {
    case 0: return leaf();
    case 1:
      return std::make_shared<Expr>(Neg{random_expr(rng, depth - 1)}, pos);
    case 2:
      return std::make_shared<Expr>(NegQ{random_expr(rng, depth - 1)}, pos);
    case 3: {
      const char ops[] = {'+', '-', '*', '/'};
      return std::make_shared<Expr>(
          Binary{ops[rng() % 4], random_expr(rng, depth - 1),
                 random_expr(rng, depth - 1)},
          pos);
    }
    case 4:
      return std::make_shared<Expr>(
          PowOp{random_expr(rng, depth - 1),
                static_cast<std::int64_t>(rng() % 19) - 9},
          pos);
    case 5: {
      std::int64_t step = 1 + static_cast<std::int64_t>(rng() % 9);
      std::int64_t offset =
          static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(step));
      return std::make_shared<Expr>(
          ApOp{step, offset, random_expr(rng, depth - 1)}, pos);
    }
    case 6:
      return std::make_shared<Expr>(
          SubstOp{1 + static_cast<std::int64_t>(rng() % 6),
                  random_expr(rng, depth - 1)},
          pos);
    default: {
      return std::make_shared<Expr>(
          Binary{'*', random_expr(rng, depth - 1), random_expr(rng, depth - 1)},
          pos);
    }
  }
}

}  // namespace

TEST_CASE("parse builds the expected structure") {
  ExprPtr e = parse_expr("5*(E5^5/E1^6)");
  const auto* mul_node = std::get_if<Binary>(&e->node());
  REQUIRE(mul_node != nullptr);
  CHECK(mul_node->op == '*');
  CHECK(std::get<IntLit>(mul_node->lhs->node()).value == 5);
  const auto* div_node = std::get_if<Binary>(&mul_node->rhs->node());
  REQUIRE(div_node != nullptr);
  CHECK(div_node->op == '/');
  const auto* p1 = std::get_if<PowOp>(&div_node->lhs->node());
  REQUIRE(p1 != nullptr);
  CHECK(p1->exponent == 5);
  CHECK(std::get<EAtom>(p1->base->node()).index == 5);
  const auto* p2 = std::get_if<PowOp>(&div_node->rhs->node());
  REQUIRE(p2 != nullptr);
  CHECK(p2->exponent == 6);
  CHECK(std::get<EAtom>(p2->base->node()).index == 1);
}

TEST_CASE("parse statements") {
  ParsedLine line =
      parse_line("id rama-beautiful: AP(5,4; 1/E1) == 5*E5^5/E1^6");
  const auto* stmt = std::get_if<Statement>(&line);
  REQUIRE(stmt != nullptr);
  CHECK(stmt->name == "rama-beautiful");
  CHECK(stmt->kind == StatementKind::kIdentity);
  CHECK(!stmt->modulus.has_value());

  ParsedLine cong = parse_line("cong binomial: E1^5 == E5 (mod 5)");
  const auto* cstmt = std::get_if<Statement>(&cong);
  REQUIRE(cstmt != nullptr);
  CHECK(cstmt->kind == StatementKind::kCongruence);
  CHECK(cstmt->modulus == 5);

  ParsedLine let = parse_line("let x = T");
  CHECK(std::get_if<LetBinding>(&let) != nullptr);

  // Names may carry digits and hyphens.
  ParsedLine named = parse_line("cong 25a-check: E1 == E1 (mod 5)");
  CHECK(std::get<Statement>(named).name == "25a-check");
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_expr("AP(2,7; E1)"), ParseError);
  CHECK_THROWS_AS(parse_expr("E1 +"), ParseError);
  CHECK_THROWS_AS(parse_expr("sub(0; E1)"), ParseError);
  CHECK_THROWS_AS(parse_expr("@"), ParseError);
  CHECK_THROWS_AS(parse_line("cong no-mod: E1 == E5"), ParseError);
  CHECK_THROWS_AS(parse_line("id with-mod: E1 == E5 (mod 5)"), ParseError);
  try {
    parse_expr("1 + $");
    FAIL("expected ParseError");
  } catch (const ParseError& ex) {
    CHECK(ex.position.line == 1);
    CHECK(ex.position.column == 5);
  }
}

TEST_CASE("required_precision demand propagation") {
  auto d1 = required_precision(*parse_expr("AP(25,4; E1)"), 100);
  CHECK(d1.at("E1") == 2480);
  auto d2 = required_precision(*parse_expr("sub(5; E1)"), 100);
  CHECK(d2.at("E1") == 20);
  auto d3 = required_precision(*parse_expr("E1"), 37);
  CHECK(d3.at("E1") == 37);
  auto d4 = required_precision(*parse_expr("AP(50,8; PNU) - sub(2; PNU)"), 10);
  CHECK(d4.at("PNU") == 50 * 9 + 8 + 1);
}

TEST_CASE("evaluate expressions") {
  CHECK(prefix(eval_str("E2^3/E1^2", 5), 5) ==
        std::vector<long>{1, 2, 2, 4, 5});
  CHECK(prefix(eval_str("PHI", 5), 5) == std::vector<long>{1, -2, 0, 0, 2});
  Series t2 = eval_str("sub(2; T)", 8);
  Series t = t_series(4);
  for (std::int64_t i = 0; i < 4; ++i) {
    CHECK(t2.coeff(2 * i) == t.coeff(i));
    if (2 * i + 1 < 8) CHECK(t2.coeff(2 * i + 1) == 0);
  }
  CHECK(prefix(eval_str("neg(q)", 3), 3) == std::vector<long>{0, -1, 0});
  CHECK(prefix(eval_str("negq(1 + q + q^2)", 3), 3) ==
        std::vector<long>{1, -1, 1});
  CHECK(prefix(eval_str("2^10", 3), 3) == std::vector<long>{1024, 0, 0});
}

TEST_CASE("evaluate with let bindings and builtins") {
  Environment env;
  env.bind("x", parse_expr("T"));
  env.bind("y", parse_expr("sub(2; T)"));
  Series xy2 = evaluate(*parse_expr("x*y^2"), 30, env);
  Series direct = mul(t_series(30), pow(truncate(substitute(t_series(15), 2), 30), 2));
  CHECK(agree_to(xy2, direct, 30));

  CHECK_THROWS_WITH_AS(evaluate(*parse_expr("nosuch"), 5, env),
                       "unbound name 'nosuch'", std::invalid_argument);
  CHECK_THROWS_AS(env.bind("x", parse_expr("K")), std::invalid_argument);
  CHECK_THROWS_AS(env.bind("PNU", parse_expr("K")), std::invalid_argument);
}

TEST_CASE("evaluate PNU and POMEGA builtins") {
  Environment env;
  CHECK(agree_to(evaluate(*parse_expr("PNU"), 20, env), p_nu_series(20), 20));
  CHECK(agree_to(evaluate(*parse_expr("POMEGA"), 20, env),
                 p_omega_series(20), 20));
  CHECK(agree_to(evaluate(*parse_expr("SPTW"), 20, env), sptw_odd_series(20),
                 20));
  CHECK(agree_to(evaluate(*parse_expr("SPTBARW"), 20, env),
                 sptbarw_odd_series(20), 20));
}

TEST_CASE("division by a non-unit series fails") {
  Environment env;
  CHECK_THROWS_AS(evaluate(*parse_expr("1/(q + q^2)"), 5, env),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate(*parse_expr("1/(2 + q)"), 5, env),
                  std::invalid_argument);
}

TEST_CASE("check verifies identities and congruences") {
  Environment env;
  auto rama = std::get<Statement>(
      parse_line("id rama: AP(5,4; 1/E1) == 5*E5^5/E1^6"));
  CheckOutcome ok = check(rama, 100, env);
  CHECK(ok.pass);
  CHECK(ok.precision == 100);

  auto bad = std::get<Statement>(parse_line("id bad: E1 == E2"));
  CheckOutcome fail = check(bad, 2, env);
  CHECK(!fail.pass);
  CHECK(fail.first_fail_index == 1);
  CHECK(fail.lhs_coeff == "-1");
  CHECK(fail.rhs_coeff == "0");

  auto binom = std::get<Statement>(
      parse_line("cong binomial: E1^5 == E5 (mod 5)"));
  CHECK(check(binom, 200, env).pass);
}

TEST_CASE("check wraps evaluation errors with the statement name") {
  Environment env;
  auto stmt = std::get<Statement>(parse_line("id broken: missing == E1"));
  CHECK_THROWS_AS(check(stmt, 5, env), StatementError);
  try {
    check(stmt, 5, env);
  } catch (const StatementError& ex) {
    CHECK(ex.statement_name == "broken");
  }
}

TEST_CASE("modular identity evaluation passes whenever exact does") {
  Environment env;
  env.bind("x", parse_expr("T"));
  env.bind("y", parse_expr("sub(2; T)"));
  for (const char* text :
       {"id a: AP(5,4; 1/E1) == 5*E5^5/E1^6",
        "id b: PSI == E2^2/E1",
        "id c: x*y^2 - q^2/(x*y^2) == K"}) {
    auto stmt = std::get<Statement>(parse_line(text));
    CHECK(check(stmt, 60, env).pass);
    Series lhs = evaluate(*stmt.lhs, 60, env, 7);
    Series rhs = evaluate(*stmt.rhs, 60, env, 7);
    CHECK(agree_to(lhs, rhs, 60));
  }
}

TEST_CASE("unparse parses back to the same tree") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 300; ++trial) {
    ExprPtr e = random_expr(rng, 4);
    std::string text = unparse(*e);
    CAPTURE(text);
    ExprPtr back = parse_expr(text);
    CHECK(equal(*e, *back));
  }
}

TEST_CASE("unparse statements round trip") {
  for (const char* text :
       {"id rama: AP(5,4; 1/E1) == 5*E5^5/E1^6",
        "cong binomial: E1^5 == E5 (mod 5)"}) {
    auto stmt = std::get<Statement>(parse_line(text));
    auto again = std::get<Statement>(parse_line(unparse(stmt)));
    CHECK(stmt.name == again.name);
    CHECK(stmt.kind == again.kind);
    CHECK(stmt.modulus == again.modulus);
    CHECK(equal(*stmt.lhs, *again.lhs));
    CHECK(equal(*stmt.rhs, *again.rhs));
  }
}

TEST_CASE("atom cache serves deeper evaluations to shallower requests") {
  Environment env;
  AtomCache cache;
  Series deep = evaluate(*parse_expr("PNU"), 120, env, {}, &cache);
  Series shallow = evaluate(*parse_expr("PNU"), 30, env, {}, &cache);
  CHECK(shallow.precision() >= 30);
  CHECK(agree_to(deep, shallow, 30));
}
