#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcong/series.hpp"

namespace qcong::dsl {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IntLit {
  mpz_class value;
};
struct QVar {};
struct EAtom {
  std::int64_t index;  // E_j
};
struct JAtom {
  std::int64_t a, b;  // (q^a; q^b)_inf
};
struct NameRef {
  std::string name;  // built-in atom or let-bound name
};
struct Neg {
  ExprPtr operand;
};
struct NegQ {
  ExprPtr operand;  // q -> -q
};
struct Binary {
  char op;  // one of + - * /
  ExprPtr lhs, rhs;
};
struct PowOp {
  ExprPtr base;
  std::int64_t exponent;  // literal, possibly negative
};
struct ApOp {
  std::int64_t step, offset;
  ExprPtr operand;
};
struct SubstOp {
  std::int64_t power;  // q -> q^power
  ExprPtr operand;
};

class Expr {
 public:
  using Node = std::variant<IntLit, QVar, EAtom, JAtom, NameRef, Neg, NegQ,
                            Binary, PowOp, ApOp, SubstOp>;

  Expr(Node node, SourcePos pos) : node_(std::move(node)), pos_(pos) {}

  const Node& node() const { return node_; }
  const SourcePos& pos() const { return pos_; }

 private:
  Node node_;
  SourcePos pos_;
};

/// Structural equality; source positions are ignored.
bool equal(const Expr& a, const Expr& b);

enum class StatementKind { kIdentity, kCongruence };

struct Statement {
  std::string name;
  StatementKind kind = StatementKind::kIdentity;
  ExprPtr lhs, rhs;
  std::optional<std::uint64_t> modulus;  // present iff congruence
};

struct LetBinding {
  std::string name;
  ExprPtr value;
};

using ParsedLine = std::variant<LetBinding, Statement>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourcePos pos);
  SourcePos position;
};

/// Parses a single expression.
ExprPtr parse_expr(std::string_view text);

/// Parses one `let` binding or one `id`/`cong` statement.
ParsedLine parse_line(std::string_view text);

std::string unparse(const Expr& expr);
std::string unparse(const Statement& stmt);

/// Top-down demand propagation: how many coefficients each atom must supply
/// so that the whole expression is good to `target` coefficients.
std::map<std::string, std::int64_t> required_precision(const Expr& expr,
                                                       std::int64_t target);

/// Names with built-in evaluation rules (beyond E_j and J(a,b)):
/// T, K, PHI, PSI, OMEGA, NU, PNU, POMEGA, SPTW, SPTBARW.
bool is_builtin_atom(const std::string& name);

/// Let-bindings visible to the evaluator.
class Environment {
 public:
  void bind(const std::string& name, ExprPtr value);
  const ExprPtr* lookup(const std::string& name) const;
  bool contains(const std::string& name) const;

 private:
  std::map<std::string, ExprPtr> bindings_;
};

/// Remembers the deepest evaluation of each named atom per modulus so
/// repeated statements share work.  Safe to use from several threads.
class AtomCache {
 public:
  std::optional<Series> find(const std::string& key, std::uint64_t modulus,
                             std::int64_t min_precision) const;
  void store(const std::string& key, std::uint64_t modulus,
             const Series& value);

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::uint64_t>, Series> best_;
};

/// Evaluates to a series with precision >= target.  With a modulus the whole
/// evaluation runs in modular mode.
Series evaluate(const Expr& expr, std::int64_t target, const Environment& env,
                std::optional<std::uint64_t> modulus = {},
                AtomCache* cache = nullptr);

struct CheckOutcome {
  std::string name;
  StatementKind kind = StatementKind::kIdentity;
  std::optional<std::uint64_t> modulus;
  std::int64_t precision = 0;
  bool pass = false;
  std::optional<std::int64_t> first_fail_index;
  std::string lhs_coeff, rhs_coeff;  // at the first failing index
  double millis = 0.0;
};

/// Error from inside check(), carrying the statement name.
class StatementError : public std::runtime_error {
 public:
  StatementError(const std::string& statement, const std::string& message);
  std::string statement_name;
};

/// Verifies lhs == rhs to `target` coefficients (identities exactly,
/// congruences mod M end to end).
CheckOutcome check(const Statement& stmt, std::int64_t target,
                   const Environment& env, AtomCache* cache = nullptr);

}  // namespace qcong::dsl
