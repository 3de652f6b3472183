#include "qcong/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <sstream>

#include "qcong/qproducts.hpp"
#include "qcong/special_series.hpp"

namespace qcong::dsl {

ParseError::ParseError(const std::string& message, SourcePos pos)
    : std::runtime_error(std::to_string(pos.line) + ":" +
                         std::to_string(pos.column) + ": " + message),
      position(pos) {}

StatementError::StatementError(const std::string& statement,
                               const std::string& message)
    : std::runtime_error(statement + ": " + message),
      statement_name(statement) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  kInt,
  kIdent,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kLParen,
  kRParen,
  kComma,
  kSemi,
  kColon,
  kAssign,
  kEqEq,
  kEnd,
};

struct Token {
  Tok type = Tok::kEnd;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  SourcePos here() const { return current_.pos; }

  // Scans a statement name: everything up to the next ':', trimmed.
  std::string scan_raw_name() {
    // Reconstruct from the raw text starting at the current token.
    std::size_t start = current_start_;
    std::size_t colon = text_.find(':', start);
    if (colon == std::string_view::npos)
      throw ParseError("expected ':' after statement name", current_.pos);
    std::string name(text_.substr(start, colon - start));
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
      name.pop_back();
    if (name.empty())
      throw ParseError("empty statement name", current_.pos);
    for (char c : name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_'))
        throw ParseError(std::string("invalid character '") + c +
                             "' in statement name",
                         current_.pos);
    pos_ = colon + 1;  // re-sync the lexer just past the colon
    advance();
    return name;
  }

 private:
  void advance() {
    skip_space();
    current_start_ = pos_;
    current_.pos = SourcePos{line_, column()};
    if (pos_ >= text_.size()) {
      current_.type = Tok::kEnd;
      current_.text.clear();
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      current_.type = Tok::kInt;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      current_.type = Tok::kIdent;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    ++pos_;
    switch (c) {
      case '+': current_.type = Tok::kPlus; break;
      case '-': current_.type = Tok::kMinus; break;
      case '*': current_.type = Tok::kStar; break;
      case '/': current_.type = Tok::kSlash; break;
      case '^': current_.type = Tok::kCaret; break;
      case '(': current_.type = Tok::kLParen; break;
      case ')': current_.type = Tok::kRParen; break;
      case ',': current_.type = Tok::kComma; break;
      case ';': current_.type = Tok::kSemi; break;
      case ':': current_.type = Tok::kColon; break;
      case '=':
        if (pos_ < text_.size() && text_[pos_] == '=') {
          ++pos_;
          current_.type = Tok::kEqEq;
        } else {
          current_.type = Tok::kAssign;
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         current_.pos);
    }
    current_.text = std::string(text_.substr(current_start_, pos_ - current_start_));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {  // comment to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  std::size_t current_start_ = 0;
  int line_ = 1;
  Token current_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  ExprPtr parse_full_expr() {
    ExprPtr e = expr();
    expect_end();
    return e;
  }

  ParsedLine parse_full_line() {
    Token t = lex_.peek();
    if (t.type != Tok::kIdent)
      throw ParseError("expected 'let', 'id' or 'cong'", t.pos);
    if (t.text == "let") {
      lex_.next();
      Token name = expect(Tok::kIdent, "binding name");
      if (is_reserved(name.text))
        throw ParseError("'" + name.text + "' is a reserved name", name.pos);
      expect(Tok::kAssign, "'='");
      ExprPtr value = expr();
      expect_end();
      return LetBinding{name.text, value};
    }
    if (t.text == "id" || t.text == "cong") {
      lex_.next();
      Statement stmt;
      stmt.kind = t.text == "id" ? StatementKind::kIdentity
                                 : StatementKind::kCongruence;
      stmt.name = lex_.scan_raw_name();
      stmt.lhs = expr();
      expect(Tok::kEqEq, "'=='");
      stmt.rhs = expr();
      if (lex_.peek().type == Tok::kLParen) {
        lex_.next();
        Token kw = expect(Tok::kIdent, "'mod'");
        if (kw.text != "mod") throw ParseError("expected 'mod'", kw.pos);
        Token m = expect(Tok::kInt, "modulus");
        mpz_class mz(m.text);
        if (mz < 2 || !mz.fits_ulong_p() ||
            mz.get_ui() > ((std::uint64_t{1} << 63) - 1))
          throw ParseError("modulus out of range", m.pos);
        stmt.modulus = static_cast<std::uint64_t>(mz.get_ui());
        expect(Tok::kRParen, "')'");
      }
      expect_end();
      if (stmt.kind == StatementKind::kCongruence && !stmt.modulus)
        throw ParseError("congruence statement needs a '(mod M)' suffix",
                         t.pos);
      if (stmt.kind == StatementKind::kIdentity && stmt.modulus)
        throw ParseError("identity statement takes no modulus", t.pos);
      return stmt;
    }
    throw ParseError("expected 'let', 'id' or 'cong', got '" + t.text + "'",
                     t.pos);
  }

 private:
  static bool is_reserved(const std::string& s) {
    return s == "q" || s == "mod" || s == "let" || s == "id" || s == "cong" ||
           s == "AP" || s == "sub" || s == "neg" || s == "negq" || s == "J" ||
           is_builtin_atom(s) ||
           (s.size() >= 2 && s[0] == 'E' &&
            std::all_of(s.begin() + 1, s.end(), [](char c) {
              return std::isdigit(static_cast<unsigned char>(c));
            }));
  }

  Token expect(Tok type, const std::string& what) {
    Token t = lex_.next();
    if (t.type != type)
      throw ParseError("expected " + what + ", got '" + t.text + "'", t.pos);
    return t;
  }

  void expect_end() {
    Token t = lex_.peek();
    if (t.type != Tok::kEnd)
      throw ParseError("unexpected trailing input '" + t.text + "'", t.pos);
  }

  std::int64_t expect_small_int(const std::string& what) {
    Token t = expect(Tok::kInt, what);
    mpz_class v(t.text);
    if (!v.fits_slong_p())
      throw ParseError(what + " out of range", t.pos);
    return static_cast<std::int64_t>(v.get_si());
  }

  ExprPtr expr() {
    SourcePos pos = lex_.here();
    ExprPtr lhs = term();
    while (lex_.peek().type == Tok::kPlus || lex_.peek().type == Tok::kMinus) {
      char op = lex_.next().type == Tok::kPlus ? '+' : '-';
      ExprPtr rhs = term();
      lhs = std::make_shared<Expr>(Binary{op, lhs, rhs}, pos);
    }
    return lhs;
  }

  ExprPtr term() {
    SourcePos pos = lex_.here();
    ExprPtr lhs = factor();
    while (lex_.peek().type == Tok::kStar || lex_.peek().type == Tok::kSlash) {
      char op = lex_.next().type == Tok::kStar ? '*' : '/';
      ExprPtr rhs = factor();
      lhs = std::make_shared<Expr>(Binary{op, lhs, rhs}, pos);
    }
    return lhs;
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (lex_.peek().type == Tok::kCaret) {
      SourcePos pos = lex_.next().pos;
      std::int64_t sign = 1;
      if (lex_.peek().type == Tok::kMinus) {
        lex_.next();
        sign = -1;
      } else if (lex_.peek().type == Tok::kPlus) {
        lex_.next();
      }
      std::int64_t e = expect_small_int("exponent");
      return std::make_shared<Expr>(PowOp{b, sign * e}, pos);
    }
    return b;
  }

  ExprPtr base() {
    Token t = lex_.peek();
    switch (t.type) {
      case Tok::kInt: {
        lex_.next();
        return std::make_shared<Expr>(IntLit{mpz_class(t.text)}, t.pos);
      }
      case Tok::kLParen: {
        lex_.next();
        ExprPtr e = expr();
        expect(Tok::kRParen, "')'");
        return e;
      }
      case Tok::kIdent:
        return ident_base();
      default:
        throw ParseError("expected a value, got '" + t.text + "'", t.pos);
    }
  }

  ExprPtr ident_base() {
    Token t = lex_.next();
    const std::string& s = t.text;
    if (s == "q") return std::make_shared<Expr>(QVar{}, t.pos);
    if (s.size() >= 2 && s[0] == 'E' &&
        std::all_of(s.begin() + 1, s.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        })) {
      mpz_class j(s.substr(1));
      if (!j.fits_slong_p() || j < 1)
        throw ParseError("bad eta index in '" + s + "'", t.pos);
      return std::make_shared<Expr>(EAtom{static_cast<std::int64_t>(j.get_si())},
                                    t.pos);
    }
    if (s == "J") {
      expect(Tok::kLParen, "'('");
      std::int64_t a = expect_small_int("Pochhammer exponent");
      expect(Tok::kComma, "','");
      std::int64_t b = expect_small_int("Pochhammer step");
      expect(Tok::kRParen, "')'");
      if (a < 1 || b < 1)
        throw ParseError("J(a,b) needs a >= 1 and b >= 1", t.pos);
      return std::make_shared<Expr>(JAtom{a, b}, t.pos);
    }
    if (s == "AP") {
      expect(Tok::kLParen, "'('");
      std::int64_t step = expect_small_int("progression step");
      expect(Tok::kComma, "','");
      std::int64_t offset = expect_small_int("progression offset");
      expect(Tok::kSemi, "';'");
      ExprPtr inner = expr();
      expect(Tok::kRParen, "')'");
      if (step < 1)
        throw ParseError("AP step must be >= 1", t.pos);
      if (offset < 0 || offset >= step)
        throw ParseError("AP offset must satisfy 0 <= offset < step", t.pos);
      return std::make_shared<Expr>(ApOp{step, offset, inner}, t.pos);
    }
    if (s == "sub") {
      expect(Tok::kLParen, "'('");
      std::int64_t k = expect_small_int("substitution power");
      expect(Tok::kSemi, "';'");
      ExprPtr inner = expr();
      expect(Tok::kRParen, "')'");
      if (k < 1) throw ParseError("sub power must be >= 1", t.pos);
      return std::make_shared<Expr>(SubstOp{k, inner}, t.pos);
    }
    if (s == "neg" || s == "negq") {
      expect(Tok::kLParen, "'('");
      ExprPtr inner = expr();
      expect(Tok::kRParen, "')'");
      if (s == "neg") return std::make_shared<Expr>(Neg{inner}, t.pos);
      return std::make_shared<Expr>(NegQ{inner}, t.pos);
    }
    return std::make_shared<Expr>(NameRef{s}, t.pos);
  }

  Lexer lex_;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) {
  return Parser(text).parse_full_expr();
}

ParsedLine parse_line(std::string_view text) {
  return Parser(text).parse_full_line();
}

// ---------------------------------------------------------------------------
// Structural equality and unparsing
// ---------------------------------------------------------------------------

bool equal(const Expr& a, const Expr& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& na) -> bool {
        using T = std::decay_t<decltype(na)>;
        const auto& nb = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, IntLit>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, QVar>) {
          return true;
        } else if constexpr (std::is_same_v<T, EAtom>) {
          return na.index == nb.index;
        } else if constexpr (std::is_same_v<T, JAtom>) {
          return na.a == nb.a && na.b == nb.b;
        } else if constexpr (std::is_same_v<T, NameRef>) {
          return na.name == nb.name;
        } else if constexpr (std::is_same_v<T, Neg>) {
          return equal(*na.operand, *nb.operand);
        } else if constexpr (std::is_same_v<T, NegQ>) {
          return equal(*na.operand, *nb.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return na.op == nb.op && equal(*na.lhs, *nb.lhs) &&
                 equal(*na.rhs, *nb.rhs);
        } else if constexpr (std::is_same_v<T, PowOp>) {
          return na.exponent == nb.exponent && equal(*na.base, *nb.base);
        } else if constexpr (std::is_same_v<T, ApOp>) {
          return na.step == nb.step && na.offset == nb.offset &&
                 equal(*na.operand, *nb.operand);
        } else {
          static_assert(std::is_same_v<T, SubstOp>);
          return na.power == nb.power && equal(*na.operand, *nb.operand);
        }
      },
      a.node());
}

namespace {

// Precedence levels: additive 1, multiplicative 2, power 3, atoms 4.
int precedence(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Binary>)
          return (n.op == '+' || n.op == '-') ? 1 : 2;
        else if constexpr (std::is_same_v<T, PowOp>)
          return 3;
        else
          return 4;
      },
      e.node());
}

void unparse_into(const Expr& e, std::ostringstream& os);

void child(const Expr& e, int min_prec, std::ostringstream& os) {
  if (precedence(e) < min_prec) {
    os << "(";
    unparse_into(e, os);
    os << ")";
  } else {
    unparse_into(e, os);
  }
}

void unparse_into(const Expr& e, std::ostringstream& os) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          os << n.value.get_str();
        } else if constexpr (std::is_same_v<T, QVar>) {
          os << "q";
        } else if constexpr (std::is_same_v<T, EAtom>) {
          os << "E" << n.index;
        } else if constexpr (std::is_same_v<T, JAtom>) {
          os << "J(" << n.a << "," << n.b << ")";
        } else if constexpr (std::is_same_v<T, NameRef>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, Neg>) {
          os << "neg(";
          unparse_into(*n.operand, os);
          os << ")";
        } else if constexpr (std::is_same_v<T, NegQ>) {
          os << "negq(";
          unparse_into(*n.operand, os);
          os << ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          // Operators are left-associative, so the right child needs parens
          // at equal precedence or the reparse would rebalance the tree.
          if (n.op == '+' || n.op == '-') {
            child(*n.lhs, 1, os);
            os << " " << n.op << " ";
            child(*n.rhs, 2, os);
          } else {
            child(*n.lhs, 2, os);
            os << n.op;
            child(*n.rhs, 3, os);
          }
        } else if constexpr (std::is_same_v<T, PowOp>) {
          child(*n.base, 4, os);
          os << "^" << n.exponent;
        } else if constexpr (std::is_same_v<T, ApOp>) {
          os << "AP(" << n.step << "," << n.offset << "; ";
          unparse_into(*n.operand, os);
          os << ")";
        } else {
          static_assert(std::is_same_v<T, SubstOp>);
          os << "sub(" << n.power << "; ";
          unparse_into(*n.operand, os);
          os << ")";
        }
      },
      e.node());
}

}  // namespace

std::string unparse(const Expr& expr) {
  std::ostringstream os;
  unparse_into(expr, os);
  return os.str();
}

std::string unparse(const Statement& stmt) {
  std::ostringstream os;
  os << (stmt.kind == StatementKind::kIdentity ? "id " : "cong ") << stmt.name
     << ": " << unparse(*stmt.lhs) << " == " << unparse(*stmt.rhs);
  if (stmt.modulus) os << " (mod " << *stmt.modulus << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Demand analysis and evaluation
// ---------------------------------------------------------------------------

namespace {

void collect_demands(const Expr& e, std::int64_t target,
                     std::map<std::string, std::int64_t>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        auto record = [&](const std::string& key) {
          auto [it, inserted] = out.emplace(key, target);
          if (!inserted) it->second = std::max(it->second, target);
        };
        if constexpr (std::is_same_v<T, EAtom>) {
          record("E" + std::to_string(n.index));
        } else if constexpr (std::is_same_v<T, JAtom>) {
          record("J(" + std::to_string(n.a) + "," + std::to_string(n.b) + ")");
        } else if constexpr (std::is_same_v<T, NameRef>) {
          record(n.name);
        } else if constexpr (std::is_same_v<T, Neg> ||
                             std::is_same_v<T, NegQ>) {
          collect_demands(*n.operand, target, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_demands(*n.lhs, target, out);
          collect_demands(*n.rhs, target, out);
        } else if constexpr (std::is_same_v<T, PowOp>) {
          collect_demands(*n.base, target, out);
        } else if constexpr (std::is_same_v<T, ApOp>) {
          collect_demands(*n.operand, n.step * (target - 1) + n.offset + 1,
                          out);
        } else if constexpr (std::is_same_v<T, SubstOp>) {
          collect_demands(*n.operand, (target + n.power - 1) / n.power, out);
        }
        // IntLit and QVar place no demands on atoms.
      },
      e.node());
}

const std::map<std::string, NamedSeriesTag>& builtin_table() {
  static const std::map<std::string, NamedSeriesTag> table = {
      {"T", NamedSeriesTag::kT},
      {"K", NamedSeriesTag::kK},
      {"PHI", NamedSeriesTag::kPhi},
      {"PSI", NamedSeriesTag::kPsi},
      {"OMEGA", NamedSeriesTag::kOmega},
      {"NU", NamedSeriesTag::kNu},
      {"PNU", NamedSeriesTag::kPNu},
      {"POMEGA", NamedSeriesTag::kPOmega},
      {"SPTW", NamedSeriesTag::kSptwOdd},
      {"SPTBARW", NamedSeriesTag::kSptbarwOdd},
  };
  return table;
}

struct EvalContext {
  const Environment* env;
  std::optional<std::uint64_t> modulus;
  AtomCache* cache;
};

Series eval_node(const Expr& e, std::int64_t target, EvalContext& ctx);

template <typename Build>
Series cached_atom(const std::string& key, std::int64_t target,
                   EvalContext& ctx, Build&& build) {
  std::uint64_t m = ctx.modulus.value_or(0);
  if (ctx.cache) {
    if (auto hit = ctx.cache->find(key, m, target)) return *hit;
  }
  Series s = build();
  if (ctx.cache) ctx.cache->store(key, m, s);
  return s;
}

Series eval_node(const Expr& e, std::int64_t target, EvalContext& ctx) {
  if (target < 1)
    throw std::invalid_argument("evaluation target must be >= 1");
  return std::visit(
      [&](const auto& n) -> Series {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          return Series::constant(n.value, target, ctx.modulus);
        } else if constexpr (std::is_same_v<T, QVar>) {
          return Series::var_q(target, ctx.modulus);
        } else if constexpr (std::is_same_v<T, EAtom>) {
          return cached_atom("E" + std::to_string(n.index), target, ctx, [&] {
            return eta(n.index, target, ctx.modulus);
          });
        } else if constexpr (std::is_same_v<T, JAtom>) {
          return cached_atom(
              "J(" + std::to_string(n.a) + "," + std::to_string(n.b) + ")",
              target, ctx,
              [&] { return pochhammer_inf(n.a, n.b, target, ctx.modulus); });
        } else if constexpr (std::is_same_v<T, NameRef>) {
          auto bt = builtin_table().find(n.name);
          if (bt != builtin_table().end()) {
            return cached_atom(n.name, target, ctx, [&] {
              return named_series(bt->second, target, ctx.modulus);
            });
          }
          if (const ExprPtr* bound = ctx.env ? ctx.env->lookup(n.name) : nullptr) {
            return cached_atom(n.name, target, ctx,
                               [&] { return eval_node(**bound, target, ctx); });
          }
          throw std::invalid_argument("unbound name '" + n.name + "'");
        } else if constexpr (std::is_same_v<T, Neg>) {
          return negate(eval_node(*n.operand, target, ctx));
        } else if constexpr (std::is_same_v<T, NegQ>) {
          return negate_q(eval_node(*n.operand, target, ctx));
        } else if constexpr (std::is_same_v<T, Binary>) {
          Series lhs = eval_node(*n.lhs, target, ctx);
          Series rhs = eval_node(*n.rhs, target, ctx);
          switch (n.op) {
            case '+': return add(lhs, rhs);
            case '-': return sub(lhs, rhs);
            case '*': return mul(lhs, rhs);
            case '/': return div(lhs, rhs);
          }
          throw std::logic_error("unknown operator");
        } else if constexpr (std::is_same_v<T, PowOp>) {
          return pow(eval_node(*n.base, target, ctx), n.exponent);
        } else if constexpr (std::is_same_v<T, ApOp>) {
          std::int64_t demand = n.step * (target - 1) + n.offset + 1;
          Series inner = eval_node(*n.operand, demand, ctx);
          return extract_ap(inner, n.step, n.offset);
        } else {
          static_assert(std::is_same_v<T, SubstOp>);
          std::int64_t demand = (target + n.power - 1) / n.power;
          return substitute(eval_node(*n.operand, demand, ctx), n.power);
        }
      },
      e.node());
}

}  // namespace

std::map<std::string, std::int64_t> required_precision(const Expr& expr,
                                                       std::int64_t target) {
  std::map<std::string, std::int64_t> out;
  collect_demands(expr, target, out);
  return out;
}

bool is_builtin_atom(const std::string& name) {
  return builtin_table().count(name) != 0;
}

void Environment::bind(const std::string& name, ExprPtr value) {
  if (is_builtin_atom(name))
    throw std::invalid_argument("cannot rebind built-in atom '" + name + "'");
  if (!bindings_.emplace(name, std::move(value)).second)
    throw std::invalid_argument("duplicate binding '" + name + "'");
}

const ExprPtr* Environment::lookup(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool Environment::contains(const std::string& name) const {
  return bindings_.count(name) != 0;
}

std::optional<Series> AtomCache::find(const std::string& key,
                                      std::uint64_t modulus,
                                      std::int64_t min_precision) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = best_.find({key, modulus});
  if (it == best_.end() || it->second.precision() < min_precision)
    return std::nullopt;
  return it->second;
}

void AtomCache::store(const std::string& key, std::uint64_t modulus,
                      const Series& value) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = best_.try_emplace({key, modulus}, value);
  if (!inserted && it->second.precision() < value.precision())
    it->second = value;
}

Series evaluate(const Expr& expr, std::int64_t target, const Environment& env,
                std::optional<std::uint64_t> modulus, AtomCache* cache) {
  EvalContext ctx{&env, modulus, cache};
  Series result = eval_node(expr, target, ctx);
  if (result.precision() < target)
    throw std::logic_error("internal error: evaluation fell short of target");
  return result;
}

CheckOutcome check(const Statement& stmt, std::int64_t target,
                   const Environment& env, AtomCache* cache) {
  CheckOutcome out;
  out.name = stmt.name;
  out.kind = stmt.kind;
  out.modulus = stmt.modulus;
  out.precision = target;
  auto start = std::chrono::steady_clock::now();
  try {
    Series lhs = evaluate(*stmt.lhs, target, env, stmt.modulus, cache);
    Series rhs = evaluate(*stmt.rhs, target, env, stmt.modulus, cache);
    auto mismatch = first_mismatch(lhs, rhs, target);
    if (mismatch) {
      out.pass = false;
      out.first_fail_index = *mismatch;
      out.lhs_coeff = lhs.coeff(*mismatch).get_str();
      out.rhs_coeff = rhs.coeff(*mismatch).get_str();
    } else {
      out.pass = true;
    }
  } catch (const std::exception& ex) {
    throw StatementError(stmt.name, ex.what());
  }
  out.millis = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
                   .count();
  return out;
}

}  // namespace qcong::dsl
