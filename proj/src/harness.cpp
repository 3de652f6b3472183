#include "qcong/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qcong/oracle.hpp"
#include "qcong/qproducts.hpp"
#include "qcong/special_series.hpp"

namespace qcong::harness {

namespace {

using nlohmann::json;

struct LineDirectives {
  std::optional<std::int64_t> default_precision;
  bool experimental = false;
};

LineDirectives scan_directives(const std::string& comment) {
  LineDirectives out;
  std::istringstream is(comment);
  std::string word;
  while (is >> word) {
    if (word == "@experimental") {
      out.experimental = true;
    } else if (word.rfind("@default-N=", 0) == 0) {
      out.default_precision = std::stoll(word.substr(11));
      if (*out.default_precision < 1)
        throw std::invalid_argument("@default-N must be >= 1");
    }
  }
  return out;
}

void collect_names(const dsl::Expr& e, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, dsl::NameRef>) {
          out.push_back(n.name);
        } else if constexpr (std::is_same_v<T, dsl::Neg> ||
                             std::is_same_v<T, dsl::NegQ>) {
          collect_names(*n.operand, out);
        } else if constexpr (std::is_same_v<T, dsl::Binary>) {
          collect_names(*n.lhs, out);
          collect_names(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, dsl::PowOp>) {
          collect_names(*n.base, out);
        } else if constexpr (std::is_same_v<T, dsl::ApOp> ||
                             std::is_same_v<T, dsl::SubstOp>) {
          collect_names(*n.operand, out);
        }
      },
      e.node());
}

}  // namespace

Catalog Catalog::load(const std::vector<std::string>& paths) {
  Catalog catalog;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open catalog file: " + path);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
      ++line_number;
      catalog.add_line(line, path, line_number);
    }
  }
  return catalog;
}

Catalog Catalog::parse_text(std::string_view text, const std::string& file) {
  Catalog catalog;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    catalog.add_line(line, file, line_number);
  }
  return catalog;
}

void Catalog::add_line(const std::string& line, const std::string& file,
                       int line_number) {
  std::string code = line;
  std::string comment;
  if (auto hash = line.find('#'); hash != std::string::npos) {
    code = line.substr(0, hash);
    comment = line.substr(hash + 1);
  }
  if (code.find_first_not_of(" \t\r") == std::string::npos) return;

  auto where = [&] { return file + ":" + std::to_string(line_number); };
  dsl::ParsedLine parsed = [&] {
    try {
      return dsl::parse_line(code);
    } catch (const dsl::ParseError& ex) {
      throw std::runtime_error(where() + ":" + ex.what());
    }
  }();

  auto check_names = [&](const dsl::Expr& e) {
    std::vector<std::string> names;
    collect_names(e, names);
    for (const auto& name : names)
      if (!dsl::is_builtin_atom(name) && !env_.contains(name))
        throw std::runtime_error(where() + ": unknown name '" + name + "'");
  };

  if (auto* let = std::get_if<dsl::LetBinding>(&parsed)) {
    check_names(*let->value);
    if (used_names_.count(let->name))
      throw std::runtime_error(where() + ": duplicate name '" + let->name + "'");
    env_.bind(let->name, let->value);
    used_names_.insert(let->name);
    lets_.push_back(*let);
    return;
  }

  auto& stmt = std::get<dsl::Statement>(parsed);
  check_names(*stmt.lhs);
  check_names(*stmt.rhs);
  if (used_names_.count(stmt.name))
    throw std::runtime_error(where() + ": duplicate name '" + stmt.name + "'");
  used_names_.insert(stmt.name);
  LineDirectives directives = scan_directives(comment);
  entries_.push_back(CatalogEntry{std::move(stmt), directives.default_precision,
                                  directives.experimental, file, line_number});
}

RunReport run_catalog(const Catalog& catalog, const RunOptions& options) {
  std::vector<const CatalogEntry*> selected;
  for (const auto& entry : catalog.entries())
    if (options.filter.empty() ||
        entry.statement.name.find(options.filter) != std::string::npos)
      selected.push_back(&entry);

  std::vector<StatementReport> reports(selected.size());
  dsl::AtomCache cache;

  auto run_one = [&](std::size_t idx) {
    const CatalogEntry& entry = *selected[idx];
    std::int64_t target = options.precision.value_or(
        entry.default_precision.value_or(
            entry.statement.kind == dsl::StatementKind::kIdentity
                ? kDefaultIdentityPrecision
                : kDefaultCongruencePrecision));
    StatementReport r;
    r.name = entry.statement.name;
    r.kind = entry.statement.kind == dsl::StatementKind::kIdentity ? "id"
                                                                   : "cong";
    r.modulus = entry.statement.modulus;
    r.precision = target;
    r.experimental = entry.experimental;
    try {
      dsl::CheckOutcome outcome =
          dsl::check(entry.statement, target, catalog.environment(), &cache);
      r.pass = outcome.pass;
      r.first_fail_index = outcome.first_fail_index;
      r.lhs_coeff = outcome.lhs_coeff;
      r.rhs_coeff = outcome.rhs_coeff;
      r.millis = outcome.millis;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.error = ex.what();
    }
    reports[idx] = std::move(r);
  };

  int jobs = std::max(1, options.jobs);
  if (jobs == 1 || selected.size() <= 1) {
    for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= selected.size()) return;
        run_one(i);
      }
    };
    std::vector<std::thread> pool;
    int count = std::min<int>(jobs, static_cast<int>(selected.size()));
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  RunReport report;
  report.statements = std::move(reports);
  for (const auto& r : report.statements) {
    ++report.checked;
    report.total_millis += r.millis;
    if (!r.pass) {
      ++report.failed;
      if (r.experimental) ++report.experimental_failed;
    }
  }
  return report;
}

std::string report_text(const RunReport& report) {
  std::ostringstream os;
  for (const auto& r : report.statements) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.kind << " " << r.name;
    if (r.modulus) os << " (mod " << *r.modulus << ")";
    os << "  N=" << r.precision;
    if (r.experimental) os << "  [experimental]";
    if (!r.pass && r.first_fail_index)
      os << "  first failure at index " << *r.first_fail_index << ": "
         << r.lhs_coeff << " vs " << r.rhs_coeff;
    if (!r.error.empty()) os << "  error: " << r.error;
    os << "  (" << static_cast<std::int64_t>(r.millis) << " ms)";
    os << '\n';
  }
  os << report.checked - report.failed << "/" << report.checked << " passed";
  if (report.experimental_failed > 0)
    os << " (" << report.experimental_failed
       << " experimental failure(s) not counted)";
  os << '\n';
  return os.str();
}

std::string report_json(const RunReport& report) {
  json statements = json::array();
  for (const auto& r : report.statements) {
    json j{{"name", r.name},
           {"kind", r.kind},
           {"modulus", r.modulus ? json(*r.modulus) : json(nullptr)},
           {"precision", r.precision},
           {"pass", r.pass},
           {"first_fail_index",
            r.first_fail_index ? json(*r.first_fail_index) : json(nullptr)},
           {"lhs_coeff", r.lhs_coeff.empty() ? json(nullptr) : json(r.lhs_coeff)},
           {"rhs_coeff", r.rhs_coeff.empty() ? json(nullptr) : json(r.rhs_coeff)},
           {"millis", r.millis},
           {"experimental", r.experimental}};
    if (!r.error.empty()) j["error"] = r.error;
    statements.push_back(std::move(j));
  }
  json out{{"statements", std::move(statements)},
           {"checked", report.checked},
           {"failed", report.failed},
           {"experimental_failed", report.experimental_failed},
           {"all_passed", report.all_passed()}};
  return out.dump(2);
}

std::vector<Progression> scan_congruences(const dsl::Expr& expr,
                                          std::uint64_t modulus,
                                          std::int64_t max_step,
                                          std::int64_t precision,
                                          const dsl::Environment& env) {
  if (max_step < 1) throw std::invalid_argument("max_step must be >= 1");
  if (precision < 3 * max_step)
    throw std::invalid_argument(
        "precision too small: need at least 3 * max_step = " +
        std::to_string(3 * max_step) + " coefficients");
  Series s = dsl::evaluate(expr, precision, env, modulus);
  const auto& res = s.residues();
  std::vector<Progression> out;
  for (std::int64_t step = 1; step <= max_step; ++step) {
    for (std::int64_t offset = 0; offset < step; ++offset) {
      std::int64_t witnesses = 0;
      bool all_zero = true;
      for (std::int64_t i = offset; i < precision; i += step) {
        if (res[static_cast<std::size_t>(i)] != 0) {
          all_zero = false;
          break;
        }
        ++witnesses;
      }
      if (all_zero) out.push_back({step, offset, witnesses});
    }
  }
  return out;
}

std::optional<Family> family_from_string(const std::string& name) {
  if (name == "p") return Family::kP;
  if (name == "pomega") return Family::kPOmega;
  if (name == "pnu") return Family::kPNu;
  if (name == "sptomega") return Family::kSptOmega;
  if (name == "sptbaromega") return Family::kSptbarOmega;
  return std::nullopt;
}

std::string family_name(Family family) {
  switch (family) {
    case Family::kP: return "p";
    case Family::kPOmega: return "pomega";
    case Family::kPNu: return "pnu";
    case Family::kSptOmega: return "sptomega";
    case Family::kSptbarOmega: return "sptbaromega";
  }
  return "?";
}

namespace {

struct FamilyPlan {
  std::function<mpz_class(std::int64_t)> oracle;
  std::function<Series(std::int64_t)> series;  // takes needed precision
  std::function<std::int64_t(std::int64_t)> index;  // argument n -> series index
  std::int64_t first_n = 0;
  std::int64_t stride = 1;
};

FamilyPlan plan_for(Family family) {
  switch (family) {
    case Family::kP:
      return {[](std::int64_t n) { return oracle::count_p(n); },
              [](std::int64_t p) { return invert(eta(1, p)); },
              [](std::int64_t n) { return n; },
              0,
              1};
    case Family::kPOmega:
      return {[](std::int64_t n) { return mpz_class(oracle::count_p_omega(n)); },
              [](std::int64_t p) { return p_omega_series(p); },
              [](std::int64_t n) { return n; },
              1,
              1};
    case Family::kPNu:
      return {[](std::int64_t n) { return mpz_class(oracle::count_p_nu(n)); },
              [](std::int64_t p) { return p_nu_series(p); },
              [](std::int64_t n) { return n; },
              0,
              1};
    case Family::kSptOmega:
      return {
          [](std::int64_t n) { return mpz_class(oracle::count_spt_omega(n)); },
          [](std::int64_t p) { return sptw_odd_series(p); },
          [](std::int64_t n) { return (n - 1) / 2; },
          1,
          2};
    case Family::kSptbarOmega:
      return {
          [](std::int64_t n) {
            return mpz_class(oracle::count_sptbar_omega(n));
          },
          [](std::int64_t p) { return sptbarw_odd_series(p); },
          [](std::int64_t n) { return (n - 1) / 2; },
          1,
          2};
  }
  throw std::logic_error("unhandled family");
}

}  // namespace

CrosscheckReport crosscheck(Family family, std::int64_t max_n) {
  if (max_n < 1) throw std::invalid_argument("crosscheck needs max_n >= 1");
  FamilyPlan plan = plan_for(family);
  CrosscheckReport report;
  report.family = family;
  report.max_n = max_n;
  Series s = plan.series(plan.index(max_n) + 1);
  for (std::int64_t n = plan.first_n; n <= max_n; n += plan.stride) {
    mpz_class expected = plan.oracle(n);
    mpz_class got = s.coeff(plan.index(n));
    ++report.checked;
    if (expected != got)
      report.mismatches.push_back(
          {n, expected.get_str(), got.get_str()});
  }
  return report;
}

std::vector<std::pair<std::int64_t, mpz_class>> oracle_table(
    Family family, std::int64_t max_n) {
  if (max_n < 0) throw std::invalid_argument("oracle table needs max_n >= 0");
  FamilyPlan plan = plan_for(family);
  std::vector<std::pair<std::int64_t, mpz_class>> out;
  for (std::int64_t n = plan.first_n; n <= max_n; n += plan.stride)
    out.emplace_back(n, plan.oracle(n));
  return out;
}

}  // namespace qcong::harness
