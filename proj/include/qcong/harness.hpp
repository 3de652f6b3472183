#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcong/dsl.hpp"
#include "qcong/series.hpp"

namespace qcong::harness {

struct CatalogEntry {
  dsl::Statement statement;
  std::optional<std::int64_t> default_precision;  // from a @default-N comment
  bool experimental = false;                      // from a @experimental comment
  std::string file;
  int line = 0;
};

/// An ordered identity/congruence catalog.  Statement names are unique and
/// every free name resolves to an earlier `let` or a built-in atom.
///
/// Catalog files are UTF-8 text, one statement or binding per line, with `#`
/// comments.  Two comment directives are honored when they appear on a
/// statement line: `@default-N=<int>` picks the default check depth and
/// `@experimental` excludes the statement from the failing-exit-status set.
class Catalog {
 public:
  static Catalog load(const std::vector<std::string>& paths);
  static Catalog parse_text(std::string_view text, const std::string& file);

  const dsl::Environment& environment() const { return env_; }
  const std::vector<dsl::LetBinding>& bindings() const { return lets_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }

 private:
  void add_line(const std::string& line, const std::string& file,
                int line_number);

  dsl::Environment env_;
  std::vector<dsl::LetBinding> lets_;
  std::vector<CatalogEntry> entries_;
  std::set<std::string> used_names_;
};

struct StatementReport {
  std::string name;
  std::string kind;  // "id" or "cong"
  std::optional<std::uint64_t> modulus;
  std::int64_t precision = 0;
  bool pass = false;
  bool experimental = false;
  std::optional<std::int64_t> first_fail_index;
  std::string lhs_coeff, rhs_coeff;
  std::string error;  // nonempty when evaluation itself failed
  double millis = 0.0;
};

struct RunReport {
  std::vector<StatementReport> statements;  // in catalog order
  std::int64_t checked = 0;
  std::int64_t failed = 0;               // including experimental failures
  std::int64_t experimental_failed = 0;  // subset of the above
  double total_millis = 0.0;

  /// True when every non-experimental statement passed.
  bool all_passed() const { return failed == experimental_failed; }
};

struct RunOptions {
  std::optional<std::int64_t> precision;  // overrides every default
  std::string filter;                     // substring match on names
  int jobs = 1;
};

// Default depths when neither the CLI nor the catalog pins one.
constexpr std::int64_t kDefaultIdentityPrecision = 200;
constexpr std::int64_t kDefaultCongruencePrecision = 500;

RunReport run_catalog(const Catalog& catalog, const RunOptions& options = {});

std::string report_text(const RunReport& report);
std::string report_json(const RunReport& report);

struct Progression {
  std::int64_t step = 0;
  std::int64_t offset = 0;
  std::int64_t witnesses = 0;
};

/// Finds every progression (step <= max_step, 0 <= offset < step) whose
/// available coefficients are all divisible by `modulus`.  Needs
/// precision >= 3 * max_step so each progression has a few witnesses.
std::vector<Progression> scan_congruences(
    const dsl::Expr& expr, std::uint64_t modulus, std::int64_t max_step,
    std::int64_t precision, const dsl::Environment& env = {});

enum class Family { kP, kPOmega, kPNu, kSptOmega, kSptbarOmega };

std::optional<Family> family_from_string(const std::string& name);
std::string family_name(Family family);

struct CrosscheckMismatch {
  std::int64_t n = 0;
  std::string oracle_value;
  std::string series_value;
};

struct CrosscheckReport {
  Family family = Family::kP;
  std::int64_t max_n = 0;
  std::int64_t checked = 0;
  std::vector<CrosscheckMismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
};

/// Oracle value vs series coefficient for every n <= max_n (odd n only for
/// the spt families, which have no even-argument series).
CrosscheckReport crosscheck(Family family, std::int64_t max_n);

/// Table of oracle values for a family up to max_n (odd n only for spt
/// families).
std::vector<std::pair<std::int64_t, mpz_class>> oracle_table(
    Family family, std::int64_t max_n);

}  // namespace qcong::harness
