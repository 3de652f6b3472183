// Command-line front end: expand expressions, verify identity catalogs,
// dump oracle tables, crosscheck series against the oracle, and scan for
// congruence progressions.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "qcong/dsl.hpp"
#include "qcong/harness.hpp"
#include "qcong/oracle.hpp"
#include "qcong/series.hpp"

namespace {

using qcong::Series;
using json = nlohmann::json;

int cmd_expand(const std::string& text, std::int64_t n,
               std::optional<std::uint64_t> mod, const std::string& format) {
  qcong::dsl::Environment env;
  Series s = qcong::dsl::evaluate(*qcong::dsl::parse_expr(text), n, env, mod);
  if (format == "json") {
    json coeffs = json::array();
    for (std::int64_t i = 0; i < n; ++i) coeffs.push_back(s.coeff(i).get_str());
    json out{{"expr", text},
             {"precision", n},
             {"modulus", mod ? json(*mod) : json(nullptr)},
             {"coeffs", std::move(coeffs)}};
    std::cout << out.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "n,coefficient\n";
    for (std::int64_t i = 0; i < n; ++i)
      std::cout << i << "," << s.coeff(i).get_str() << "\n";
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      std::cout << i << "\t" << s.coeff(i).get_str() << "\n";
  }
  return 0;
}

int cmd_verify(const std::vector<std::string>& files,
               std::optional<std::int64_t> n, const std::string& filter,
               int jobs, bool as_json) {
  qcong::harness::Catalog catalog = qcong::harness::Catalog::load(files);
  qcong::harness::RunOptions options;
  options.precision = n;
  options.filter = filter;
  options.jobs = jobs;
  qcong::harness::RunReport report =
      qcong::harness::run_catalog(catalog, options);
  std::cout << (as_json ? qcong::harness::report_json(report)
                        : qcong::harness::report_text(report));
  if (as_json) std::cout << "\n";
  return report.all_passed() ? 0 : 1;
}

int cmd_oracle(const std::string& family_name, std::int64_t max_n,
               const std::string& format) {
  auto family = qcong::harness::family_from_string(family_name);
  if (!family) {
    std::cerr << "unknown family: " << family_name << "\n";
    return 2;
  }
  auto table = qcong::harness::oracle_table(*family, max_n);
  if (format == "csv") {
    std::cout << "n," << family_name << "\n";
    for (const auto& [arg, value] : table)
      std::cout << arg << "," << value.get_str() << "\n";
  } else {
    for (const auto& [arg, value] : table)
      std::cout << arg << "\t" << value.get_str() << "\n";
  }
  return 0;
}

int cmd_crosscheck(const std::string& family_name, std::int64_t max_n) {
  auto family = qcong::harness::family_from_string(family_name);
  if (!family) {
    std::cerr << "unknown family: " << family_name << "\n";
    return 2;
  }
  qcong::harness::CrosscheckReport report =
      qcong::harness::crosscheck(*family, max_n);
  std::cout << family_name << ": " << report.checked
            << " values checked against the series\n";
  for (const auto& m : report.mismatches)
    std::cout << "MISMATCH at n=" << m.n << ": oracle " << m.oracle_value
              << " vs series " << m.series_value << "\n";
  std::cout << (report.pass() ? "PASS" : "FAIL") << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_scan(const std::string& text, std::uint64_t mod, std::int64_t max_step,
             std::int64_t n, bool as_json) {
  auto expr = qcong::dsl::parse_expr(text);
  auto found = qcong::harness::scan_congruences(*expr, mod, max_step, n);
  if (as_json) {
    json out = json::array();
    for (const auto& p : found)
      out.push_back({{"step", p.step},
                     {"offset", p.offset},
                     {"witnesses", p.witnesses}});
    std::cout << json{{"expr", text},
                      {"modulus", mod},
                      {"max_step", max_step},
                      {"precision", n},
                      {"progressions", std::move(out)}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& p : found)
      std::cout << "(" << p.step << "n + " << p.offset << ")  witnesses="
                << p.witnesses << "\n";
    std::cout << found.size() << " progression(s) found\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series identity and congruence workbench"};
  app.require_subcommand(1);

  // expand
  std::string expand_expr, expand_format = "text";
  std::int64_t expand_n = 0;
  std::uint64_t expand_mod = 0;
  auto* expand = app.add_subcommand("expand", "print coefficients of an expression");
  expand->add_option("expr", expand_expr, "expression text")->required();
  expand->add_option("-N", expand_n, "number of coefficients")->required();
  expand->add_option("--mod", expand_mod, "evaluate modulo M");
  expand->add_option("--format", expand_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  // verify
  std::vector<std::string> verify_files;
  std::int64_t verify_n = 0;
  std::string verify_filter;
  int verify_jobs = 1;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "check a statement catalog");
  verify->add_option("files", verify_files, "catalog file(s)")->required();
  auto* verify_n_opt = verify->add_option("-N", verify_n, "override check depth");
  verify->add_option("--filter", verify_filter, "substring filter on names");
  verify->add_option("--jobs", verify_jobs, "parallel workers");
  verify->add_flag("--json", verify_json, "emit a JSON report");

  // oracle
  std::string oracle_family, oracle_format = "text";
  std::int64_t oracle_max = 0;
  auto* oracle =
      app.add_subcommand("oracle", "brute-force partition statistics");
  oracle
      ->add_option("family", oracle_family,
                   "p, pomega, pnu, sptomega or sptbaromega")
      ->required();
  oracle->add_option("--max", oracle_max, "largest n")->required();
  oracle->add_option("--format", oracle_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}));

  // crosscheck
  std::string cc_family;
  std::int64_t cc_max = 0;
  auto* cc = app.add_subcommand("crosscheck",
                                "oracle values vs series coefficients");
  cc->add_option("family", cc_family, "p, pomega, pnu, sptomega or sptbaromega")
      ->required();
  cc->add_option("--max", cc_max, "largest n")->required();

  // scan
  std::string scan_expr;
  std::uint64_t scan_mod = 0;
  std::int64_t scan_max_step = 0, scan_n = 0;
  bool scan_json = false;
  auto* scan =
      app.add_subcommand("scan", "search for congruence progressions");
  scan->add_option("expr", scan_expr, "expression text")->required();
  scan->add_option("--mod", scan_mod, "modulus")->required();
  scan->add_option("--max-step", scan_max_step, "largest progression step")
      ->required();
  scan->add_option("-N", scan_n, "coefficients to examine")->required();
  scan->add_flag("--json", scan_json, "emit JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (expand->parsed())
      return cmd_expand(expand_expr, expand_n,
                        expand_mod ? std::optional<std::uint64_t>(expand_mod)
                                   : std::nullopt,
                        expand_format);
    if (verify->parsed())
      return cmd_verify(verify_files,
                        *verify_n_opt ? std::optional<std::int64_t>(verify_n)
                                      : std::nullopt,
                        verify_filter, verify_jobs, verify_json);
    if (oracle->parsed()) return cmd_oracle(oracle_family, oracle_max, oracle_format);
    if (cc->parsed()) return cmd_crosscheck(cc_family, cc_max);
    if (scan->parsed())
      return cmd_scan(scan_expr, scan_mod, scan_max_step, scan_n, scan_json);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
