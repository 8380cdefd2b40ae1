#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubeharm/bernoulli.hpp"
#include "cubeharm/coefficients.hpp"
#include "cubeharm/generating.hpp"
#include "cubeharm/harmonics.hpp"
#include "cubeharm/invariants.hpp"

namespace cubeharm::cli {

enum class Format { kText, kCsv, kJson };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Largest n accepted by `table`.
inline constexpr long kTableBound = 6;
/// Routes with enumeration cost are only run below these sizes in bulk commands.
inline constexpr long kMatrixRouteBound = 6;
inline constexpr long kOracleRouteBound = 5;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string subcommand;
  long n = -1;
  long m = -1;
  long k = -1;
  std::string route = "all";
  std::string what = "G";
  std::string invariant_what = "expansion";
  long count = -1;
  std::size_t order = kDefaultSeriesOrder;
  Format format = Format::kText;
  std::string out_file;
  std::string poly_file;
  bool delta = false;
  bool allow_n4 = false;
};

namespace detail {

inline std::string with_decimal(const Rational& r) {
  if (r.is_integer()) return r.to_string();
  std::ostringstream os;
  os << r.to_string() << " (≈ " << std::setprecision(12) << r.to_double() << ")";
  return os.str();
}

inline nlohmann::ordered_json poly_json(const UniPoly& p) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : p.coefficients()) arr.push_back(c.to_string());
  return arr;
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

/// Collects one verdict line per check and a machine-readable summary.
class Verdicts {
 public:
  explicit Verdicts(std::string command) : command_(std::move(command)) {}

  void add(const std::string& name, bool passed, const std::string& detail = {}) {
    lines_ << (passed ? "PASS " : "FAIL ") << name;
    if (!passed && !detail.empty()) lines_ << ": " << detail;
    lines_ << '\n';
    summary_checks_.push_back({{"name", name}, {"passed", passed}});
    if (!passed) ++failed_;
  }

  [[nodiscard]] int finish(std::ostream& out) const {
    out << lines_.str();
    nlohmann::ordered_json summary;
    summary["command"] = command_;
    summary["checks"] = summary_checks_.size();
    summary["failed"] = failed_;
    summary["passed"] = failed_ == 0;
    out << nlohmann::ordered_json{{"summary", summary}}.dump() << '\n';
    return failed_ == 0 ? kExitOk : kExitVerifyFailed;
  }

 private:
  std::string command_;
  std::ostringstream lines_;
  std::vector<nlohmann::ordered_json> summary_checks_;
  std::size_t failed_ = 0;
};

/// Values of c_{n,m}^{(k)} from every route affordable at this size.
inline std::vector<CoefficientRecord> bulk_routes(long n, long m, long k, const RecursionTable* table) {
  std::vector<CoefficientRecord> out;
  out.push_back(c_generating(n, m, k));
  out.push_back(c_young(n, m, k));
  out.push_back(c_partition(n, m, k));
  if (table != nullptr) {
    out.push_back({static_cast<unsigned>(n), static_cast<unsigned>(m), static_cast<unsigned>(k),
                   table->at(n, m, k), Route::kRecursion});
  } else {
    out.push_back(c_recursion(n, m, k));
  }
  if (n <= kMatrixRouteBound) out.push_back(c_matrix(n, m, k));
  if (n <= kOracleRouteBound) out.push_back(c_oracle(n, m, k));
  if (auto e = c_extremal(n, m, k)) out.push_back(*e);
  return out;
}

}  // namespace detail

struct TableOutput {
  std::string text;
  bool all_agree = true;
};

/// The c-grid for 1 ≤ m ≤ n ≤ n_max plus G_m, Ĝ_m, F_m for m ≤ n_max.
/// Each value is the generating-route value; `routesAgreeing` lists every
/// computed route that matched it.
inline TableOutput emit_table(long n_max, Format format) {
  if (n_max < 1 || n_max > kTableBound) {
    throw UsageError("table: n must be between 1 and " + std::to_string(kTableBound));
  }
  const RecursionTable table = c_recursion_table(static_cast<unsigned>(n_max), static_cast<unsigned>(n_max));
  TableOutput result;
  result.all_agree = table.consistent();

  struct Row {
    long n, m, k;
    Rational value;
    std::vector<std::string> agreeing;
  };
  std::vector<Row> rows;
  for (long n = 1; n <= n_max; ++n) {
    for (long m = 1; m <= n; ++m) {
      for (long k = 0; k <= n; ++k) {
        const auto records = detail::bulk_routes(n, m, k, &table);
        Row row{n, m, k, records.front().value, {}};
        for (const auto& r : records) {
          if (r.value == row.value) {
            row.agreeing.emplace_back(route_name(r.route));
          } else {
            result.all_agree = false;
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }

  std::ostringstream os;
  switch (format) {
    case Format::kJson: {
      nlohmann::ordered_json doc;
      doc["coefficients"] = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        doc["coefficients"].push_back(
            {{"n", r.n}, {"m", r.m}, {"k", r.k}, {"value", r.value.to_string()}, {"routesAgreeing", r.agreeing}});
      }
      doc["generating"] = nlohmann::ordered_json::array();
      for (long m = 1; m <= n_max; ++m) {
        const auto fam = GeneratingFamily::build(static_cast<unsigned>(m));
        doc["generating"].push_back({{"m", m},
                                     {"G", detail::poly_json(fam.G)},
                                     {"Ghat", detail::poly_json(fam.Ghat)},
                                     {"F", detail::poly_json(fam.F)}});
      }
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv: {
      os << "n,m,k,value,routesAgreeing\n";
      for (const auto& r : rows) {
        os << r.n << ',' << r.m << ',' << r.k << ',' << r.value.to_string() << ',';
        for (std::size_t i = 0; i < r.agreeing.size(); ++i) os << (i ? ";" : "") << r.agreeing[i];
        os << '\n';
      }
      break;
    }
    case Format::kText: {
      for (const auto& r : rows) {
        os << "c(" << r.n << ',' << r.m << ',' << r.k << ") = " << detail::with_decimal(r.value) << "  [";
        for (std::size_t i = 0; i < r.agreeing.size(); ++i) os << (i ? " " : "") << r.agreeing[i];
        os << "]\n";
      }
      for (long m = 1; m <= n_max; ++m) {
        const auto fam = GeneratingFamily::build(static_cast<unsigned>(m));
        os << "G_" << m << "(t) = " << fam.G.to_string() << '\n';
        os << "Ghat_" << m << "(t) = " << fam.Ghat.to_string() << '\n';
        os << "F_" << m << "(t) = " << fam.F.to_string() << '\n';
      }
      break;
    }
  }
  result.text = os.str();
  return result;
}

namespace detail {

inline int run_coeff(const RunConfig& cfg, std::ostream& out) {
  require(cfg.n >= 0 && cfg.m >= 0 && cfg.k >= 0, "coeff: --n, --m and --k are required");
  std::vector<CoefficientRecord> records;
  if (cfg.route == "all") {
    records = bulk_routes(cfg.n, cfg.m, cfg.k, nullptr);
  } else {
    auto route = parse_route(cfg.route);
    require(route.has_value(), "coeff: unknown route '" + cfg.route + "'");
    records.push_back(c_by_route(*route, cfg.n, cfg.m, cfg.k));
  }
  bool agree = true;
  for (const auto& r : records) agree = agree && r.value == records.front().value;

  switch (cfg.format) {
    case Format::kJson: {
      nlohmann::ordered_json doc{{"n", cfg.n}, {"m", cfg.m}, {"k", cfg.k}};
      nlohmann::ordered_json values;
      for (const auto& r : records) values[std::string(route_name(r.route))] = r.value.to_string();
      doc["values"] = values;
      doc["agree"] = agree;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      out << "route,value\n";
      for (const auto& r : records) out << route_name(r.route) << ',' << r.value.to_string() << '\n';
      break;
    case Format::kText:
      for (const auto& r : records) out << route_name(r.route) << ": " << with_decimal(r.value) << '\n';
      out << "agreement: " << (agree ? "yes" : "NO") << '\n';
      break;
  }
  return agree ? kExitOk : kExitVerifyFailed;
}

inline int run_gen(const RunConfig& cfg, std::ostream& out) {
  require(cfg.m >= 1, "gen: --m must be >= 1");
  const long n = cfg.n < 0 ? cfg.m : cfg.n;
  UniPoly p;
  if (cfg.what == "G") {
    p = G_nm(n, cfg.m);
  } else if (cfg.what == "Ghat") {
    p = Ghat_nm(n, cfg.m);
  } else if (cfg.what == "F") {
    p = F_nm(n, cfg.m);
  } else {
    throw UsageError("gen: --what must be G, Ghat or F");
  }
  switch (cfg.format) {
    case Format::kJson:
      out << nlohmann::ordered_json{{"n", n}, {"m", cfg.m}, {"what", cfg.what}, {"coefficients", poly_json(p)}}.dump(2)
          << '\n';
      break;
    case Format::kCsv:
      out << "power,coefficient\n";
      for (std::size_t i = 0; i < p.coefficients().size(); ++i) out << i << ',' << p.coeff(i).to_string() << '\n';
      break;
    case Format::kText:
      out << p.to_string() << '\n';
      break;
  }
  return kExitOk;
}

inline int run_bernoulli(const RunConfig& cfg, std::ostream& out) {
  require(cfg.count >= 1, "bernoulli: --count must be >= 1");
  if (cfg.format == Format::kJson) {
    auto arr = nlohmann::ordered_json::array();
    for (long i = 1; i <= cfg.count; ++i) {
      arr.push_back({{"m", i}, {"B", bernoulli_paper(i).to_string()}, {"b", b_scaled(i).to_string()}});
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
  }
  if (cfg.format == Format::kCsv) out << "m,B,b\n";
  for (long i = 1; i <= cfg.count; ++i) {
    if (cfg.format == Format::kCsv) {
      out << i << ',' << bernoulli_paper(i).to_string() << ',' << b_scaled(i).to_string() << '\n';
    } else {
      out << "B_" << i << " = " << with_decimal(bernoulli_paper(i)) << "    b_" << i << " = "
          << with_decimal(b_scaled(i)) << '\n';
    }
  }
  return kExitOk;
}

inline std::string e_monomial(const std::vector<unsigned>& exps) {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "e" + std::to_string(2 * (i + 1));
    if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
  }
  return s;
}

inline int print_poly(const MultiPoly& p, Format format, std::ostream& out) {
  if (format == Format::kJson) {
    out << p.to_json().dump() << '\n';
  } else {
    out << p.to_string() << '\n';
  }
  return kExitOk;
}

inline int run_invariant(const RunConfig& cfg, std::ostream& out) {
  require(cfg.n >= 1, "invariant: --n must be >= 1");
  const auto n = static_cast<unsigned>(cfg.n);
  const std::string& what = cfg.invariant_what;
  if (what == "delta") return print_poly(delta_poly(n), cfg.format, out);
  require(cfg.m >= 0, "invariant: --m is required");
  const auto m = static_cast<unsigned>(cfg.m);
  if (what == "e") return print_poly(elementary_symmetric_sq(n, m), cfg.format, out);
  require(cfg.k >= 0, "invariant: --k is required");
  const auto k = static_cast<unsigned>(cfg.k);
  if (what == "h") return print_poly(h_poly(n, k, m), cfg.format, out);
  if (what == "g") return print_poly(g_poly(n, k, m), cfg.format, out);
  if (what == "tau") return print_poly(tau_poly(n, k, 2 * m), cfg.format, out);
  require(what == "expansion", "invariant: unknown --what '" + what + "'");
  const auto e = expand_in_invariant_basis(static_cast<unsigned>(cfg.n), static_cast<unsigned>(cfg.m),
                                           static_cast<unsigned>(cfg.k));
  if (cfg.format == Format::kJson) {
    nlohmann::ordered_json lower = nlohmann::ordered_json::array();
    for (const auto& [exps, c] : e.lower_terms) lower.push_back({{"e", exps}, {"coefficient", c.to_string()}});
    out << nlohmann::ordered_json{{"n", cfg.n}, {"m", cfg.m}, {"k", cfg.k}, {"leading", e.leading.to_string()},
                                  {"lower", lower}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "tau_" << 2 * cfg.m << "^(" << cfg.k << ") = " << e.leading.to_string() << "*e" << 2 * cfg.m;
  for (const auto& [exps, c] : e.lower_terms) out << " + (" << c.to_string() << ")*" << e_monomial(exps);
  out << '\n';
  return kExitOk;
}

inline MultiPoly load_poly(const std::string& path, unsigned n) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open polynomial file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("malformed polynomial file '" + path + "': " + ex.what());
  }
  return MultiPoly::from_json(j, n);
}

inline int run_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string& sub = cfg.subcommand;
  Verdicts verdicts("verify " + sub);
  if (sub == "identities") {
    const IdentityReport report = identity_suite(cfg.order);
    for (const auto& c : report.checks) verdicts.add("identity " + c.name, c.passed, c.detail);
  } else if (sub == "mvp") {
    require(cfg.n >= 1, "verify mvp: --n is required");
    require(cfg.poly_file.empty() || !cfg.delta, "verify mvp: --f and --delta are exclusive");
    const auto n = static_cast<unsigned>(cfg.n);
    require(!cfg.poly_file.empty() || cfg.n <= (cfg.allow_n4 ? 4 : 3), "verify mvp: Delta needs n <= 3 (or --allow-n4)");
    const MultiPoly f = cfg.poly_file.empty() ? delta_poly(n) : load_poly(cfg.poly_file, n);
    require(cfg.k <= cfg.n, "verify mvp: need k <= n");
    const unsigned k_lo = cfg.k < 0 ? 0 : static_cast<unsigned>(cfg.k);
    const unsigned k_hi = cfg.k < 0 ? n : static_cast<unsigned>(cfg.k);
    for (unsigned k = k_lo; k <= k_hi; ++k) {
      const MvpReport r = mvp_check(f, n, k);
      std::vector<std::string> names;
      for (unsigned i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
      names.emplace_back("r");
      verdicts.add("mvp k=" + std::to_string(k), r.holds, "residual " + r.residual.to_string(names));
    }
  } else if (sub == "dimension") {
    require(cfg.n >= 1, "verify dimension: --n is required");
    const auto n = static_cast<unsigned>(cfg.n);
    const std::size_t dim = derivative_module_dimension(n, cfg.allow_n4);
    std::size_t expected = 1;  // 2^n·n!
    for (unsigned i = 1; i <= n; ++i) expected *= 2 * i;
    verdicts.add("dimension n=" + std::to_string(n) + " = " + std::to_string(dim), dim == expected,
                 "expected " + std::to_string(expected));
  } else if (sub == "annihilation") {
    require(cfg.n >= 1, "verify annihilation: --n is required");
    const auto n = static_cast<unsigned>(cfg.n);
    for (unsigned m = 1; m <= n; ++m) {
      for (unsigned k = 0; k <= n; ++k) {
        verdicts.add("annihilation n=" + std::to_string(n) + " m=" + std::to_string(m) + " k=" + std::to_string(k),
                     annihilation_check(n, m, k, cfg.allow_n4));
      }
    }
  } else if (sub == "routes") {
    const long n_max = cfg.n < 0 ? 5 : cfg.n;
    require(n_max >= 1 && n_max <= kTableBound, "verify routes: n must be between 1 and " + std::to_string(kTableBound));
    const RecursionTable table = c_recursion_table(static_cast<unsigned>(n_max), static_cast<unsigned>(n_max));
    verdicts.add("recursion replays", table.consistent(), table.consistent() ? "" : table.mismatches.front());
    for (long n = 1; n <= n_max; ++n) {
      for (long m = 1; m <= n; ++m) {
        for (long k = 0; k <= n; ++k) {
          const auto records = bulk_routes(n, m, k, &table);
          std::string detail;
          bool ok = true;
          for (const auto& r : records) {
            if (r.value == records.front().value) continue;
            ok = false;
            detail += std::string(route_name(r.route)) + "=" + r.value.to_string() + " ";
          }
          for (const auto& e : c_extremal_all(n, m, k)) {
            if (e.value == records.front().value) continue;
            ok = false;
            detail += "extremal " + e.formula + "=" + e.value.to_string() + " ";
          }
          ok = ok && records.front().value.sign() > 0;
          verdicts.add("routes (" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ") = " +
                           records.front().value.to_string(),
                       ok, detail.empty() ? "non-positive value" : detail);
        }
      }
    }
  } else {
    throw UsageError("verify: unknown check '" + sub + "'");
  }
  return verdicts.finish(out);
}

}  // namespace detail

/// Runs one parsed command, writing its report to `out`.
inline int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "coeff") return detail::run_coeff(cfg, out);
  if (cfg.command == "table") {
    detail::require(cfg.n >= 1, "table: --n is required");
    TableOutput t = emit_table(cfg.n, cfg.format);
    out << t.text;
    return t.all_agree ? kExitOk : kExitVerifyFailed;
  }
  if (cfg.command == "gen") return detail::run_gen(cfg, out);
  if (cfg.command == "bernoulli") return detail::run_bernoulli(cfg, out);
  if (cfg.command == "invariant") return detail::run_invariant(cfg, out);
  if (cfg.command == "verify") return detail::run_verify(cfg, out);
  throw UsageError("unknown command '" + cfg.command + "'");
}

/// Parses argv, dispatches, and maps failures onto the exit-code contract.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants of the cube skeleton and their coefficients", "cubeharm"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", cfg.out_file, "Write output to this file");
  };

  auto* coeff = app.add_subcommand("coeff", "Compute c_{n,m}^{(k)} by one or all routes");
  coeff->add_option("--n", cfg.n)->required();
  coeff->add_option("--m", cfg.m)->required();
  coeff->add_option("--k", cfg.k)->required();
  coeff->add_option("--route", cfg.route, "oracle|matrix|partition|young|generating|recursion|extremal|all");
  add_common(coeff);

  auto* table = app.add_subcommand("table", "Emit the coefficient grid and generating polynomials");
  table->add_option("--n", cfg.n)->required();
  add_common(table);

  auto* gen = app.add_subcommand("gen", "Print G_{n,m}, Ghat_{n,m} or F_{n,m}");
  gen->add_option("--m", cfg.m)->required();
  gen->add_option("--n", cfg.n, "Defaults to m");
  gen->add_option("--what", cfg.what)->check(CLI::IsMember({"G", "Ghat", "F"}));
  add_common(gen);

  auto* bern = app.add_subcommand("bernoulli", "Print B_m and b_m for m = 1..count");
  bern->add_option("--count", cfg.count)->required();
  add_common(bern);

  auto* inv = app.add_subcommand("invariant", "Expand tau_{2m}^{(k)} in the e-basis, or print h, g, tau, e or Delta");
  inv->add_option("--n", cfg.n)->required();
  inv->add_option("--m", cfg.m, "Half degree for tau and e; degree for h and g");
  inv->add_option("--k", cfg.k);
  inv->add_option("--what", cfg.invariant_what)->check(CLI::IsMember({"expansion", "h", "g", "tau", "delta", "e"}));
  add_common(inv);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  for (const char* name : {"identities", "mvp", "dimension", "annihilation", "routes"}) {
    auto* sub = verify->add_subcommand(name);
    if (std::string(name) == "identities") sub->add_option("--order", cfg.order);
    if (std::string(name) != "identities") sub->add_option("--n", cfg.n);
    if (std::string(name) == "mvp") {
      sub->add_option("--k", cfg.k);
      sub->add_option("--f", cfg.poly_file, "Polynomial in JSON term-list form");
      sub->add_flag("--delta", cfg.delta, "Use the alternating polynomial (default)");
    }
    if (std::string(name) != "identities" && std::string(name) != "routes") sub->add_flag("--allow-n4", cfg.allow_n4);
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) cfg.subcommand = inner->get_name();
  }
  cfg.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kText;

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    code = dispatch(cfg, buffer);
  } catch (const InvariantViolation& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitVerifyFailed;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.out_file.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out_file, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.out_file << "'\n";
      return kExitUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace cubeharm::cli
