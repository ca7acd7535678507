// mskit: zeros of the Maier-Saupe bifurcation function from the command line.
//
// Exit codes: 0 success, 1 verification or consistency failure, 2 usage error.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mskit/bcurve.hpp"
#include "mskit/classify.hpp"
#include "mskit/errors.hpp"
#include "mskit/verify.hpp"
#include "output.hpp"

namespace {

using mskit::cli::Cell;
using mskit::cli::Format;
using mskit::cli::OutputEnvelope;
using mskit::cli::Table;
using ojson = nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& flag, const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
    throw UsageError(flag + ": not a finite number: '" + text + "'");
  }
  return value;
}

// Accepts a number or the token `critical` (alpha*).
double parse_alpha(const std::string& flag, const std::string& text) {
  const double alpha = text == "critical" ? mskit::critical_data().alpha_star : parse_real(flag, text);
  if (!(alpha > 0.0)) throw UsageError(flag + " must be positive");
  return alpha;
}

struct CommonFlags {
  std::string format = "table";
  std::string out;
  int digits = 0;

  OutputEnvelope envelope() const {
    OutputEnvelope env;
    env.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::table;
    env.precision = digits > 0 ? digits : (env.format == Format::json ? 17 : 12);
    if (!out.empty()) env.destination = out;
    return env;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--out", flags.out, "write to this file instead of stdout");
  cmd->add_option("--digits", flags.digits, "significant digits (default 12, json 17)")
      ->check(CLI::Range(1, 17));
}

void emit_table(const OutputEnvelope& env, const Table& table, ojson json_doc) {
  switch (env.format) {
    case Format::csv: mskit::cli::emit(env, mskit::cli::render_csv(table, env.precision)); break;
    case Format::table: mskit::cli::emit(env, mskit::cli::render_table(table, env.precision)); break;
    case Format::json: mskit::cli::emit(env, mskit::cli::dump_json(json_doc)); break;
  }
}

unsigned thread_setting() {
  const char* raw = std::getenv("MS_KIT_THREADS");
  if (!raw || !*raw) return 0;
  unsigned value = 0;
  const std::string text(raw);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw UsageError("MS_KIT_THREADS must be a non-negative integer");
  }
  return value;
}

int run_eval(const std::string& eta_text, const std::string& alpha_text, const CommonFlags& flags) {
  const double eta = parse_real("--eta", eta_text);
  const double alpha = parse_alpha("--alpha", alpha_text);
  const OutputEnvelope env = flags.envelope();
  const mskit::MomentSet m = mskit::compute_moments(eta, 6);
  const mskit::BEval e = mskit::eval_B(m, alpha);
  const double f = mskit::eval_f(m);
  const double fp = mskit::eval_f_prime(m);

  Table table;
  table.columns = {"eta", "alpha", "b", "b1", "b2", "b3", "f", "f_prime"};
  table.rows.push_back({eta, alpha, e.b, e.b1, e.b2, e.b3, f, fp});
  ojson doc = mskit::cli::rows_to_json(table, env.precision).front();
  emit_table(env, table, doc);
  return 0;
}

int run_zeros(const std::string& alpha_text, const CommonFlags& flags) {
  const double alpha = parse_alpha("--alpha", alpha_text);
  const OutputEnvelope env = flags.envelope();
  const mskit::ZeroSet set = mskit::classify(alpha);
  const std::string label(mskit::to_string(set.case_label));

  Table table;
  table.title = {"alpha = " + mskit::cli::format_number(alpha, env.precision) + "  case = " + label +
                 "  zeros = " + std::to_string(set.zeros.size())};
  table.columns = {"alpha", "case", "eta", "multiplicity", "side", "bracket_lo", "bracket_hi"};
  for (const auto& z : set.zeros) {
    table.rows.push_back({alpha, label, z.eta, static_cast<long>(z.multiplicity),
                          std::string(mskit::to_string(z.side)), z.bracket.lo, z.bracket.hi});
  }
  ojson doc;
  doc["alpha"] = mskit::cli::number(alpha, env.precision);
  doc["case"] = label;
  doc["zeros"] = mskit::cli::rows_to_json(table, env.precision);
  for (auto& z : doc["zeros"]) {
    z.erase("alpha");
    z.erase("case");
  }
  emit_table(env, table, doc);
  return 0;
}

int run_critical(const CommonFlags& flags) {
  const OutputEnvelope env = flags.envelope();
  const mskit::CriticalData& c = mskit::critical_data();
  const double lower = 20.0 / 3.0;
  const double upper = 7.5;
  const bool inside = c.alpha_star > lower && c.alpha_star < upper;

  Table table;
  table.columns = {"eta_min", "alpha_star", "f_second_at_min", "oracle_alpha_star", "lower", "upper",
                   "inclusion"};
  table.rows.push_back({c.eta_min, c.alpha_star, c.f_second_at_min, c.oracle_alpha_star, lower, upper, inside});
  emit_table(env, table, mskit::cli::rows_to_json(table, env.precision).front());
  if (!inside) {
    std::cerr << "mskit critical: alpha* outside (20/3, 7.5)\n";
    return kExitFailure;
  }
  return 0;
}

std::string gnuplot_script(const std::string& csv_path) {
  return "# gnuplot script for " + csv_path +
         "\n"
         "set datafile separator ','\n"
         "set key outside\n"
         "set xlabel 'alpha'\n"
         "set ylabel 'eta'\n"
         "set grid\n"
         "plot for [b in \"iso neg1 neg2 pos\"] '" +
         csv_path +
         "' every ::1 using 1:(strcol(2) eq b ? $3 : NaN) with linespoints pointtype 7 title b\n";
}

int run_sweep(const std::string& min_text, const std::string& max_text, int steps, bool gnuplot,
              const CommonFlags& flags) {
  const double alpha_min = parse_alpha("--alpha-min", min_text);
  const double alpha_max = parse_alpha("--alpha-max", max_text);
  if (!(alpha_max > alpha_min)) throw UsageError("--alpha-max must exceed --alpha-min");
  if (steps < 2) throw UsageError("--steps must be >= 2");
  const OutputEnvelope env = flags.envelope();
  if (gnuplot && (!env.destination || env.format != Format::csv)) {
    throw UsageError("--gnuplot needs --format csv and --out <path>");
  }

  const mskit::BranchTable branches = mskit::sweep(alpha_min, alpha_max, steps, thread_setting());
  Table table;
  table.columns = {"alpha", "branch", "eta", "S", "case"};
  for (const auto& r : branches.rows) {
    table.rows.push_back({r.alpha, std::string(mskit::to_string(r.branch)), r.eta, r.order_parameter,
                          std::string(mskit::to_string(r.case_label))});
  }
  emit_table(env, table, mskit::cli::rows_to_json(table, env.precision));
  if (gnuplot) {
    std::ofstream script(*env.destination + ".gp", std::ios::binary | std::ios::trunc);
    if (!script) throw std::runtime_error("cannot write gnuplot script");
    script << gnuplot_script(*env.destination);
  }
  return 0;
}

int run_verify(bool json, const CommonFlags& flags) {
  OutputEnvelope env = flags.envelope();
  if (json) env.format = Format::json;
  if (flags.digits == 0) env.precision = env.format == Format::json ? 17 : 6;
  const auto reports = mskit::run_verification();
  bool all = true;
  Table table;
  table.columns = {"check", "max_residual", "tolerance", "samples", "status"};
  for (const auto& r : reports) {
    all = all && r.passed;
    table.rows.push_back({r.name, r.max_residual, r.tolerance, static_cast<long>(r.samples),
                          std::string(r.passed ? "PASS" : "FAIL")});
  }
  ojson doc;
  doc["passed"] = all;
  doc["checks"] = mskit::cli::rows_to_json(table, env.precision);
  emit_table(env, table, doc);
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeros, critical intensities and bifurcation data of the Maier-Saupe function B(eta, alpha)"};
  app.require_subcommand(1);

  CommonFlags eval_flags, zeros_flags, critical_flags, sweep_flags, verify_flags;
  std::string eta_text, alpha_text, zeros_alpha;
  std::string min_text, max_text;
  int steps = 0;
  bool gnuplot = false;
  bool verify_json = false;

  auto* eval = app.add_subcommand("eval", "B and its derivatives, f and f' at one point");
  eval->add_option("--eta", eta_text, "concentration parameter")->required();
  eval->add_option("--alpha", alpha_text, "intensity (number or 'critical')")->required();
  add_common(eval, eval_flags);

  auto* zeros = app.add_subcommand("zeros", "classify the zeros of B(., alpha)");
  zeros->add_option("--alpha", zeros_alpha, "intensity (number, 7.5 or 'critical')")->required();
  add_common(zeros, zeros_flags);

  auto* critical = app.add_subcommand("critical", "minimiser of f and the critical intensity alpha*");
  add_common(critical, critical_flags);

  auto* sweep = app.add_subcommand("sweep", "bifurcation branches over an alpha grid");
  sweep->add_option("--alpha-min", min_text)->required();
  sweep->add_option("--alpha-max", max_text)->required();
  sweep->add_option("--steps", steps)->required();
  sweep->add_flag("--gnuplot", gnuplot, "also write <out>.gp plotting the CSV");
  add_common(sweep, sweep_flags);

  auto* verify = app.add_subcommand("verify", "run the invariant and oracle checks");
  verify->add_flag("--json", verify_json, "machine-readable report");
  add_common(verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "mskit: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(eta_text, alpha_text, eval_flags);
    if (*zeros) return run_zeros(zeros_alpha, zeros_flags);
    if (*critical) return run_critical(critical_flags);
    if (*sweep) return run_sweep(min_text, max_text, steps, gnuplot, sweep_flags);
    if (*verify) return run_verify(verify_json, verify_flags);
  } catch (const UsageError& e) {
    std::cerr << "mskit: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const mskit::ArgumentError& e) {
    std::cerr << "mskit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "mskit: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
