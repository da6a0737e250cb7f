// Command-line front end: simulate experiments, sweep convergence rates, and
// print the diagnostics, the counterexample report, and kernel validation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gmequiv/gmequiv.hpp"

namespace {

using namespace gmequiv;

constexpr int exit_gate_failed = 2;
constexpr int exit_error = 1;
constexpr int exit_usage = 64;

constexpr const char* grammar = R"usage(usage: gmequiv <subcommand> [flags]

subcommands:
  simulate        E1 / E1' / E2 / Kriging-path samples        (--variant e1|e1prime|e2|kriging)
  rates           rate sweep with a slope gate                (--stat, --family, --target)
  kriging         interpolation curve of F_f through j/n
  kl              chain-rule KL vs dense Gaussian KL
  decompose       low/high frequency split of the discretization error
  transform       transformed-experiment discrepancy
  counterexample  bridge non-equivalence premises              (--beta, --L, --draws)
  validate        kernel assumption report

common flags:
  --preset bm|ou|ou(<L>)|bridge|slepian    --kernel <json>    --fn <json>
  --n 64 | 16..512 | 8,16,32               --seed <uint>      --out <path>
  --format csv|json                        --grid-density <m> --config <json file>

kernel json:   "bm" | {"preset":"ou","params":{"L":2}} | {"name":"k","u":"<expr>","v":"<expr>"}
function json: {"coeffs":[[k,re,im],...]}   (k >= 0; negative frequencies are implied)

expression grammar (EBNF):
  expr    = term , { ("+" | "-") , term } ;
  term    = unary , { ("*" | "/") , unary } ;
  unary   = "-" , unary | power ;
  power   = primary , [ "^" , unary ] ;
  primary = number | "t" | func , "(" , expr , ")" | "(" , expr , ")" ;
  func    = "exp" | "sin" | "cos" | "sqrt" | "log" ;
  number  = digits , [ "." , digits ] , [ ("e" | "E") , [ "+" | "-" ] , digits ] ;

exit codes: 0 success, 1 error, 2 gate failure, 64 usage error
)usage";

struct Flags {
  std::string preset;
  std::string kernel;
  std::string fn;
  std::string n;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  int grid_density = 0;
  std::string config;
  std::string family;
  std::string stat;
  std::string variant;
  double target = 0.0;
  double beta = 1.0;
  double L = 1.0;
  int draws = 0;
};

struct Context {
  RunConfig cfg;
  std::string command_line;
  KernelPtr kernel;
  FourierFunction f;
  std::string function_id;
};

std::string dump(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

std::string kernel_label(const Json& spec) { return spec.is_string() ? spec.get<std::string>() : dump(spec); }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_meta(CsvWriter& csv, const Context& ctx) {
  csv.meta("command", ctx.command_line);
  csv.meta("config", dump(ctx.cfg.to_json()));
  csv.meta("kernel", ctx.kernel ? ctx.kernel->name() : kernel_label(ctx.cfg.kernel));
  csv.meta("function", ctx.function_id);
  csv.meta("n", format_n_grid(ctx.cfg.n));
  csv.meta("seed", std::to_string(ctx.cfg.seed));
}

Json meta_json(const Context& ctx) {
  return Json{{"command", ctx.command_line},
              {"config", ctx.cfg.to_json()},
              {"kernel", ctx.kernel ? ctx.kernel->name() : kernel_label(ctx.cfg.kernel)},
              {"function", ctx.function_id}};
}

int single_n(const Context& ctx) {
  if (ctx.cfg.n.size() != 1) throw Error("this subcommand takes a single --n");
  return ctx.cfg.n.front();
}

// ---------------------------------------------------------------------------

int run_simulate(Context& ctx, std::ostream& out) {
  const int n = single_n(ctx);
  const std::string variant = ctx.cfg.variant.empty() ? "e2" : ctx.cfg.variant;
  const int grid_size = ctx.cfg.grid_density * n + 1;
  std::vector<double> t, y;
  if (variant == "e1" || variant == "e1prime") {
    const auto s = simulate_e1(ctx.kernel, ctx.f, n, ctx.cfg.seed,
                               variant == "e1" ? E1Variant::original : E1Variant::cell_averaged, ctx.function_id);
    for (int i = 1; i <= n; ++i) t.push_back(s.t(i));
    y = s.values;
  } else if (variant == "e2" || variant == "kriging") {
    const auto p = variant == "e2" ? simulate_e2(ctx.kernel, ctx.f, n, ctx.cfg.seed, grid_size, ctx.function_id)
                                   : kriging_path_experiment(ctx.kernel, ctx.f, n, ctx.cfg.seed, grid_size,
                                                             ctx.function_id);
    t = p.grid;
    y = p.values;
  } else {
    throw CLI::ValidationError("--variant", "expected e1, e1prime, e2 or kriging");
  }
  std::vector<double> signal(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (variant == "e1") signal[i] = ctx.f(t[i]);
    else if (variant == "e1prime") signal[i] = ctx.f.cell_average(static_cast<int>(i) + 1, n);
    else signal[i] = ctx.f.antiderivative(t[i]);
  }
  if (ctx.cfg.format == "json") {
    Json j = meta_json(ctx);
    j["variant"] = variant;
    j["t"] = t;
    j["value"] = y;
    j["signal"] = signal;
    out << j.dump(2) << '\n';
    return 0;
  }
  CsvWriter csv(out);
  write_meta(csv, ctx);
  csv.meta("variant", variant);
  csv.header({"i", "t", "value", "signal"});
  for (std::size_t i = 0; i < t.size(); ++i) csv.row(i, t[i], y[i], signal[i]);
  return 0;
}

Family make_family(const Context& ctx, const std::string& id) {
  const ClassSpec spec = ClassSpec::sobolev(ctx.cfg.beta, ctx.cfg.L);
  if (id == "single-freq") return families::single_frequency();
  if (id == "extremal") return families::extremal(spec);
  if (id == "random") return families::random(spec, 4, ctx.cfg.seed);
  if (id == "sobolev") return families::sobolev(spec, 4, ctx.cfg.seed);
  if (id == "zero") return families::zero();
  if (id == "constant") return families::single("constant", FourierFunction::constant(1.0));
  if (id == "custom") return families::single(ctx.function_id, ctx.f);
  throw CLI::ValidationError("--family", "expected single-freq, extremal, random, sobolev, zero, constant or custom");
}

double default_target(Statistic stat, const std::string& family, double beta) {
  const bool sobolev_family = family == "extremal" || family == "random" || family == "sobolev";
  switch (stat) {
    case Statistic::condition_i:
    case Statistic::kl:
    case Statistic::appendix_b_terms:
      return sobolev_family ? std::max(-1.0, 1.0 - 2.0 * beta) : -1.0;
    case Statistic::condition_ii:
      return -0.5;
    case Statistic::transformation:
      return -1.0;
  }
  return -1.0;
}

int run_rates(Context& ctx, std::ostream& out) {
  const Statistic stat = statistic_from_string(ctx.cfg.stat.empty() ? "condition_i" : ctx.cfg.stat);
  const std::string family_id = ctx.cfg.family.empty() ? "single-freq" : ctx.cfg.family;
  const double target = ctx.cfg.target.value_or(default_target(stat, family_id, ctx.cfg.beta));
  const auto report = rate_sweep(stat, ctx.kernel, make_family(ctx, family_id), family_id, ctx.cfg.n, target);
  if (ctx.cfg.format == "json") {
    Json j = meta_json(ctx);
    j["statistic"] = report.statistic;
    j["family"] = report.family;
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      Json members = Json::object();
      for (std::size_t m = 0; m < r.member_ids.size(); ++m) members[r.member_ids[m]] = r.member_values[m];
      rows.push_back({{"n", r.n}, {"value", r.value}, {"argmax", r.argmax}, {"members", members}});
    }
    j["rows"] = rows;
    j["slope"] = report.fit.slope;
    j["slope_stderr"] = report.fit.slope_stderr;
    j["fit_from_n"] = report.rows[report.fit_from].n;
    j["target"] = report.target;
    j["margin"] = report.margin;
    j["degenerate"] = report.degenerate;
    j["excluded"] = report.excluded;
    j["passed"] = report.passed;
    j["note"] = "values are maxima over a finite family, i.e. lower bounds for the class supremum";
    out << j.dump(2) << '\n';
  } else {
    CsvWriter csv(out);
    write_meta(csv, ctx);
    csv.meta("statistic", report.statistic);
    csv.meta("family", report.family);
    csv.meta("slope", detail::format_double(report.fit.slope));
    csv.meta("slope_stderr", detail::format_double(report.fit.slope_stderr));
    csv.meta("fit_from_n", std::to_string(report.rows[report.fit_from].n));
    csv.meta("target", detail::format_double(report.target) + " +- " + detail::format_double(report.margin));
    csv.meta("degenerate", report.degenerate ? "true" : "false");
    csv.meta("excluded", std::to_string(report.excluded));
    csv.meta("passed", report.passed ? "true" : "false");
    csv.header({"n", "statistic", "family_member", "value", "is_max"});
    for (const auto& r : report.rows)
      for (std::size_t m = 0; m < r.member_ids.size(); ++m)
        csv.row(r.n, report.statistic, r.member_ids[m], r.member_values[m],
                std::string(r.member_ids[m] == r.argmax ? "1" : "0"));
  }
  return report.passed ? 0 : exit_gate_failed;
}

int run_kriging(Context& ctx, std::ostream& out) {
  const int n = single_n(ctx);
  KrigingInterpolator interp(ctx.kernel, n);
  std::vector<double> knots(n);
  for (int j = 1; j <= n; ++j) knots[j - 1] = ctx.f.antiderivative(interp.knot(j));
  const auto grid = equispaced_grid(ctx.cfg.grid_density * n + 1);
  const bool with_dense = n <= 64;
  std::vector<double> fast(grid.size()), dense(grid.size()), truth(grid.size());
  double max_diff = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fast[i] = interp(knots, grid[i]);
    truth[i] = ctx.f.antiderivative(grid[i]);
    if (with_dense) {
      dense[i] = kriging_dense(*ctx.kernel, knots, grid[i]);
      max_diff = std::max(max_diff, std::abs(dense[i] - fast[i]));
    }
  }
  if (ctx.cfg.format == "json") {
    Json j = meta_json(ctx);
    j["t"] = grid;
    j["interpolant"] = fast;
    j["F"] = truth;
    if (with_dense) {
      j["dense"] = dense;
      j["max_abs_dense_difference"] = max_diff;
    }
    out << j.dump(2) << '\n';
    return 0;
  }
  CsvWriter csv(out);
  write_meta(csv, ctx);
  if (with_dense) csv.meta("max_abs_dense_difference", detail::format_double(max_diff));
  if (with_dense) {
    csv.header({"t", "interpolant", "F", "dense"});
    for (std::size_t i = 0; i < grid.size(); ++i) csv.row(grid[i], fast[i], truth[i], dense[i]);
  } else {
    csv.header({"t", "interpolant", "F"});
    for (std::size_t i = 0; i < grid.size(); ++i) csv.row(grid[i], fast[i], truth[i]);
  }
  return 0;
}

int run_kl(Context& ctx, std::ostream& out) {
  Json rows = Json::array();
  std::vector<std::array<double, 5>> table;
  for (int n : ctx.cfg.n) {
    const double chain = kl_e1_vs_e1prime(*ctx.kernel, ctx.f, n);
    const double cond = condition_i_statistic(*ctx.kernel, ctx.f, n);
    const double dense = n <= 256 ? kl_dense_gaussian(*ctx.kernel, ctx.f, n)
                                  : std::numeric_limits<double>::quiet_NaN();
    const double exact = kl_e1_vs_e1prime_exact(*ctx.kernel, ctx.f, n);
    table.push_back({static_cast<double>(n), chain, dense, cond, exact});
  }
  if (ctx.cfg.format == "json") {
    Json j = meta_json(ctx);
    for (const auto& r : table)
      j["rows"].push_back({{"n", static_cast<int>(r[0])}, {"chain", r[1]}, {"dense", r[2]},
                           {"abs_difference", std::abs(r[1] - r[2])}, {"condition_i", r[3]},
                           {"chain_observed", r[4]}});
    out << j.dump(2) << '\n';
    return 0;
  }
  CsvWriter csv(out);
  write_meta(csv, ctx);
  csv.header({"n", "chain", "dense", "abs_difference", "condition_i", "chain_observed"});
  for (const auto& r : table) csv.row(static_cast<int>(r[0]), r[1], r[2], std::abs(r[1] - r[2]), r[3], r[4]);
  return 0;
}

int run_decompose(Context& ctx, std::ostream& out) {
  std::vector<AppendixBTerms> terms;
  for (int n : ctx.cfg.n) terms.push_back(appendix_b_decomposition(ctx.f, n));
  bool all_hold = true;
  for (const auto& t : terms) all_hold = all_hold && t.three_term_bound_holds;
  if (ctx.cfg.format == "json") {
    Json j = meta_json(ctx);
    for (const auto& t : terms)
      j["rows"].push_back({{"n", t.n}, {"A_sum", t.A_sum}, {"B_sum", t.B_sum}, {"C_sum", t.C_sum},
                           {"total", t.total}, {"parseval_residual", t.parseval_residual},
                           {"three_term_bound", t.three_term_bound_holds}});
    out << j.dump(2) << '\n';
  } else {
    CsvWriter csv(out);
    write_meta(csv, ctx);
    csv.header({"n", "A_sum", "B_sum", "C_sum", "total", "parseval_residual", "three_term_bound"});
    for (const auto& t : terms)
      csv.row(t.n, t.A_sum, t.B_sum, t.C_sum, t.total, t.parseval_residual,
              std::string(t.three_term_bound_holds ? "1" : "0"));
  }
  return all_hold ? 0 : exit_gate_failed;
}

int run_transform(Context& ctx, std::ostream& out) {
  std::vector<TransformationDiscrepancy> rows;
  for (int n : ctx.cfg.n) rows.push_back(transformation_discrepancy(*ctx.kernel, ctx.f, n));
  const std::string warning = rows.empty() ? "" : rows.front().warning;
  std::cerr << "warning: " << warning << '\n';
  if (ctx.cfg.format == "json") {
    Json j = meta_json(ctx);
    j["warning"] = warning;
    for (std::size_t i = 0; i < rows.size(); ++i)
      j["rows"].push_back({{"n", ctx.cfg.n[i]}, {"mean_term", rows[i].mean_term},
                           {"variance_term", rows[i].variance_term}, {"value", rows[i].value}});
    out << j.dump(2) << '\n';
    return 0;
  }
  CsvWriter csv(out);
  write_meta(csv, ctx);
  csv.meta("warning", warning);
  csv.header({"n", "mean_term", "variance_term", "value"});
  for (std::size_t i = 0; i < rows.size(); ++i)
    csv.row(ctx.cfg.n[i], rows[i].mean_term, rows[i].variance_term, rows[i].value);
  return 0;
}

int run_counterexample(Context& ctx, std::ostream& out) {
  const int draws = ctx.cfg.draws > 0 ? ctx.cfg.draws : 2000;
  Json verdicts = Json::array();
  bool all = true;
  std::ostringstream text;
  for (int n : ctx.cfg.n) {
    const auto r = indistinguishability_check(n, ctx.cfg.beta, ctx.cfg.L, ctx.cfg.seed, draws, ctx.cfg.grid_density);
    all = all && r.all_passed();
    Json premises = Json::array();
    text << "n = " << n << ", beta = " << detail::format_double(r.beta) << ", L = " << detail::format_double(r.L)
         << ", " << draws << " Monte Carlo paths\n";
    for (const auto& p : r.premises) {
      premises.push_back({{"premise", p.name}, {"passed", p.passed}, {"value", p.value},
                          {"threshold", p.threshold}, {"detail", p.detail}});
      text << "  [" << (p.passed ? "pass" : "FAIL") << "] " << p.name << ": " << detail::format_double(p.value)
           << " (" << p.detail << ")\n";
    }
    text << "  " << r.conclusion << "\n";
    verdicts.push_back({{"n", n}, {"premises", premises}, {"all_passed", r.all_passed()},
                        {"conclusion", r.conclusion}});
  }
  Json j = meta_json(ctx);
  j["verdicts"] = verdicts;
  j["all_passed"] = all;
  if (ctx.cfg.format == "json") {
    out << j.dump(2) << '\n';
  } else {
    out << text.str() << dump(j) << '\n';
  }
  return all ? 0 : exit_gate_failed;
}

int run_validate(Context& ctx, std::ostream& out) {
  const auto r = validate_assumption(*ctx.kernel);
  if (ctx.cfg.format == "json") {
    Json j = meta_json(ctx);
    for (const auto& c : r.checks)
      j["checks"].push_back({{"property", c.property}, {"passed", c.passed}, {"witness", c.witness}});
    j["q_prime_min"] = r.q_prime_min;
    j["q_prime_max"] = r.q_prime_max;
    j["v_prime_hoelder_index"] = r.v_prime_hoelder_index;
    j["q_prime_hoelder_index"] = r.q_prime_hoelder_index;
    j["all_passed"] = r.all_passed();
    out << j.dump(2) << '\n';
    return 0;
  }
  CsvWriter csv(out);
  write_meta(csv, ctx);
  csv.meta("grid_size", std::to_string(r.grid_size));
  csv.meta("v_prime_hoelder_index", detail::format_double(r.v_prime_hoelder_index));
  csv.meta("q_prime_hoelder_index", detail::format_double(r.q_prime_hoelder_index));
  csv.header({"property", "passed", "witness"});
  for (const auto& c : r.checks) csv.row(c.property, std::string(c.passed ? "1" : "0"), c.witness);
  return 0;
}

void add_common(CLI::App* sub, Flags& fl) {
  sub->add_option("--preset", fl.preset, "kernel preset: bm, ou, ou(<L>), bridge, slepian");
  sub->add_option("--kernel", fl.kernel, "kernel as JSON");
  sub->add_option("--fn", fl.fn, "function as JSON {\"coeffs\": [[k, re, im], ...]}");
  sub->add_option("--n", fl.n, "n, a doubling range lo..hi, or a comma list");
  sub->add_option("--seed", fl.seed, "random seed");
  sub->add_option("--out", fl.out, "output file (default stdout)");
  sub->add_option("--format", fl.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--grid-density", fl.grid_density, "path grid points per cell")->check(CLI::PositiveNumber);
  sub->add_option("--config", fl.config, "run configuration JSON file; explicit flags take precedence");
}

RunConfig build_config(const CLI::App* sub, const Flags& fl) {
  RunConfig cfg;
  if (!fl.config.empty()) {
    std::ifstream in(fl.config);
    if (!in) throw Error("cannot read config '" + fl.config + "'");
    cfg = RunConfig::from_json(Json::parse(in));
  }
  cfg.subcommand = sub->get_name();
  const auto given = [&](const char* name) {
    const auto* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--preset") && given("--kernel")) throw CLI::ValidationError("--preset and --kernel are exclusive");
  if (given("--preset")) cfg.kernel = fl.preset;
  if (given("--kernel")) cfg.kernel = Json::parse(fl.kernel);
  if (given("--fn")) cfg.function = Json::parse(fl.fn);
  if (given("--n")) cfg.n = parse_n_grid(fl.n);
  else if (fl.config.empty()) {
    const std::string name = sub->get_name();
    if (name == "rates" || name == "transform") cfg.n = default_n_grid();
    else if (name == "kl") cfg.n = {2, 3, 4, 5, 6, 7, 8};
    else if (name == "decompose") cfg.n = {8, 16, 32, 64};
    else if (name == "counterexample") cfg.n = {8};
    else cfg.n = {64};
  }
  if (given("--seed")) cfg.seed = fl.seed;
  if (given("--out")) cfg.out = fl.out;
  if (given("--format")) cfg.format = fl.format;
  if (given("--grid-density")) cfg.grid_density = fl.grid_density;
  if (given("--family")) cfg.family = fl.family;
  if (given("--stat")) cfg.stat = fl.stat;
  if (given("--variant")) cfg.variant = fl.variant;
  if (given("--target")) cfg.target = fl.target;
  if (given("--beta")) cfg.beta = fl.beta;
  if (given("--L")) cfg.L = fl.L;
  if (given("--draws")) cfg.draws = fl.draws;
  return cfg;
}

int dispatch(const std::string& name, Context& ctx, std::ostream& out) {
  if (name == "simulate") return run_simulate(ctx, out);
  if (name == "rates") return run_rates(ctx, out);
  if (name == "kriging") return run_kriging(ctx, out);
  if (name == "kl") return run_kl(ctx, out);
  if (name == "decompose") return run_decompose(ctx, out);
  if (name == "transform") return run_transform(ctx, out);
  if (name == "counterexample") return run_counterexample(ctx, out);
  if (name == "validate") return run_validate(ctx, out);
  throw Error("unknown subcommand " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss-Markov regression/path experiment diagnostics"};
  app.require_subcommand(1);
  Flags fl;
  const std::vector<std::pair<const char*, const char*>> subcommands = {
      {"simulate", "dump E1, E1', E2 or Kriging-path samples"},
      {"rates", "rate sweep of a statistic over an n grid"},
      {"kriging", "Kriging interpolation curve with dense oracle"},
      {"kl", "chain-rule KL against the dense Gaussian KL"},
      {"decompose", "low/high frequency split with DFT Parseval check"},
      {"transform", "transformed-experiment discrepancy"},
      {"counterexample", "bridge non-equivalence premises"},
      {"validate", "kernel assumption report"}};
  for (const auto& [name, help] : subcommands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, fl);
    const std::string s = name;
    if (s == "simulate") sub->add_option("--variant", fl.variant, "e1, e1prime, e2 or kriging");
    if (s == "rates") {
      sub->add_option("--stat", fl.stat, "condition_i, condition_ii, kl, transformation, appendix_b_terms");
      sub->add_option("--family", fl.family, "single-freq, extremal, random, sobolev, zero, constant, custom");
      sub->add_option("--target", fl.target, "target slope (default derived from statistic and family)");
    }
    if (s == "rates" || s == "counterexample") {
      sub->add_option("--beta", fl.beta, "Sobolev smoothness")->check(CLI::PositiveNumber);
      sub->add_option("--L", fl.L, "Sobolev radius")->check(CLI::PositiveNumber);
    }
    if (s == "counterexample") sub->add_option("--draws", fl.draws, "Monte Carlo paths")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << grammar;
    return exit_usage;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string command_line = "gmequiv";
  for (int i = 1; i < argc; ++i) command_line += std::string(" ") + argv[i];

  try {
    Context ctx;
    ctx.cfg = build_config(sub, fl);
    ctx.command_line = command_line;
    if (ctx.cfg.subcommand != "decompose" && ctx.cfg.subcommand != "counterexample") {
      ctx.kernel = kernel_from_json(ctx.cfg.kernel);
    }
    ctx.f = ctx.cfg.function ? function_from_json(*ctx.cfg.function) : FourierFunction::cosine(1);
    ctx.function_id = ctx.cfg.function ? dump(*ctx.cfg.function) : "cos(2pi x)";
    Output output(ctx.cfg.out);
    return dispatch(ctx.cfg.subcommand, ctx, output.stream());
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << grammar;
    return exit_usage;
  } catch (const Json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << '\n';
    return exit_error;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << grammar;
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  }
}
