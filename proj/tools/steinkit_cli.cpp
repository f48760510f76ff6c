// steinkit command-line front end: reproducible batch commands over the
// library with CSV/JSON output.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/input error,
// 3 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "steinkit/dist/params_json.hpp"
#include "steinkit/stein/engine.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using steinkit::dist::FamilyParams;

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kNonConvergence = 3,
};

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct GridSpec {
  double lo = 1e-3, hi = 50.0;
  int n = 400;
  bool log_spacing = true;

  static GridSpec parse(const std::string& text) {
    GridSpec spec;
    std::istringstream ss(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 4)
      throw CLI::ValidationError("--grid", "expected lo:hi:n:log|lin");
    try {
      spec.lo = std::stod(parts[0]);
      spec.hi = std::stod(parts[1]);
      spec.n = std::stoi(parts[2]);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--grid", "bad numeric field in lo:hi:n:log|lin");
    }
    if (parts[3] == "log")
      spec.log_spacing = true;
    else if (parts[3] == "lin")
      spec.log_spacing = false;
    else
      throw CLI::ValidationError("--grid", "spacing must be 'log' or 'lin'");
    if (!(spec.lo > 0.0) || !(spec.lo < spec.hi) || spec.n < 2)
      throw CLI::ValidationError("--grid", "need 0 < lo < hi and n >= 2");
    return spec;
  }

  std::vector<double> make() const {
    return log_spacing ? steinkit::stein::log_grid(lo, hi, n)
                       : steinkit::stein::linear_grid(lo, hi, n);
  }

  json to_json() const {
    return json{{"lo", lo}, {"hi", hi}, {"n", n},
                {"spacing", log_spacing ? "log" : "lin"}};
  }
};

// family/parameter flags shared by all subcommands
struct ParamsCli {
  std::string family;
  std::string params_json_text;
  std::optional<double> p, a, b, c;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "distribution family: gig | kummer");
    cmd->add_option("--params-json", params_json_text,
                    "parameters as a JSON object (alternative to flags)");
    p.reset(); a.reset(); b.reset(); c.reset();
    cmd->add_option("--p", [this](const std::vector<std::string>& v) {
      p = std::stod(v[0]); return true; }, "GIG order p");
    cmd->add_option("--a", [this](const std::vector<std::string>& v) {
      a = std::stod(v[0]); return true; }, "parameter a");
    cmd->add_option("--b", [this](const std::vector<std::string>& v) {
      b = std::stod(v[0]); return true; }, "parameter b");
    cmd->add_option("--c", [this](const std::vector<std::string>& v) {
      c = std::stod(v[0]); return true; }, "Kummer rate c");
  }

  FamilyParams resolve() const {
    if (!params_json_text.empty())
      return steinkit::dist::params_from_json(params_json_text);
    if (family == "gig") {
      if (!p || !a || !b)
        throw std::invalid_argument("gig needs --p, --a, --b");
      return steinkit::dist::GigParams(*p, *a, *b);
    }
    if (family == "kummer") {
      if (!a || !b || !c)
        throw std::invalid_argument("kummer needs --a, --b, --c");
      return steinkit::dist::KummerParams(*a, *b, *c);
    }
    throw std::invalid_argument("--family must be 'gig' or 'kummer' (or use --params-json)");
  }
};

json params_json_of(const FamilyParams& params) {
  return json::parse(steinkit::dist::params_to_json(params));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file " + path);
  out << text;
}

int cmd_density(const ParamsCli& pcli, const GridSpec& gspec,
                const std::string& out_path, const std::string& format) {
  const FamilyParams params = pcli.resolve();
  const auto pair = steinkit::dist::stein_pair_for(params);
  const auto grid = gspec.make();

  std::ostringstream out;
  if (format == "csv") {
    out << "x,log_density,density\n";
    for (double x : grid) {
      const double ld = pair.log_density(x);
      out << fmt17(x) << ',' << fmt17(ld) << ',' << fmt17(std::exp(ld)) << '\n';
    }
  } else {
    json j;
    j["version"] = kVersion;
    j["params"] = params_json_of(params);
    j["grid"] = gspec.to_json();
    auto &xs = j["x"], &ls = j["log_density"], &ds = j["density"];
    for (double x : grid) {
      const double ld = pair.log_density(x);
      xs.push_back(x);
      ls.push_back(ld);
      ds.push_back(std::exp(ld));
    }
    out << j.dump(2) << '\n';
  }
  write_text(out_path, out.str());
  return kOk;
}

int cmd_solve(const ParamsCli& pcli, const GridSpec& gspec, const std::string& h_name,
              double constant_c, const std::string& out_path) {
  const FamilyParams params = pcli.resolve();
  const auto pair = steinkit::dist::stein_pair_for(params);
  auto h = steinkit::stein::make_test_function(h_name, pair.alpha.value_or(1.0));
  const auto grid = gspec.make();
  const auto sol =
      steinkit::stein::solve_with_constant(pair, h, constant_c, grid);

  std::ostringstream out;
  out << "x,f,f_prime,residual,masked\n";
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    out << fmt17(sol.grid[i]) << ',' << fmt17(sol.f_values[i]) << ','
        << fmt17(sol.f_prime_values[i]) << ',' << fmt17(sol.residual[i]) << ','
        << (sol.masked[i] ? 1 : 0) << '\n';
  }
  write_text(out_path, out.str());

  json summary;
  summary["version"] = kVersion;
  summary["params"] = params_json_of(params);
  summary["grid"] = gspec.to_json();
  summary["h"] = h_name;
  summary["constant_c"] = constant_c;
  summary["e_h"] = sol.e_h;
  summary["max_residual"] = sol.max_residual;
  summary["forms_agreement"] = sol.forms_agreement;
  summary["agreement_points"] = sol.agreement_points;
  summary["masked_points"] = sol.masked_count;
  summary["sup_norm_centered"] = *h.sup_norm_of_centered;
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

int cmd_bound(const ParamsCli& pcli, const std::string& out_path) {
  const FamilyParams params = pcli.resolve();
  const auto pair = steinkit::dist::stein_pair_for(params);
  const auto report = steinkit::stein::bound_m(pair);

  json j;
  j["version"] = kVersion;
  j["params"] = params_json_of(params);
  j["alpha"] = report.alpha;
  j["left_ratio"] = report.left_ratio;
  j["right_ratio"] = report.right_ratio;
  j["M"] = report.m;
  write_text(out_path.empty() ? "-" : out_path, j.dump(2) + "\n");
  return kOk;
}

int cmd_verify(const ParamsCli& pcli, const GridSpec& gspec, double tol,
               bool corrupt_tau, const std::string& out_path) {
  const FamilyParams params = pcli.resolve();
  auto pair = steinkit::dist::stein_pair_for(params);
  if (corrupt_tau) pair.tau.c0 += 0.1;  // deliberate structural break for testing
  const auto grid = gspec.make();

  const auto structural = steinkit::stein::check_structural_identity(pair, grid, tol);
  json j;
  j["version"] = kVersion;
  j["params"] = params_json_of(params);
  j["grid"] = gspec.to_json();
  j["structural_identity"] = {{"passed", structural.passed},
                              {"max_relative_error", structural.max_relative_error},
                              {"worst_x", structural.worst_x},
                              {"tolerance", structural.tolerance}};
  bool all_passed = structural.passed;
  if (pair.monotone_tau) {
    const auto lemma = steinkit::stein::check_lemma_inequalities(pair, grid);
    j["lemma_inequalities"] = {{"passed", lemma.passed()},
                               {"inequalities_passed", lemma.inequalities_passed},
                               {"l_monotone", lemma.l_monotone},
                               {"u_monotone", lemma.u_monotone},
                               {"points_checked", lemma.points_checked},
                               {"points_excluded", lemma.points_excluded}};
    all_passed = all_passed && lemma.passed();
  } else {
    j["lemma_inequalities"] = {{"skipped", "tau not decreasing on (0,inf)"}};
  }
  j["passed"] = all_passed;
  write_text(out_path.empty() ? "-" : out_path, j.dump(2) + "\n");
  return all_passed ? kOk : kVerificationFailure;
}

int cmd_gof(const ParamsCli& pcli, const std::string& sample_path,
            const std::string& out_path) {
  const FamilyParams params = pcli.resolve();
  const auto values = steinkit::dist::read_sample_values(sample_path);
  if (values.size() < 2)
    throw std::invalid_argument("gof: sample file has fewer than 2 values");
  steinkit::dist::SampleBatch batch;
  batch.values = values;
  batch.method = "external";
  const auto pair = steinkit::dist::stein_pair_for(params);
  const auto report = steinkit::stein::stein_discrepancy(batch, pair);

  json j;
  j["version"] = kVersion;
  j["params"] = params_json_of(params);
  j["sample_file"] = sample_path;
  j["n"] = report.n;
  j["statistic"] = report.statistic;
  j["pass_4sigma"] = report.statistic < 4.0;
  auto& per = j["per_function"];
  for (const auto& fn : report.per_function)
    per.push_back({{"name", fn.name},
                   {"estimate", fn.estimate},
                   {"std_error", fn.std_error}});
  write_text(out_path.empty() ? "-" : out_path, j.dump(2) + "\n");
  return kOk;
}

int cmd_sample(const ParamsCli& pcli, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
  if (n < 1) throw std::invalid_argument("sample: --n must be >= 1");
  if (out_path.empty())
    throw std::invalid_argument("sample: --out is required");
  const FamilyParams params = pcli.resolve();
  const auto batch = steinkit::dist::sample_for(params, n, seed);
  steinkit::dist::write_sample_csv(batch, params, out_path, out_path + ".json");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stein characterizations, Stein-equation solutions and uniform "
               "bounds for GIG and Kummer distributions"};
  app.set_help_flag("--help", "print help");  // frees -h / --h for test functions
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string grid_text = "1e-3:50:400:log";
  std::string h_name = "exp-decay";
  std::string out_path;
  std::string format = "csv";
  std::string sample_path;
  double constant_c = 0.0;
  double verify_tol = 1e-6;
  bool corrupt_tau = false;
  std::size_t n_samples = 1000;
  std::uint64_t seed = 0;

  ParamsCli density_params, solve_params, bound_params, verify_params,
      gof_params, sample_params;

  auto add_cmd = [&app](const char* name, const char* desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");
    return sub;
  };

  auto* density = add_cmd("density", "tabulate the density over a grid");
  density_params.attach(density);
  density->add_option("--grid", grid_text, "grid as lo:hi:n:log|lin");
  density->add_option("--out", out_path, "output path ('-' for stdout)");
  density->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* solve = add_cmd("solve", "solve the Stein equation for a test function");
  solve_params.attach(solve);
  solve->add_option("--grid", grid_text, "grid as lo:hi:n:log|lin");
  solve->add_option("--h", h_name, "test function: const | exp-decay | logistic-step | osc");
  solve->add_option("--constant", constant_c, "constant C of the general solution family");
  solve->add_option("--out", out_path, "CSV output path ('-' for stdout); JSON summary on stdout");

  auto* bound = add_cmd("bound", "uniform bound M and the tau zero alpha");
  bound_params.attach(bound);
  bound->add_option("--out", out_path, "JSON output path (default stdout)");

  auto* verify = add_cmd("verify", "check the structural identity and tail inequalities");
  verify_params.attach(verify);
  verify->add_option("--grid", grid_text, "grid as lo:hi:n:log|lin");
  verify->add_option("--tol", verify_tol, "structural-identity relative tolerance");
  verify->add_flag("--debug-corrupt-tau", corrupt_tau,
                   "perturb tau0 by +0.1 (verification must then fail)");
  verify->add_option("--out", out_path, "JSON output path (default stdout)");

  auto* gof = add_cmd("gof", "Stein-discrepancy goodness of fit for a sample CSV");
  gof_params.attach(gof);
  gof->add_option("--sample", sample_path, "input sample CSV (single 'value' column)")
      ->required();
  gof->add_option("--out", out_path, "JSON output path (default stdout)");

  auto* sample = add_cmd("sample", "draw a reproducible sample batch");
  sample_params.attach(sample);
  sample->add_option("--n", n_samples, "number of draws");
  sample->add_option("--seed", seed, "RNG seed");
  sample->add_option("--out", out_path, "output CSV path (sidecar written to <out>.json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (density->parsed())
      return cmd_density(density_params, GridSpec::parse(grid_text), out_path, format);
    if (solve->parsed())
      return cmd_solve(solve_params, GridSpec::parse(grid_text), h_name, constant_c, out_path);
    if (bound->parsed()) return cmd_bound(bound_params, out_path);
    if (verify->parsed())
      return cmd_verify(verify_params, GridSpec::parse(grid_text), verify_tol,
                        corrupt_tau, out_path);
    if (gof->parsed()) return cmd_gof(gof_params, sample_path, out_path);
    if (sample->parsed()) return cmd_sample(sample_params, n_samples, seed, out_path);
  } catch (const steinkit::stein::NonConvergenceError& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "non-convergence"}}.dump()
              << '\n';
    return kNonConvergence;
  } catch (const std::domain_error& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "domain"}}.dump() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "usage"}}.dump() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", e.what()}, {"kind", "internal"}}.dump() << '\n';
    return kNonConvergence;
  }
  return kUsageError;
}
