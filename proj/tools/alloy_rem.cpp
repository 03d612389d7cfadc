// Command-line front end: phase classification, free-energy and phase
// diagram CSV emitters, the Monte Carlo experiment driver, and the
// verification suites.
//
// Exit codes: 0 ok, 1 verification failure, 2 boundary point,
// 3 regime mismatch, 4 budget exceeded, 64 usage error, 65 bad config.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rem/accept.hpp"
#include "rem/model.hpp"
#include "rem/norm.hpp"
#include "rem/numerics.hpp"
#include "rem/phase.hpp"
#include "rem/simulate.hpp"
#include "rem/stable.hpp"
#include "rem/stats.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBoundary = 2;
constexpr int kExitRegime = 3;
constexpr int kExitBudget = 4;
constexpr int kExitUsage = 64;
constexpr int kExitConfig = 65;

unsigned default_workers() {
  if (const char* env = std::getenv("ALLOY_REM_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

json zone_json(const rem::ZoneReport& zr) {
  json j;
  j["zone"] = rem::zone_name(zr.zone);
  j["beta_plus"] = zr.beta_plus;
  if (zr.beta_circ) j["beta_circ"] = *zr.beta_circ;
  if (zr.beta_star) j["beta_star"] = *zr.beta_star;
  if (zr.beta_diamond) j["beta_diamond"] = *zr.beta_diamond;
  j["boundary_values"] = {{"z1_cut", zr.boundary_values.z1_cut},
                          {"split", zr.boundary_values.split},
                          {"z4_cut", zr.boundary_values.z4_cut}};
  return j;
}

json regime_json(const rem::RegimeReport& r) {
  json j;
  j["beta"] = r.beta;
  j["boundary"] = r.boundary;
  j["classical"] = r.classical;
  if (r.boundary) return j;
  j["lln_holds_below"] = r.lln_holds_below;
  j["clt_holds_below"] = r.clt_holds_below;
  j["stable_holds_above"] = r.stable_holds_above;
  j["tail_index"] = r.tail_index;
  j["dominant"] =
      r.dominant == rem::Component::Shifted ? "shifted" : "standard";
  j["lln_applies"] = r.lln_applies;
  j["clt_applies"] = r.clt_applies;
  j["stable_applies"] = r.stable_applies;
  j["at_lln_critical"] = r.at_lln_critical;
  j["at_clt_critical"] = r.at_clt_critical;
  json gaps = json::array();
  for (auto& g : r.gaps) gaps.push_back({g.first, g.second});
  j["gaps"] = gaps;
  return j;
}

int cmd_classify(double a, double sigma) {
  rem::ModelParams p{a, sigma};
  auto zr = rem::critical_betas(p);
  std::cout << zone_json(zr).dump(2) << "\n";
  return zr.zone == rem::Zone::Boundary ? kExitBoundary : kExitOk;
}

int cmd_phase_diagram(double a_min, double a_max, double s_min, double s_max,
                      int steps, const std::string& out) {
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot open " << out << "\n";
    return kExitConfig;
  }
  f << "a,sigma,zone,beta_plus,beta_clt,beta_stable_threshold,"
       "stable_alpha_formula\n";
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      double a = a_min + (a_max - a_min) * i / (steps - 1);
      double sigma = s_min + (s_max - s_min) * j / (steps - 1);
      rem::ModelParams p{a, sigma};
      auto zr = rem::classify_zone(p);
      f << a << ',' << sigma << ',' << rem::zone_name(zr.zone) << ','
        << zr.beta_plus << ',' << 0.5 * zr.beta_plus << ',';
      // threshold and tail formula are beta-independent; probe at beta = 1
      auto rr = rem::regime(1.0, p);
      if (rr.boundary && !rr.classical) {
        f << ",\n";
      } else {
        f << rr.stable_holds_above << ','
          << (rr.dominant == rem::Component::Shifted ? "sqrt2/(beta*sigma)"
                                                     : "sqrt2/beta")
          << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_free_energy(double a, double sigma, double b_min, double b_max,
                    int steps, const std::string& out) {
  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot open " << out << "\n";
    return kExitConfig;
  }
  rem::ModelParams p{a, sigma};
  f << "beta,p1,p2,p\n";
  f.precision(17);
  for (int i = 0; i < steps; ++i) {
    double beta = b_min + (b_max - b_min) * i / (steps > 1 ? steps - 1 : 1);
    f << beta << ',' << rem::free_energy_standard(beta) << ','
      << rem::free_energy_shifted(beta, p) << ','
      << rem::free_energy(beta, p) << "\n";
  }
  return kExitOk;
}

// Flat key-value config: one `key = value` per line, `#` comments.
// Keys: a, sigma, beta, n_values (comma separated), replicas, seed,
// statistic (lln-ratio | clt-normalized | stable-normalized), workers.
bool parse_config(const std::string& path, rem::ExperimentConfig& cfg,
                  std::string& err) {
  std::ifstream f(path);
  if (!f) {
    err = "cannot open config file: " + path;
    return false;
  }
  bool have_beta = false, have_n = false;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    std::string key, value;
    if (eq == std::string::npos) {
      std::istringstream ls(line);
      if (!(ls >> key)) continue;  // blank line
      err = "line " + std::to_string(lineno) + ": expected key = value";
      return false;
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    try {
      if (key == "a") {
        cfg.params.a = std::stod(value);
      } else if (key == "sigma") {
        cfg.params.sigma = std::stod(value);
      } else if (key == "beta") {
        cfg.beta = std::stod(value);
        have_beta = true;
      } else if (key == "n_values") {
        cfg.n_values.clear();
        std::istringstream vs(value);
        std::string tok;
        while (std::getline(vs, tok, ','))
          cfg.n_values.push_back(std::stoi(trim(tok)));
        have_n = !cfg.n_values.empty();
      } else if (key == "replicas") {
        cfg.replicas = std::stoull(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "statistic") {
        if (value == "lln-ratio")
          cfg.statistic = rem::Statistic::LLNRatio;
        else if (value == "clt-normalized")
          cfg.statistic = rem::Statistic::CLTNormalized;
        else if (value == "stable-normalized")
          cfg.statistic = rem::Statistic::StableNormalized;
        else {
          err = "line " + std::to_string(lineno) +
                ": unknown statistic " + value;
          return false;
        }
      } else if (key == "workers") {
        cfg.workers = static_cast<unsigned>(std::stoul(value));
      } else {
        err = "line " + std::to_string(lineno) + ": unknown key " + key;
        return false;
      }
    } catch (const std::exception&) {
      err = "line " + std::to_string(lineno) + ": bad value for " + key;
      return false;
    }
  }
  if (!have_beta || !have_n) {
    err = "config must set beta and n_values";
    return false;
  }
  return true;
}

json summary_json(const rem::Summary& s) {
  return {{"mean", s.mean},     {"variance", s.variance},
          {"median", s.median}, {"q05", s.q05},
          {"q25", s.q25},       {"q75", s.q75},
          {"q95", s.q95},       {"max", s.max}};
}

int cmd_simulate(const std::string& config_path, const std::string& out_json,
                 const std::string& out_csv, std::optional<unsigned> workers,
                 bool reference_ks) {
  rem::ExperimentConfig cfg;
  cfg.workers = default_workers();
  std::string err;
  if (!parse_config(config_path, cfg, err)) {
    std::cerr << "config error: " << err << "\n";
    return kExitConfig;
  }
  if (workers) cfg.workers = *workers;

  auto runs = rem::run_experiment(cfg);
  auto rr = rem::regime(cfg.beta, cfg.params);

  json report;
  report["params"] = {{"a", cfg.params.a}, {"sigma", cfg.params.sigma}};
  report["beta"] = cfg.beta;
  report["seed"] = cfg.seed;
  report["replicas"] = cfg.replicas;
  report["statistic"] =
      cfg.statistic == rem::Statistic::LLNRatio ? "lln-ratio"
      : cfg.statistic == rem::Statistic::CLTNormalized ? "clt-normalized"
                                                       : "stable-normalized";
  report["zone"] = zone_json(rem::critical_betas(cfg.params));
  report["regime"] = regime_json(rr);

  json jruns = json::array();
  for (const auto& run : runs) {
    json jr;
    jr["n"] = run.n;
    jr["m"] = run.m;
    jr["log_scale"] = run.normalization.log_scale;
    jr["log_center"] = run.normalization.log_center == rem::kNegInf
                           ? json(nullptr)
                           : json(run.normalization.log_center);
    jr["drift"] = run.normalization.drift;
    jr["summary"] = summary_json(run.summary);

    if (cfg.statistic == rem::Statistic::CLTNormalized) {
      double ks = rem::ks_one_sample(
          run.values, [](double x) { return rem::normal_cdf(x); });
      jr["ks_vs_normal"] = ks;
      jr["ks_verdict"] = ks < 0.05 ? "PASS" : "FAIL";
    }
    if (cfg.statistic == rem::Statistic::StableNormalized &&
        run.values.size() >= 16) {
      // Hill on the positive upper tail (values above the median); k
      // sensitivity over N^0.4, sqrt(N), N^0.6.
      double med = rem::quantile(run.values, 0.5);
      std::vector<double> upper;
      for (double v : run.values)
        if (v > med) upper.push_back(v);
      double N = static_cast<double>(run.values.size());
      json hills;
      for (auto [label, k] :
           {std::pair<const char*, std::size_t>{"k_n04",
               static_cast<std::size_t>(std::ceil(std::pow(N, 0.4)))},
            {"k_sqrt", rem::hill_default_k(run.values.size())},
            {"k_n06",
             static_cast<std::size_t>(std::ceil(std::pow(N, 0.6)))}}) {
        try {
          hills[label] = {{"k", k}, {"estimate", rem::hill(upper, k)}};
        } catch (const std::exception& e) {
          hills[label] = {{"k", k}, {"error", e.what()}};
        }
      }
      jr["hill"] = hills;
      jr["tail_index_target"] = rr.tail_index;
      if (reference_ks) {
        auto spec = rem::stable_spec_for(cfg.beta, cfg.params, rr);
        double ks = rem::ks_two_sample(run.values,
                                       rem::reference_sample(spec));
        jr["ks_vs_reference_stable"] = ks;
        jr["ks_verdict"] = ks < 0.08 ? "PASS" : "FAIL";
      }
    }
    jruns.push_back(std::move(jr));
  }
  report["runs"] = std::move(jruns);

  if (!out_csv.empty()) {
    std::ofstream f(out_csv);
    if (!f) {
      std::cerr << "cannot open " << out_csv << "\n";
      return kExitConfig;
    }
    f.precision(17);
    f << "n,replica,log_s_total,log_s_standard,log_s_shifted,"
         "count_standard,max_log_term,value\n";
    for (const auto& run : runs) {
      for (std::size_t r = 0; r < run.replicas.size(); ++r) {
        const auto& rep = run.replicas[r];
        f << run.n << ',' << r << ',' << rep.log_s_total << ','
          << rep.log_s_standard << ',' << rep.log_s_shifted << ','
          << rep.count_standard << ',' << rep.max_log_term << ','
          << run.values[r] << "\n";
      }
    }
  }

  std::string dumped = report.dump(2) + "\n";
  if (!out_json.empty()) {
    std::ofstream f(out_json);
    if (!f) {
      std::cerr << "cannot open " << out_json << "\n";
      return kExitConfig;
    }
    f << dumped;
  } else {
    std::cout << dumped;
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, unsigned workers,
               const std::string& out_json) {
  std::vector<rem::CriterionResult> results;
  try {
    results = rem::run_verify_suite(suite, seed, workers);
  } catch (const rem::InvalidParams& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  bool all_pass = true;
  json jr = json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
              << r.detail << "\n";
    jr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  if (!out_json.empty()) {
    std::ofstream f(out_json);
    if (!f) {
      std::cerr << "cannot open " << out_json << "\n";
      return kExitConfig;
    }
    f << json{{"suite", suite}, {"seed", seed}, {"results", jr}}.dump(2)
      << "\n";
  }
  return all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alloy-type random energy model toolkit"};
  app.require_subcommand(1);

  double a = 0.0, sigma = 1.0;
  auto* classify = app.add_subcommand("classify", "classify (a, sigma)");
  classify->add_option("--a", a, "shift parameter")->required();
  classify->add_option("--sigma", sigma, "scale parameter")->required();

  double a_min = -4, a_max = 4, s_min = 0.1, s_max = 3;
  int steps = 200;
  std::string out;
  auto* pd = app.add_subcommand("phase-diagram", "zone grid as CSV");
  pd->add_option("--a-min", a_min);
  pd->add_option("--a-max", a_max);
  pd->add_option("--sigma-min", s_min);
  pd->add_option("--sigma-max", s_max);
  pd->add_option("--steps", steps)->check(CLI::Range(2, 10000));
  pd->add_option("--out", out, "output CSV path")->required();

  double b_min = 0.1, b_max = 3.0;
  int fe_steps = 100;
  std::string fe_out;
  auto* fe = app.add_subcommand("free-energy", "free-energy curve as CSV");
  fe->add_option("--a", a);
  fe->add_option("--sigma", sigma);
  fe->add_option("--beta-min", b_min)->check(CLI::PositiveNumber);
  fe->add_option("--beta-max", b_max)->check(CLI::PositiveNumber);
  fe->add_option("--steps", fe_steps)->check(CLI::Range(1, 1000000));
  fe->add_option("--out", fe_out, "output CSV path")->required();

  std::string config_path, sim_json, sim_csv;
  std::optional<unsigned> sim_workers;
  bool reference_ks = false;
  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo experiment");
  sim->add_option("config", config_path, "key=value config file")->required();
  sim->add_option("--out-json", sim_json, "JSON report path (default stdout)");
  sim->add_option("--out-csv", sim_csv, "per-replica CSV path");
  sim->add_option("--workers", sim_workers, "worker threads");
  sim->add_flag("--ks-reference", reference_ks,
                "two-sample KS against a 10^7 reference stable sample");

  std::string suite, verify_json;
  std::uint64_t seed = 0;
  unsigned verify_workers = default_workers();
  auto* ver = app.add_subcommand("verify", "run an acceptance suite");
  ver->add_option("suite", suite, "lln|clt|stable|free-energy|"
                                  "norm-functionals|phase|all")->required();
  ver->add_option("--seed", seed, "base seed");
  ver->add_option("--workers", verify_workers, "worker threads");
  ver->add_option("--out-json", verify_json, "JSON results path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(a, sigma);
    if (pd->parsed())
      return cmd_phase_diagram(a_min, a_max, s_min, s_max, steps, out);
    if (fe->parsed())
      return cmd_free_energy(a, sigma, b_min, b_max, fe_steps, fe_out);
    if (sim->parsed())
      return cmd_simulate(config_path, sim_json, sim_csv, sim_workers,
                          reference_ks);
    if (ver->parsed())
      return cmd_verify(suite, seed, verify_workers, verify_json);
  } catch (const rem::RegimeMismatch& e) {
    std::cerr << e.what() << "\n";
    return kExitRegime;
  } catch (const rem::BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const rem::NotStableRegime& e) {
    std::cerr << e.what() << "\n";
    return kExitRegime;
  } catch (const rem::NotCovered& e) {
    std::cerr << e.what() << "\n";
    return kExitRegime;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
