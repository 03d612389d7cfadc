#include "rem/accept.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <thread>

#include "rem/model.hpp"
#include "rem/norm.hpp"
#include "rem/numerics.hpp"
#include "rem/phase.hpp"
#include "rem/simulate.hpp"
#include "rem/stable.hpp"
#include "rem/stats.hpp"

namespace rem {

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Decorrelate sub-experiments sharing one user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return seed ^ detail::splitmix64(0xA11007EEULL + salt);
}

// log S_n over `reps` replicas, replica r on stream r.
std::vector<double> collect_log_s(const ModelParams& p, double beta, int n,
                                  std::uint64_t reps, std::uint64_t seed,
                                  unsigned workers) {
  SystemConfig c = SystemConfig::make(beta, n);
  std::vector<double> out(reps);
  unsigned nw = std::max(1u, workers);
  nw = static_cast<unsigned>(std::min<std::uint64_t>(nw, reps));
  auto work = [&](std::uint64_t r0, std::uint64_t r1) {
    for (std::uint64_t r = r0; r < r1; ++r)
      out[r] = simulate_replica(c, p, RngStream{seed, r}).log_s_total;
  };
  if (nw <= 1) {
    work(0, reps);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t per = (reps + nw - 1) / nw;
    for (unsigned w = 0; w < nw; ++w) {
      std::uint64_t r0 = w * per, r1 = std::min<std::uint64_t>(reps, r0 + per);
      if (r0 >= r1) break;
      pool.emplace_back(work, r0, r1);
    }
    for (auto& t : pool) t.join();
  }
  return out;
}

std::vector<double> run_values(const ModelParams& p, double beta, int n,
                               std::uint64_t reps, Statistic stat,
                               std::uint64_t seed, unsigned workers) {
  ExperimentConfig cfg;
  cfg.params = p;
  cfg.beta = beta;
  cfg.n_values = {n};
  cfg.replicas = reps;
  cfg.seed = seed;
  cfg.statistic = stat;
  cfg.workers = workers;
  return run_experiment(cfg).front().values;
}

// ---- criterion 1: free-energy convergence -------------------------------

CriterionResult c1_free_energy(std::uint64_t seed, unsigned workers) {
  const ModelParams points[] = {{0, 1}, {1, 2}, {-3, 2}, {0.2, 0.5}};
  const double betas[] = {0.3, 0.8, 1.5, 2.5};
  const std::uint64_t reps = 100;

  CriterionResult r{"free-energy-convergence", true, ""};
  double worst = 0.0;
  std::string fails;
  std::uint64_t salt = 0;
  for (const auto& p : points) {
    for (double beta : betas) {
      double target = free_energy(beta, p);
      double gap[2];
      const int ns[2] = {10, 18};
      for (int i = 0; i < 2; ++i) {
        auto ls = collect_log_s(p, beta, ns[i], reps,
                                mix_seed(seed, 100 + salt), workers);
        for (auto& v : ls) v /= ns[i];
        gap[i] = std::abs(quantile(ls, 0.5) - target);
      }
      ++salt;
      worst = std::max(worst, gap[1]);
      bool ok = gap[1] <= 0.08 && gap[1] < gap[0];
      if (!ok) {
        r.pass = false;
        fails += fmt(" (a=%g,s=%g,b=%g: gap18=%.4f gap10=%.4f)", p.a, p.sigma,
                     beta, gap[1], gap[0]);
      }
    }
  }
  r.detail = fmt("16 combos, worst |median(log S)/18 - P| = %.4f, tol 0.08",
                 worst) + (fails.empty() ? "" : "; fails:" + fails);
  return r;
}

// ---- criterion 2: LLN ---------------------------------------------------

CriterionResult c2_lln(std::uint64_t seed, unsigned workers) {
  CriterionResult r{"lln", true, ""};
  std::string d;

  const struct { ModelParams p; double beta; } sub[] = {
      {{1, 2}, 0.5}, {{0, 1}, 0.9}};
  int salt = 0;
  for (const auto& s : sub) {
    ExperimentConfig cfg;
    cfg.params = s.p;
    cfg.beta = s.beta;
    cfg.n_values = {12, 16};
    cfg.replicas = 500;
    cfg.seed = mix_seed(seed, 200 + salt++);
    cfg.statistic = Statistic::LLNRatio;
    cfg.workers = workers;
    auto runs = run_experiment(cfg);
    double mean16 = runs[1].summary.mean;
    double v12 = runs[0].summary.variance, v16 = runs[1].summary.variance;
    bool ok = mean16 >= 0.97 && mean16 <= 1.03 && v16 < v12;
    if (!ok) r.pass = false;
    d += fmt(" [a=%g,s=%g,b=%g: mean16=%.4f in [0.97,1.03], var12=%.2e > "
             "var16=%.2e: %s]",
             s.p.a, s.p.sigma, s.beta, mean16, v12, v16, ok ? "ok" : "FAIL");
  }

  auto crit = run_values({0, 1}, kSqrt2, 16, 500, Statistic::LLNRatio,
                         mix_seed(seed, 210), workers);
  double mean = summarize(crit).mean;
  bool ok = mean >= 0.43 && mean <= 0.57;
  if (!ok) r.pass = false;
  d += fmt(" [critical b=sqrt2: mean=%.4f in [0.43,0.57]: %s]", mean,
           ok ? "ok" : "FAIL");
  r.detail = d;
  return r;
}

// ---- criterion 3: CLT ---------------------------------------------------

CriterionResult c3_clt(std::uint64_t seed, unsigned workers) {
  CriterionResult r{"clt", true, ""};
  std::string d;

  const struct { ModelParams p; double beta; } sub[] = {
      {{0, 1}, 0.5}, {{1, 2}, 0.3}};
  int salt = 0;
  for (const auto& s : sub) {
    auto vals = run_values(s.p, s.beta, 16, 2000, Statistic::CLTNormalized,
                           mix_seed(seed, 300 + salt++), workers);
    double ks = ks_one_sample(vals, [](double x) { return normal_cdf(x); });
    bool ok = ks < 0.05;
    if (!ok) r.pass = false;
    d += fmt(" [a=%g,s=%g,b=%g: KS vs Phi = %.4f < 0.05: %s]", s.p.a,
             s.p.sigma, s.beta, ks, ok ? "ok" : "FAIL");
  }

  auto crit = run_values({0, 1}, 0.5 * kSqrt2, 16, 2000,
                         Statistic::CLTNormalized, mix_seed(seed, 310),
                         workers);
  double var = summarize(crit).variance;
  bool ok = var >= 0.35 && var <= 0.65;
  if (!ok) r.pass = false;
  d += fmt(" [critical b=sqrt2/2: var=%.4f in [0.35,0.65]: %s]", var,
           ok ? "ok" : "FAIL");
  r.detail = d;
  return r;
}

// ---- criteria 4 and 5: stable fluctuations ------------------------------

CriterionResult c4_stable_tail(std::uint64_t seed, unsigned workers) {
  CriterionResult r{"stable-tail-index", true, ""};
  std::string d;

  const struct { ModelParams p; double beta; } sub[] = {
      {{0, 1}, 2.0}, {{1, 2}, 1.0}};
  int salt = 0;
  for (const auto& s : sub) {
    const std::uint64_t reps = 4000;
    auto vals = run_values(s.p, s.beta, 16, reps, Statistic::StableNormalized,
                           mix_seed(seed, 400 + salt++), workers);

    // The limit law is spectrally positive; Hill reads its upper tail only.
    double med = quantile(vals, 0.5);
    std::vector<double> upper;
    for (double v : vals)
      if (v > med) upper.push_back(v);
    std::size_t k = hill_default_k(reps);
    double h = hill(upper, k);
    double target = 0.5 * kSqrt2;
    bool hill_ok = std::abs(h - target) <= 0.15;
    if (!hill_ok) r.pass = false;

    auto spec = stable_spec_for(s.beta, s.p, regime(s.beta, s.p));
    double ks = ks_two_sample(vals, reference_sample(spec));
    bool ks_ok = ks < 0.08;
    if (!ks_ok) r.pass = false;

    d += fmt(" [a=%g,s=%g,b=%g: hill(k=%zu)=%.4f vs %.4f+-0.15: %s; "
             "KS vs stable=%.4f < 0.08: %s]",
             s.p.a, s.p.sigma, s.beta, k, h, target, hill_ok ? "ok" : "FAIL",
             ks, ks_ok ? "ok" : "FAIL");
  }
  r.detail = d;
  return r;
}

CriterionResult c5_classical_drift(std::uint64_t seed, unsigned workers) {
  const ModelParams p{0, 1};
  const double beta = 2.0 * kSqrt2;
  auto vals = run_values(p, beta, 16, 4000, Statistic::StableNormalized,
                         mix_seed(seed, 500), workers);
  double med = quantile(vals, 0.5);
  auto spec = stable_spec_for(beta, p, regime(beta, p));
  double ref = reference_quantiles(spec, {0.5}).front();
  double rel = std::abs(med / ref - 1.0);
  CriterionResult r{"classical-drift", rel <= 0.25, ""};
  r.detail = fmt("median S/gamma = %.4f, reference stable median = %.4f, "
                 "relative gap %.3f <= 0.25 (drift mu = %.4f)",
                 med, ref, rel, spec.drift);
  return r;
}

// ---- criterion 6: normalization functionals -----------------------------

CriterionResult c6_norm_functionals(std::uint64_t seed, unsigned workers) {
  (void)workers;
  CriterionResult r{"norm-functionals", true, ""};
  double worst_rel = 0.0;
  std::string fails;

  const std::size_t samples = 10'000'000;
  int salt = 0;
  for (int n : {1, 4}) {
    for (double beta : {0.5, 1.0}) {
      double log_scale = log_gamma(beta, n);
      double scale = std::exp(log_scale);
      double m = static_cast<double>(level_count(n));
      double sn = std::sqrt(static_cast<double>(n));

      // shared 10^7 standard normals for the three tau values
      RngStream stream{mix_seed(seed, 600 + salt++), 0};
      const double taus[] = {0.5, 1.0, 2.0};
      double acc[3] = {0, 0, 0};
      for (std::size_t i = 0; i < samples / 2; ++i) {
        NormalPair np = normal_pair(stream, i);
        for (double z : {np.z0, np.z1}) {
          double xs = std::exp(beta * sn * z) / scale;  // X / scale
          for (int t = 0; t < 3; ++t)
            if (xs <= taus[t]) acc[t] += xs;
        }
      }
      for (int t = 0; t < 3; ++t) {
        double mc = m * acc[t] / static_cast<double>(samples);
        double j = std::exp(truncated_moment(1, taus[t], beta, n, log_scale));
        double rel = std::abs(j / mc - 1.0);
        worst_rel = std::max(worst_rel, rel);
        if (rel > 0.01) {
          r.pass = false;
          fails += fmt(" (n=%d,b=%g,tau=%g: J=%.6g MC=%.6g rel=%.4f)", n, beta,
                       taus[t], j, mc, rel);
        }
      }
    }
  }

  double worst_tail = 0.0;
  for (double beta : {1.0, 2.0}) {
    double log_scale = log_gamma(beta, 400);
    for (double x : {0.5, 1.0, 2.0}) {
      double ts = tail_sum(x, beta, 400, log_scale);
      double lim = kInvSqrt2Pi * std::pow(x, -kSqrt2 / beta);
      double rel = std::abs(ts / lim - 1.0);
      worst_tail = std::max(worst_tail, rel);
      if (rel > 0.05) {
        r.pass = false;
        fails += fmt(" (tail b=%g,x=%g: rel=%.4f)", beta, x, rel);
      }
    }
  }
  r.detail = fmt("truncated moments vs 10^7 MC: worst rel %.4f (tol 0.01); "
                 "tail sums at n=400: worst rel %.4f (tol 0.05)",
                 worst_rel, worst_tail) +
             (fails.empty() ? "" : "; fails:" + fails);
  return r;
}

// ---- criterion 7: phase geometry ----------------------------------------

// Independent transcription of the caption inequalities, long double
// arithmetic, deliberately not sharing code with classify_zone.
Zone caption_zone(double a, double sigma) {
  long double s = sigma, av = a;
  long double r2 = std::sqrt(2.0L);
  long double z1 = (1.0L - s * s) / (r2 * s);
  long double z4 = (1.0L - s * s) / r2;
  long double sp = r2 * (1.0L - s);
  long double tol = 1e-12L * std::max<long double>(1.0L, std::abs(av));
  if (std::abs(av - z1) <= tol || std::abs(av - z4) <= tol ||
      std::abs(av - sp) <= tol)
    return Zone::Boundary;
  if (av > z1) return Zone::Z1;
  if (av < z4) return Zone::Z4;
  if (std::abs(s - 1.0L) <= 1e-12L) return Zone::Boundary;
  if (s > 1.0L) return av > sp ? Zone::Z2 : Zone::Z3;
  return av > sp ? Zone::Z6 : Zone::Z5;
}

CriterionResult c7_phase(std::uint64_t, unsigned) {
  CriterionResult r{"phase-geometry", true, ""};
  std::string fails;

  int mismatches = 0;
  const int steps = 400;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      double a = -4.0 + 8.0 * i / (steps - 1);
      double sigma = 0.1 + 2.9 * j / (steps - 1);
      if (classify_zone({a, sigma}).zone != caption_zone(a, sigma))
        ++mismatches;
    }
  }
  if (mismatches > 0) {
    r.pass = false;
    fails += fmt(" (%d grid mismatches)", mismatches);
  }

  const ModelParams points[] = {{0, 1}, {1, 2}, {-3, 2}, {0.2, 0.5}, {2, 0.5}};
  double worst_jump = 0.0;
  const double eps = 1e-8;
  for (const auto& p : points) {
    std::vector<double> branch = {kSqrt2, kSqrt2 / p.sigma};
    if (std::abs(p.sigma - 1.0) > 1e-12) {
      double bc = 2.0 * p.a / (1.0 - p.sigma * p.sigma);
      if (bc > 0.0) branch.push_back(bc);
    }
    for (double b : branch) {
      double jump =
          std::abs(free_energy(b - eps, p) - free_energy(b + eps, p));
      worst_jump = std::max(worst_jump, jump);
    }
  }
  if (worst_jump > 1e-6) {
    r.pass = false;
    fails += fmt(" (continuity jump %.2e)", worst_jump);
  }

  // beta* and beta_diamond are the smaller roots of their quadratics.
  double worst_root = 0.0;
  for (const auto& p : points) {
    auto zr = critical_betas(p);
    if (zr.beta_star) {
      double b = *zr.beta_star, t = p.sigma * kSqrt2 + p.a;
      worst_root = std::max(worst_root, std::abs(b * b - 2.0 * t * b + 2.0));
    }
    if (zr.beta_diamond) {
      double b = *zr.beta_diamond, s2 = p.sigma * p.sigma;
      worst_root = std::max(
          worst_root, std::abs(s2 * b * b - 2.0 * (kSqrt2 - p.a) * b + 2.0));
    }
  }
  if (worst_root > 1e-10) {
    r.pass = false;
    fails += fmt(" (root residual %.2e)", worst_root);
  }

  r.detail = fmt("400x400 grid zone match; free-energy continuity jump <= "
                 "%.2e (tol 1e-6); root residual <= %.2e (tol 1e-10)",
                 worst_jump, worst_root) +
             (fails.empty() ? "" : "; fails:" + fails);
  return r;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {
      "free-energy", "lln", "clt", "stable", "norm-functionals", "phase",
      "all"};
  return names;
}

std::vector<CriterionResult> run_verify_suite(const std::string& suite,
                                              std::uint64_t seed,
                                              unsigned workers) {
  std::vector<CriterionResult> out;
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "free-energy") {
    out.push_back(c1_free_energy(seed, workers));
    known = true;
  }
  if (all || suite == "lln") {
    out.push_back(c2_lln(seed, workers));
    known = true;
  }
  if (all || suite == "clt") {
    out.push_back(c3_clt(seed, workers));
    known = true;
  }
  if (all || suite == "stable") {
    out.push_back(c4_stable_tail(seed, workers));
    out.push_back(c5_classical_drift(seed, workers));
    known = true;
  }
  if (all || suite == "norm-functionals") {
    out.push_back(c6_norm_functionals(seed, workers));
    known = true;
  }
  if (all || suite == "phase") {
    out.push_back(c7_phase(seed, workers));
    known = true;
  }
  if (!known) throw InvalidParams("unknown verify suite: " + suite);
  return out;
}

}  // namespace rem
