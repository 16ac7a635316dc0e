#pragma once

// Command-line front end: schedule | cert verify | solve | bench.
//
// Exit codes: 0 all checks pass, 1 a verification or soundness check failed,
// 2 usage or I/O error. Requires CLI11.hpp and json.hpp on the include path.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "silverprox/certificate.hpp"
#include "silverprox/identity.hpp"
#include "silverprox/instances.hpp"
#include "silverprox/parallel.hpp"
#include "silverprox/rates.hpp"
#include "silverprox/schedule.hpp"
#include "silverprox/solver.hpp"

namespace silverprox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kVerifySchema = "silverprox.verify/1";
inline constexpr const char* kSolveSchema = "silverprox.solve/1";
inline constexpr const char* kBenchSchema = "silverprox.bench/1";
inline constexpr const char* kScheduleSchema = "silverprox.schedule/1";

/// Raised for bad arguments or unwritable outputs; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KRange {
  int first = 1;
  int last = 1;
};

/// Largest k accepted, from SILVERPROX_MAX_K (default 8).
inline int max_k_from_env() {
  const char* env = std::getenv("SILVERPROX_MAX_K");
  if (env == nullptr || *env == '\0') return 8;
  try {
    std::size_t used = 0;
    const int v = std::stoi(env, &used);
    if (used != std::string(env).size() || v < 1 || v > 30) throw std::invalid_argument("range");
    return v;
  } catch (const std::exception&) {
    throw UsageError("SILVERPROX_MAX_K must be an integer in [1, 30], got \"" + std::string(env) + "\"");
  }
}

/// Parses "K" or "A..B".
inline KRange parse_k_range(const std::string& text, int max_k) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw UsageError("--k: expected K or A..B, got \"" + text + "\"");
    return v;
  };
  KRange r;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.first = r.last = to_int(text);
  } else {
    r.first = to_int(text.substr(0, dots));
    r.last = to_int(text.substr(dots + 2));
  }
  if (r.first < 1) throw UsageError("--k: k must be >= 1");
  if (r.last < r.first) throw UsageError("--k: empty range \"" + text + "\"");
  if (r.last > max_k) {
    throw UsageError("--k: k = " + std::to_string(r.last) + " exceeds SILVERPROX_MAX_K = " + std::to_string(max_k));
  }
  return r;
}

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Opens `path` for writing, or returns nullptr for the stdout sentinel "-".
inline std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;
  auto f = std::make_unique<std::ofstream>(path, std::ios::out | std::ios::trunc);
  if (!*f) throw UsageError("cannot open \"" + path + "\" for writing");
  return f;
}

inline void finish_output(std::ofstream* f, const std::string& path) {
  if (f == nullptr) return;
  f->flush();
  if (!*f) throw UsageError("write to \"" + path + "\" failed");
}

/// Deterministic per-item seed derived from the global seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string json_path;
  std::string csv_path;
  bool exact = false;
  unsigned threads = 1;
};

// ---------------------------------------------------------------- schedule

struct ScheduleOptions {
  std::string k;
  bool as_float = false;
  bool companion = false;
};

inline int cmd_schedule(const GlobalOptions& g, const ScheduleOptions& o, std::ostream& out) {
  const KRange r = parse_k_range(o.k, max_k_from_env());
  if (r.first != r.last) throw UsageError("schedule: --k takes a single value");
  const int k = r.first;
  const std::vector<RadicalScalar> pi = silver_schedule(k);
  const std::vector<RadicalScalar> c = c_sequence(k);
  const auto& shown = o.companion ? c : pi;
  for (const auto& v : shown) out << (o.as_float ? format_double(to_float(v)) : v.to_string()) << '\n';

  if (!g.csv_path.empty()) {
    auto file = open_output(g.csv_path);
    std::ostream& csv = file ? *file : out;
    csv << "# schema=" << kScheduleSchema << " k=" << k << '\n';
    csv << "sequence,index,a_num,a_den,b_num,b_den,float\n";
    auto emit = [&](const char* name, const std::vector<RadicalScalar>& xs) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& a = xs[i].rational_part();
        const auto& b = xs[i].radical_part();
        csv << name << ',' << i << ',' << a.get_num().get_str() << ',' << a.get_den().get_str() << ','
            << b.get_num().get_str() << ',' << b.get_den().get_str() << ',' << format_double(to_float(xs[i]))
            << '\n';
      }
    };
    emit("pi", pi);
    emit("c", c);
    finish_output(file.get(), g.csv_path);
  }
  return kExitOk;
}

// ------------------------------------------------------------- cert verify

struct VerifyOptions {
  std::string k = "1..6";
  std::size_t trials = 20;
  std::size_t dim = 4;
  std::string tamper;
};

/// Perturbs one entry of the named certificate object (test hook).
inline void tamper_bundle(CertificateBundle& b, const std::string& what) {
  if (what == "lambda") {
    b.lambda.star[0] += RadicalScalar(1);
  } else if (what == "mu") {
    b.mu.star[0] += RadicalScalar(1);
  } else if (what == "slack") {
    b.slack.s(0, 0) += RadicalScalar(1);
  } else if (what == "u") {
    b.u.init += RadicalScalar(1);
  } else {
    throw UsageError("--tamper: expected lambda, mu, slack or u, got \"" + what + "\"");
  }
}

inline nlohmann::ordered_json check_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["pass"] = r.pass;
  if (r.violation) j["violation"] = r.violation->describe();
  return j;
}

inline int cmd_verify(const GlobalOptions& g, const VerifyOptions& o, std::ostream& out) {
  const KRange r = parse_k_range(o.k, max_k_from_env());
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  if (o.dim < 1) throw UsageError("--dim must be >= 1");
  if (!o.tamper.empty() && o.tamper != "lambda" && o.tamper != "mu" && o.tamper != "slack" && o.tamper != "u") {
    throw UsageError("--tamper: expected lambda, mu, slack or u, got \"" + o.tamper + "\"");
  }
  auto file = open_output(g.json_path);

  const std::size_t count = static_cast<std::size_t>(r.last - r.first + 1);
  std::vector<nlohmann::ordered_json> per_k(count);
  std::vector<char> ok(count, 0);
  parallel_for(count, g.threads, [&](std::size_t idx) {
    const int k = r.first + static_cast<int>(idx);
    CertificateBundle b = CertificateBundle::build(k);
    if (!o.tamper.empty()) tamper_bundle(b, o.tamper);
    const CheckReport nonneg = check_multipliers_nonneg(b);
    const CheckReport lap = check_laplacian(b);
    const CheckReport schur = check_schur_psd(b);
    const IdentityReport id = verify_descent_identity(b, o.trials, o.dim, derive_seed(g.seed, k));
    const RadicalScalar rate = rate_from_certificate(k);

    nlohmann::ordered_json j;
    j["k"] = k;
    j["n"] = b.n();
    j["nonneg"] = check_json(nonneg);
    j["laplacian"] = check_json(lap);
    j["schur"] = check_json(schur);
    j["identity"] = {{"trials", id.trials}, {"dim", id.dim}, {"failures", id.failures.size()}};
    if (!id.pass()) {
      j["identity"]["first_failure"] = {{"trial", id.failures.front().trial},
                                        {"residual", id.failures.front().residual.to_string()}};
    }
    j["rate_exact"] = rate.to_string();
    j["rate_float"] = to_float(rate);
    per_k[idx] = std::move(j);
    ok[idx] = nonneg.pass && lap.pass && schur.pass && id.pass();
  });

  nlohmann::ordered_json report;
  report["schema"] = kVerifySchema;
  report["seed"] = g.seed;
  report["trials"] = o.trials;
  report["dim"] = o.dim;
  if (!o.tamper.empty()) report["tamper"] = o.tamper;
  report["results"] = nlohmann::ordered_json::array();
  bool all = true;
  for (std::size_t i = 0; i < count; ++i) {
    report["results"].push_back(per_k[i]);
    all = all && ok[i];
  }
  report["pass"] = all;

  if (file) {
    *file << report.dump(2) << '\n';
    finish_output(file.get(), g.json_path);
    for (std::size_t i = 0; i < count; ++i) {
      out << "k=" << per_k[i]["k"].get<int>() << " n=" << per_k[i]["n"].get<std::size_t>() << ' '
          << (ok[i] ? "PASS" : "FAIL") << '\n';
    }
  } else {
    out << report.dump(2) << '\n';
  }
  return all ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------- solve

enum class ScheduleKind { silver, constant };

struct ScheduleChoice {
  ScheduleKind kind = ScheduleKind::silver;
  RadicalScalar constant{1};
};

/// Parses "silver", "constant" or "constant:c" with rational c in (0, 2).
inline ScheduleChoice parse_schedule_choice(const std::string& text) {
  ScheduleChoice s;
  if (text == "silver") return s;
  if (text == "constant") {
    s.kind = ScheduleKind::constant;
    return s;
  }
  if (text.rfind("constant:", 0) == 0) {
    s.kind = ScheduleKind::constant;
    const std::string value = text.substr(9);
    const auto slash = value.find('/');
    try {
      Rational q;
      if (slash == std::string::npos && value.find('.') != std::string::npos) {
        // Decimal literal, e.g. 1.5 -> 15/10.
        const auto dot = value.find('.');
        const std::string digits = value.substr(0, dot) + value.substr(dot + 1);
        mpz_class den = 1;
        for (std::size_t i = dot + 1; i < value.size(); ++i) den *= 10;
        q = Rational(mpz_class(digits), den);
      } else {
        q = Rational(value);
      }
      q.canonicalize();
      s.constant = RadicalScalar(q);
    } catch (const std::exception&) {
      throw UsageError("--schedule: cannot parse constant \"" + value + "\"");
    }
    if (!(s.constant > RadicalScalar(0)) || !(s.constant < RadicalScalar(2))) {
      throw UsageError("--schedule: constant stepsize must lie in (0, 2)");
    }
    return s;
  }
  throw UsageError("--schedule: expected silver, constant or constant:c, got \"" + text + "\"");
}

inline std::string to_string(const ScheduleChoice& s) {
  if (s.kind == ScheduleKind::silver) return "silver";
  if (s.constant == RadicalScalar(1)) return "constant";
  return "constant:" + s.constant.rational_part().get_str();
}

inline std::vector<RadicalScalar> schedule_steps(const ScheduleChoice& s, int k) {
  if (s.kind == ScheduleKind::silver) return silver_schedule(k);
  return std::vector<RadicalScalar>(horizon(k), s.constant);
}

/// Guaranteed bound on F(x_n) - F_* after n steps, in units of M |x0 - x_*|^2.
/// Silver: certificate constant at n = 2^j - 1. Constant c <= 1: 1 / (2 c n).
/// Constant c > 1 has no bound here.
inline std::optional<RadicalScalar> bound_constant(const ScheduleChoice& s, std::size_t n) {
  if (s.kind == ScheduleKind::silver) {
    if (((n + 1) & n) != 0 || n == 0) return std::nullopt;
    int j = 0;
    while ((std::size_t{1} << j) - 1 < n) ++j;
    return rate_from_certificate(j);
  }
  if (s.constant > RadicalScalar(1)) return std::nullopt;
  return RadicalScalar(1) / (RadicalScalar(2) * s.constant * RadicalScalar(static_cast<long>(n)));
}

inline const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names{"lasso", "box-qp", "lower-bound", "vanilla-qp"};
  return names;
}

inline NonsmoothKind problem_kind(const std::string& problem) {
  if (problem == "lasso") return NonsmoothKind::l1;
  if (problem == "box-qp") return NonsmoothKind::box;
  if (problem == "vanilla-qp") return NonsmoothKind::zero;
  if (problem == "lower-bound") return NonsmoothKind::halfline;
  throw UsageError("--problem: expected lasso, box-qp, lower-bound or vanilla-qp, got \"" + problem + "\"");
}

template <class S>
CompositeInstance<S> make_problem(const std::string& problem, int k, std::size_t dim, std::uint64_t seed) {
  const NonsmoothKind kind = problem_kind(problem);
  if (problem == "lower-bound") {
    auto lb = lower_bound_instance<S>(k);
    return {std::move(lb.problem), std::move(lb.x0)};
  }
  std::mt19937_64 rng(seed);
  if constexpr (ScalarTraits<S>::exact) {
    return random_rational_instance(kind, dim, rng);
  } else {
    return random_composite_instance(kind, dim, rng);
  }
}

template <class S>
S to_scalar(const RadicalScalar& x) {
  return ScalarTraits<S>::from_radical(x);
}

/// Outcome of one run: gap at n, distance^2 at start, bound at n, soundness.
struct RunSummary {
  std::size_t n = 0;
  double gap = 0;
  std::string gap_exact;  // set in exact mode
  double dist2 = 0;
  std::optional<double> bound;
  bool sound = true;
};

template <class S>
bool within_bound(const S& gap, const S& bound, const S& f_star) {
  if constexpr (ScalarTraits<S>::exact) {
    (void)f_star;
    return gap <= bound;
  } else {
    return gap <= bound + 1e-9 * (1.0 + std::abs(f_star)) + 1e-9 * std::abs(bound);
  }
}

/// Runs one instance with one schedule; optionally writes per-iteration CSV.
template <class S>
RunSummary run_schedule(const CompositeInstance<S>& inst, const ScheduleChoice& choice, int k,
                        std::ostream* csv) {
  std::vector<S> steps;
  for (const auto& a : schedule_steps(choice, k)) steps.push_back(to_scalar<S>(a));
  const Trace<S> t = proximal_gd_run(inst.problem, steps, inst.x0);
  const S f_star = t.objective(kStar);
  const S big_m = inst.problem.smooth.smoothness;
  const S dist2 = squared_norm(sub(inst.x0, *inst.problem.optimum));

  RunSummary s;
  s.n = steps.size();
  s.dist2 = ScalarTraits<S>::to_double(dist2);
  if (csv) *csv << "iter,stepsize,F_gap,dist_to_opt,bound_at_milestone\n";
  for (std::size_t i = 0; i <= s.n; ++i) {
    const std::optional<RadicalScalar> c = i == 0 ? std::nullopt : bound_constant(choice, i);
    std::optional<S> bound;
    if (c) bound = to_scalar<S>(*c) * big_m * dist2;
    // The indicator is +inf at an infeasible start; no finite gap there.
    const S gap = t.objective(i) - f_star;
    const double gap_d = ScalarTraits<S>::to_double(gap);
    if (bound && !within_bound(gap, *bound, f_star)) s.sound = false;
    if (csv) {
      const double dist = std::sqrt(ScalarTraits<S>::to_double(squared_norm(sub(t.x[i], *inst.problem.optimum))));
      *csv << i << ',' << (i == 0 ? std::string("0") : format_double(ScalarTraits<S>::to_double(t.steps[i - 1]) *
                                                                     ScalarTraits<S>::to_double(big_m)))
           << ',' << format_double(gap_d) << ',' << format_double(dist) << ','
           << (bound ? format_double(ScalarTraits<S>::to_double(*bound)) : std::string()) << '\n';
    }
    if (i == s.n) {
      s.gap = gap_d;
      if constexpr (ScalarTraits<S>::exact) s.gap_exact = gap.to_string();
      if (bound) s.bound = ScalarTraits<S>::to_double(*bound);
    }
  }
  return s;
}

struct SolveOptions {
  std::string problem;
  std::string k;
  std::string schedule = "silver";
  std::size_t dim = 8;
};

inline int cmd_solve(const GlobalOptions& g, const SolveOptions& o, std::ostream& out) {
  const KRange r = parse_k_range(o.k, max_k_from_env());
  if (r.first != r.last) throw UsageError("solve: --k takes a single value");
  const int k = r.first;
  problem_kind(o.problem);
  const ScheduleChoice choice = parse_schedule_choice(o.schedule);
  if (o.dim < 1) throw UsageError("--dim must be >= 1");

  auto file = open_output(g.csv_path);
  std::ostringstream table;
  const std::uint64_t seed = derive_seed(g.seed, 0);
  RunSummary s;
  if (g.exact) {
    s = run_schedule(make_problem<RadicalScalar>(o.problem, k, o.dim, seed), choice, k, &table);
  } else {
    s = run_schedule(make_problem<double>(o.problem, k, o.dim, seed), choice, k, &table);
  }
  std::ostream& csv = file ? *file : out;
  csv << "# schema=" << kSolveSchema << " problem=" << o.problem << " k=" << k << " schedule=" << to_string(choice)
      << " mode=" << (g.exact ? "exact" : "float") << " seed=" << g.seed << '\n';
  csv << table.str();
  finish_output(file.get(), g.csv_path);
  if (file) {
    out << "n=" << s.n << " F_gap=" << format_double(s.gap);
    if (!s.gap_exact.empty()) out << " (" << s.gap_exact << ")";
    if (s.bound) out << " bound=" << format_double(*s.bound);
    out << (s.sound ? " sound" : " UNSOUND") << '\n';
  }
  return s.sound ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------- bench

struct BenchOptions {
  std::string k = "1..8";
  std::vector<std::string> problems{"lower-bound", "vanilla-qp", "lasso", "box-qp"};
  std::size_t trials = 1;
  std::size_t dim = 8;
  bool timing = false;
};

struct BenchRow {
  std::string instance;
  std::size_t trial = 0;
  std::string schedule;
  int k = 0;
  std::size_t n = 0;
  double gap = 0;
  std::optional<double> bound;
  double ratio_to_constant = 0;
  double wall_time = 0;
  bool sound = true;
};

inline std::vector<BenchRow> run_bench(const GlobalOptions& g, const BenchOptions& o) {
  const KRange r = parse_k_range(o.k, max_k_from_env());
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  if (o.dim < 1) throw UsageError("--dim must be >= 1");
  for (const auto& p : o.problems) problem_kind(p);
  const std::vector<ScheduleChoice> schedules{ScheduleChoice{}, ScheduleChoice{ScheduleKind::constant, RadicalScalar(1)}};

  std::vector<BenchRow> rows;
  for (std::size_t pi = 0; pi < o.problems.size(); ++pi) {
    const std::size_t trials = o.problems[pi] == "lower-bound" ? 1 : o.trials;
    for (std::size_t t = 0; t < trials; ++t)
      for (const auto& sc : schedules)
        for (int k = r.first; k <= r.last; ++k) {
          BenchRow row;
          row.instance = o.problems[pi];
          row.trial = t;
          row.schedule = to_string(sc);
          row.k = k;
          rows.push_back(row);
        }
  }

  parallel_for(rows.size(), g.threads, [&](std::size_t i) {
    BenchRow& row = rows[i];
    const ScheduleChoice sc = parse_schedule_choice(row.schedule);
    // The same instance is used across k and schedules within a trial.
    const auto& names = problem_names();
    const auto tag = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), row.instance) - names.begin());
    const std::uint64_t seed = derive_seed(g.seed, tag + 1, row.trial);
    const auto start = std::chrono::steady_clock::now();
    RunSummary s;
    double big_m = 1;
    if (g.exact || row.instance == "lower-bound") {
      auto inst = make_problem<RadicalScalar>(row.instance, row.k, o.dim, seed);
      big_m = to_float(inst.problem.smooth.smoothness);
      s = run_schedule(inst, sc, row.k, nullptr);
    } else {
      auto inst = make_problem<double>(row.instance, row.k, o.dim, seed);
      big_m = inst.problem.smooth.smoothness;
      s = run_schedule(inst, sc, row.k, nullptr);
    }
    const auto stop = std::chrono::steady_clock::now();
    row.n = s.n;
    row.gap = s.gap;
    row.bound = s.bound;
    row.sound = s.sound;
    const double tight_constant = constant_baseline(s.n, big_m, s.dist2);
    row.ratio_to_constant = tight_constant > 0 ? s.gap / tight_constant : 0.0;
    row.wall_time = o.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
  });
  return rows;
}

inline int cmd_bench(const GlobalOptions& g, const BenchOptions& o, std::ostream& out, std::ostream& err) {
  const std::vector<BenchRow> rows = run_bench(g, o);
  auto csv_file = open_output(g.csv_path);
  auto json_file = g.json_path.empty() ? nullptr : open_output(g.json_path);

  std::ostream& csv = csv_file ? *csv_file : out;
  csv << "# schema=" << kBenchSchema << " seed=" << g.seed << " mode=" << (g.exact ? "exact" : "float") << '\n';
  csv << "instance,trial,schedule,k,n,F_gap,bound,ratio_to_constant,wall_time\n";
  bool all = true;
  for (const auto& row : rows) {
    csv << row.instance << ',' << row.trial << ',' << row.schedule << ',' << row.k << ',' << row.n << ','
        << format_double(row.gap) << ',' << (row.bound ? format_double(*row.bound) : std::string()) << ','
        << format_double(row.ratio_to_constant) << ',' << format_double(row.wall_time) << '\n';
    if (!row.sound) {
      all = false;
      err << "soundness violation: " << row.instance << " trial " << row.trial << ' ' << row.schedule
          << " k=" << row.k << " gap " << format_double(row.gap) << " > bound "
          << format_double(row.bound.value_or(0)) << '\n';
    }
  }
  finish_output(csv_file.get(), g.csv_path);

  if (!g.json_path.empty()) {
    nlohmann::ordered_json j;
    j["schema"] = kBenchSchema;
    j["seed"] = g.seed;
    j["pass"] = all;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json jr;
      jr["instance"] = row.instance;
      jr["trial"] = row.trial;
      jr["schedule"] = row.schedule;
      jr["k"] = row.k;
      jr["n"] = row.n;
      jr["F_gap"] = row.gap;
      jr["bound"] = row.bound ? nlohmann::ordered_json(*row.bound) : nlohmann::ordered_json();
      jr["ratio_to_constant"] = row.ratio_to_constant;
      jr["wall_time"] = row.wall_time;
      j["rows"].push_back(std::move(jr));
    }
    std::ostream& js = json_file ? *json_file : out;
    js << j.dump(2) << '\n';
    finish_output(json_file.get(), g.json_path);
  }
  return all ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------ driver

/// Entry point; `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proximal gradient descent with silver stepsizes: schedules, certificates, solver, benchmarks."};
  app.name("silverprox");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--json", g.json_path, "Write a JSON report to this path");
  app.add_option("--csv", g.csv_path, "Write CSV output to this path");
  app.add_flag("--exact", g.exact, "Exact Q(sqrt2) arithmetic");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  ScheduleOptions so;
  auto* schedule = app.add_subcommand("schedule", "Print the silver stepsize schedule");
  schedule->add_option("--k", so.k, "Level k; horizon n = 2^k - 1")->required();
  schedule->add_flag("--float", so.as_float, "Print floating-point values");
  schedule->add_flag("--companion", so.companion, "Print the companion sequence c instead");

  VerifyOptions vo;
  auto* cert = app.add_subcommand("cert", "Certificate tools");
  cert->require_subcommand(1);
  auto* verify = cert->add_subcommand("verify", "Verify the rate certificate exactly");
  verify->add_option("--k", vo.k, "K or A..B")->capture_default_str();
  verify->add_option("--trials", vo.trials, "Random trials for the identity check")->capture_default_str();
  verify->add_option("--dim", vo.dim, "Dimension of identity samples")->capture_default_str();
  verify->add_option("--tamper", vo.tamper, "Perturb lambda|mu|slack|u (negative control)");

  SolveOptions sv;
  auto* solve = app.add_subcommand("solve", "Run proximal GD on a test problem");
  solve->add_option("--problem", sv.problem, "lasso|box-qp|lower-bound|vanilla-qp")->required();
  solve->add_option("--k", sv.k, "Level k; horizon n = 2^k - 1")->required();
  solve->add_option("--schedule", sv.schedule, "silver|constant|constant:c")->capture_default_str();
  solve->add_option("--dim", sv.dim, "Dimension of random problems")->capture_default_str();

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Sweep instances x schedules x k");
  bench->add_option("--k", bo.k, "K or A..B")->capture_default_str();
  bench->add_option("--problems", bo.problems, "Instances to sweep")->delimiter(',');
  bench->add_option("--trials", bo.trials, "Random instances per problem")->capture_default_str();
  bench->add_option("--dim", bo.dim, "Dimension of random problems")->capture_default_str();
  bench->add_flag("--timing", bo.timing, "Record wall time (makes output nondeterministic)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (schedule->parsed()) return cmd_schedule(g, so, out);
    if (verify->parsed()) return cmd_verify(g, vo, out);
    if (solve->parsed()) return cmd_solve(g, sv, out);
    if (bench->parsed()) return cmd_bench(g, bo, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace silverprox::cli
