// Copyright 2026 The expgeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "expgeo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "expgeo/alpha_family.hpp"
#include "expgeo/conjugate.hpp"
#include "expgeo/dataset_io.hpp"
#include "expgeo/errors.hpp"
#include "expgeo/estimation.hpp"
#include "expgeo/expfam.hpp"
#include "expgeo/hybrid.hpp"
#include "expgeo/infogeom.hpp"
#include "expgeo/report.hpp"

namespace expgeo {

namespace {

constexpr std::uint64_t kFallbackSeed = 20260101;

struct Flags {
  std::string family;
  std::string data;
  std::string alpha;
  std::optional<double> beta;
  std::string lambda = "1";
  std::string alpha_index = "-1,-0.5,0,0.5,1";
  std::string space = "mean";
  std::optional<std::uint64_t> seed;
  int max_iter = 10000;
  std::optional<double> tol;
  std::string out;
  std::vector<std::string> points;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ConfigError(flag + ": not a number: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError(flag + ": empty list");
  return values;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Raw one-column observations mapped through the family's sufficient statistic.
Dataset load_family_data(const FamilySpec& fam, const std::string& path) {
  CsvOptions options;
  options.dimension = 1;
  Dataset raw = read_dataset_csv_file(path, options);
  Dataset data;
  for (std::size_t i = 0; i < raw.points.size(); ++i) {
    try {
      data.points.push_back(fam.suff_stat(raw.points[i]));
    } catch (const DomainError& e) {
      throw DataError("row " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  validate_dataset(fam, data);
  return data;
}

// ---------------------------------------------------------------- fit

void cmd_fit(const Flags& flags, RunReport& report) {
  const FamilySpec fam = make_family_from_string(flags.family);
  report.family = fam.name;
  if (flags.space != "mean" && flags.space != "natural") {
    throw ConfigError("--space must be mean or natural");
  }
  const Dataset data = load_family_data(fam, flags.data);
  report.inputs["data"] = flags.data;
  report.inputs["n"] = data.n();
  report.inputs["dimension"] = fam.dimension;
  report.inputs["space"] = flags.space;

  const bool map = !flags.alpha.empty() || flags.beta.has_value();
  if (map && (flags.alpha.empty() || !flags.beta)) {
    throw ConfigError("MAP needs both --alpha and --beta");
  }
  std::optional<ConjugateHyperparams> hp;
  EstimateReport est;
  if (map) {
    hp.emplace(fam, to_vector(parse_list(flags.alpha, "--alpha")), *flags.beta);
    report.inputs["alpha"] = vector_to_json(hp->alpha());
    report.inputs["beta"] = hp->beta();
    est = fit_map(fam, data, *hp);
  } else {
    est = fit_ml(fam, data);
  }
  report.mu_hat = to_std(est.mu_hat.vec());
  report.theta_hat = to_std(est.theta_hat.vec());
  report.objective = est.objective_value;
  report.diagnostics["estimator"] = map ? "map" : "ml";
  report.diagnostics["method"] = std::string(to_string(est.method));

  // Numerical Bregman median of the same points, as an independent check.
  std::vector<Vector> points = data.points;
  std::vector<double> weights(points.size(), 1.0);
  if (hp) {
    points.push_back(hp->pseudo_mean().vec());
    weights.push_back(hp->beta());
  }
  Json cross;
  cross["space"] = flags.space;
  MedianSolverOptions solver;
  solver.max_iter = flags.max_iter;
  if (flags.tol) solver.gradient_tol = *flags.tol;
  cross["tolerance"] = solver.gradient_tol;
  bool usable = true;
  if (flags.space == "natural") {
    for (auto& p : points) {
      if (!fam.mean_domain().contains(p)) {
        usable = false;
        break;
      }
      p = fam.to_natural(MeanParam(p)).vec();
    }
  }
  if (!usable) {
    cross["skipped"] = "a point lies on the boundary of the mean space and has no natural coordinates";
  } else {
    const MedianSpace space = flags.space == "mean" ? MedianSpace::mean : MedianSpace::natural;
    const EstimateReport num = solve_median_numerical(fam, points, weights, space, solver);
    cross["mu_hat"] = vector_to_json(num.mu_hat.vec());
    cross["iterations"] = num.iterations;
    cross["max_abs_difference"] = max_abs(num.mu_hat.vec() - est.mu_hat.vec());
  }
  report.diagnostics["numerical_cross_check"] = cross;
}

// ---------------------------------------------------------- divergence

void cmd_divergence(const Flags& flags, RunReport& report) {
  const FamilySpec fam = make_family_from_string(flags.family);
  report.family = fam.name;
  if (flags.points.size() != 2) throw ConfigError("divergence takes exactly two points, p and q");
  const Vector p = to_vector(parse_list(flags.points[0], "p"));
  const Vector q = to_vector(parse_list(flags.points[1], "q"));
  if (p.size() != fam.dimension || q.size() != fam.dimension) {
    throw ConfigError("points must have dimension " + std::to_string(fam.dimension));
  }
  const ConvexFunction* fn = nullptr;
  if (flags.space == "mean") {
    fn = &fam.F;
  } else if (flags.space == "natural") {
    fn = &fam.G;
  } else {
    throw ConfigError("--space must be mean or natural");
  }
  const std::vector<double> alphas = parse_list(flags.alpha_index, "--alpha-index");
  report.inputs["space"] = flags.space;
  report.inputs["p"] = vector_to_json(p);
  report.inputs["q"] = vector_to_json(q);
  report.inputs["alpha_index"] = alphas;

  const double forward = bregman(*fn, p, q);
  report.objective = forward;
  report.diagnostics["bregman_p_q"] = forward;
  report.diagnostics["bregman_q_p"] = bregman(*fn, q, p);
  Json sweep = Json::array();
  for (double a : alphas) {
    const double value = alpha_divergence(*fn, NaturalParam(p), NaturalParam(q), AlphaIndex(a));
    sweep.push_back({{"alpha", a}, {"divergence", value}});
  }
  report.diagnostics["alpha_sweep"] = sweep;
}

// -------------------------------------------------------------- hybrid

double parse_lambda(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower == "inf" || lower == "infinity") return std::numeric_limits<double>::infinity();
  const double v = parse_list(text, "--lambda").at(0);
  if (!(v >= 0.0)) throw ConfigError("--lambda must be nonnegative");
  return v;
}

void cmd_hybrid(const Flags& flags, RunReport& report, std::uint64_t seed) {
  const double lambda = parse_lambda(flags.lambda);
  LabeledBinaryDataset data;
  if (flags.data.empty()) {
    constexpr int kFeatures = 4;
    constexpr std::size_t kRows = 200;
    constexpr double kUnlabeled = 0.25;
    data = synthetic_hybrid_data(demo_joint_parameter(kFeatures), kRows, kUnlabeled, seed);
    report.inputs["data"] = "synthetic";
    report.inputs["seed"] = seed;
  } else {
    data = read_labeled_binary_csv_file(flags.data, HeaderMode::automatic);
    report.inputs["data"] = flags.data;
  }
  validate(data);
  report.family = "naive_bayes_joint";
  report.inputs["rows"] = data.size();
  report.inputs["labeled_rows"] = data.labeled_count();
  report.inputs["features"] = data.feature_count();
  report.inputs["lambda"] = number_to_json(lambda);

  HybridOptions options;
  options.max_iter = flags.max_iter;
  if (flags.tol) options.gradient_tol = *flags.tol;
  const HybridFit fit = fit_hybrid(data, lambda, options);

  const FamilySpec fam = joint_family(data.feature_count());
  const Vector& td = fit.params.theta_d.vec();
  const Vector& tg = fit.params.theta_g.vec();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data.labels[i]) continue;
    const double p1 = std::exp(log_discriminative(fit.params.theta_d, data.features[i], 1, fam));
    correct += static_cast<std::size_t>((p1 > 0.5) == (*data.labels[i] == 1));
  }
  report.theta_hat = to_std(td);
  report.objective = fit.objective;
  report.diagnostics["theta_d"] = vector_to_json(td);
  report.diagnostics["theta_g"] = vector_to_json(tg);
  report.diagnostics["max_abs_theta_gap"] = max_abs(td - tg);
  report.diagnostics["gradient_norm"] = fit.gradient_norm;
  report.diagnostics["iterations"] = fit.iterations;
  report.diagnostics["labeled_accuracy"] =
      data.labeled_count() ? static_cast<double>(correct) / data.labeled_count() : 0.0;
}

// --------------------------------------------------------------- check

struct CheckItem {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

Json to_json(const CheckItem& item) {
  return {{"name", item.name},
          {"worst", number_to_json(item.worst)},
          {"tolerance", item.tolerance},
          {"passed", item.passed}};
}

Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    Vector up = x, down = x;
    up[i] += h;
    down[i] -= h;
    g[i] = (f(up) - f(down)) / (2.0 * h);
  }
  return g;
}

std::vector<CheckItem> check_family(const FamilySpec& fam, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckItem> items;
  constexpr int kPoints = 200;

  CheckItem roundtrip{"roundtrip", 0.0, 1e-8};
  FamilyConstants numeric = fam.constants;
  numeric.numeric_dual = true;
  const FamilySpec fam_numeric = make_family(fam.name, numeric);
  for (int i = 0; i < kPoints; ++i) {
    const NaturalParam theta = random_natural_point(fam, rng);
    for (const FamilySpec* f : {&fam, &fam_numeric}) {
      const Vector mu = f->G.gradient(theta.vec());
      const Vector back = f->F.gradient(mu);
      const Vector again = f->G.gradient(back);
      const double err = std::max(max_abs(back - theta.vec()) / std::max(1.0, max_abs(theta.vec())),
                                  max_abs(again - mu) / std::max(1.0, max_abs(mu)));
      roundtrip.worst = std::max(roundtrip.worst, err);
    }
  }
  items.push_back(roundtrip);

  CheckItem flip{"duality_flip", 0.0, 1e-8};
  for (int i = 0; i < kPoints; ++i) {
    const NaturalParam tp = random_natural_point(fam, rng), tq = random_natural_point(fam, rng);
    const Vector p = fam.G.gradient(tp.vec()), q = fam.G.gradient(tq.vec());
    const double lhs = bregman(fam.F, p, q);
    const double rhs = bregman(fam.G, tq.vec(), tp.vec());
    flip.worst = std::max(flip.worst, std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-12}));
  }
  items.push_back(flip);

  CheckItem density{"bregman_density", 0.0, 1e-9};
  for (int i = 0; i < 100; ++i) {
    const NaturalParam theta = random_natural_point(fam, rng);
    const Vector x = fam.sampler(random_natural_point(fam, rng).vec(), rng);
    density.worst = std::max(density.worst, std::abs(log_density(fam, x, theta) -
                                                     log_density_bregman(fam, x, theta)));
  }
  items.push_back(density);

  CheckItem gradients{"finite_difference_gradients", 0.0, 1e-5};
  for (int i = 0; i < 50; ++i) {
    const NaturalParam theta = random_natural_point(fam, rng);
    const Vector mu = fam.G.gradient(theta.vec());
    for (auto [fn, x] : {std::pair{&fam.G, theta.vec()}, std::pair{&fam.F, mu}}) {
      const Vector fd = central_difference([fn](const Vector& v) { return fn->value(v); }, x);
      const Vector g = fn->gradient(x);
      gradients.worst = std::max(gradients.worst, max_abs(fd - g) / std::max(1.0, max_abs(g)));
    }
  }
  items.push_back(gradients);

  CheckItem fisher{"fisher_monte_carlo_3se", 0.0, 3.0};
  {
    const NaturalParam theta = random_natural_point(fam, rng, 0.5);
    const FisherMcReport mc = fisher_mc_check(fam, theta, 200000, rng());
    fisher.worst = (mc.deviations.array() / mc.standard_errors.array()).maxCoeff();
  }
  items.push_back(fisher);

  CheckItem alpha{"alpha_limits", 0.0, 1e-3};
  for (int i = 0; i < 20; ++i) {
    const NaturalParam t1 = random_natural_point(fam, rng), t2 = random_natural_point(fam, rng);
    const AlphaLimitDiagnostic d = alpha_limit_check(fam.G, t1, t2);
    const double scale = 1.0 + std::max(d.bregman_forward, d.bregman_reverse);
    alpha.worst = std::max({alpha.worst, d.gaps.back() / scale, d.mirrored_gaps.back() / scale});
    if (!d.passed()) alpha.passed = false;
  }
  items.push_back(alpha);

  CheckItem map{"map_closed_form_vs_numerical", 0.0, 1e-6};
  std::uniform_int_distribution<int> sizes(1, 50);
  std::uniform_real_distribution<double> betas(0.5, 5.0);
  for (int i = 0; i < 10; ++i) {
    const Dataset data =
        sample(fam, random_natural_point(fam, rng), static_cast<std::size_t>(sizes(rng)), rng());
    const auto hp = ConjugateHyperparams::at(fam, fam.to_mean(random_natural_point(fam, rng)),
                                             betas(rng));
    const EstimateReport closed = fit_map(fam, data, hp);
    std::vector<Vector> points = data.points;
    std::vector<double> weights(points.size(), 1.0);
    points.push_back(hp.pseudo_mean().vec());
    weights.push_back(hp.beta());
    MedianSolverOptions opts;
    opts.gradient_tol = 1e-10;
    opts.max_iter = 100000;
    const EstimateReport num = solve_median_numerical(fam, points, weights, MedianSpace::mean, opts);
    map.worst = std::max(map.worst, max_abs(num.mu_hat.vec() - closed.mu_hat.vec()));
  }
  items.push_back(map);

  for (auto& item : items) {
    item.passed = item.passed && std::isfinite(item.worst) && item.worst <= item.tolerance;
  }
  return items;
}

bool cmd_check(const Flags& flags, RunReport& report, std::uint64_t seed) {
  std::vector<FamilySpec> families;
  if (flags.family.empty()) {
    for (const auto& name : family_names()) families.push_back(make_family(name));
    report.family = "all";
  } else {
    families.push_back(make_family_from_string(flags.family));
    report.family = families.front().name;
  }
  report.inputs["seed"] = seed;
  bool all_passed = true;
  Json results = Json::object();
  for (std::size_t k = 0; k < families.size(); ++k) {
    Json rows = Json::array();
    for (const auto& item : check_family(families[k], seed + k)) {
      rows.push_back(to_json(item));
      all_passed = all_passed && item.passed;
    }
    results[families[k].name] = rows;
  }
  report.diagnostics["checks"] = results;
  report.diagnostics["all_passed"] = all_passed;
  return all_passed;
}

void write_report(const RunReport& report, const std::string& path, std::ostream& out) {
  const std::string text = serialize(report);
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw DataError("cannot write '" + path + "'");
  file << text;
  if (!file) throw DataError("failed writing '" + path + "'");
}

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--out", flags.out, "Write the JSON report to this path instead of stdout");
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("EXPGEO_SEED");
  if (env == nullptr || *env == '\0') return kFallbackSeed;
  const std::string text(env);
  if (text.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("EXPGEO_SEED must be an unsigned integer");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ConfigError("EXPGEO_SEED is out of range");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential families, Bregman geometry and hybrid models"};
  app.name("expgeo");
  app.require_subcommand(1);
  Flags flags;

  CLI::App* fit = app.add_subcommand("fit", "ML or conjugate MAP estimate from a CSV of observations");
  fit->add_option("--family", flags.family, "Family name, optionally name:constant")->required();
  fit->add_option("--data", flags.data, "CSV with one observation per row")->required();
  fit->add_option("--alpha", flags.alpha, "Conjugate prior alpha (comma-separated vector)");
  fit->add_option("--beta", flags.beta, "Conjugate prior beta (positive)");
  fit->add_option("--space", flags.space, "Space of the numerical cross-check: mean | natural");
  fit->add_option("--max-iter", flags.max_iter, "Iteration cap for the numerical solver");
  fit->add_option("--tol", flags.tol, "Gradient tolerance for the numerical solver");
  add_common(fit, flags);

  CLI::App* div = app.add_subcommand("divergence", "Bregman and alpha-divergences between two points");
  div->add_option("--family", flags.family, "Family name, optionally name:constant")->required();
  div->add_option("--space", flags.space, "Coordinates of the points: mean | natural");
  div->add_option("--alpha-index", flags.alpha_index, "Comma-separated alpha values in [-1, 1]");
  div->add_option("points", flags.points, "Two points p q, coordinates comma-separated")
      ->expected(2);
  add_common(div, flags);

  CLI::App* hyb = app.add_subcommand("hybrid", "Train the coupled naive Bayes / logistic model");
  hyb->add_option("--data", flags.data, "CSV of binary features with a 0/1/empty label column");
  hyb->add_option("--lambda", flags.lambda, "Coupling strength, a nonnegative number or inf");
  hyb->add_option("--seed", flags.seed, "Seed for synthetic data when --data is absent");
  hyb->add_option("--max-iter", flags.max_iter, "Iteration cap for the optimizer");
  hyb->add_option("--tol", flags.tol, "Gradient tolerance for the optimizer");
  add_common(hyb, flags);

  CLI::App* chk = app.add_subcommand("check", "Self-test battery of duality and estimation identities");
  chk->add_option("--family", flags.family, "Restrict to one family (default: all)");
  chk->add_option("--seed", flags.seed, "Random seed");
  add_common(chk, flags);

  flags.max_iter = 10000;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "expgeo: " << e.what() << "\n";
    return kExitUserError;
  }

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = args;
  int code = kExitOk;
  try {
    const std::uint64_t seed = flags.seed ? *flags.seed : default_seed();
    if (fit->parsed()) {
      cmd_fit(flags, report);
    } else if (div->parsed()) {
      cmd_divergence(flags, report);
    } else if (hyb->parsed()) {
      if (!hyb->count("--max-iter")) flags.max_iter = HybridOptions{}.max_iter;
      cmd_hybrid(flags, report, seed);
    } else if (!cmd_check(flags, report, seed)) {
      report.status = "check_failed";
      code = kExitCheckFailed;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.timing = RunTiming{utc_timestamp(), elapsed};
    write_report(report, flags.out, out);
  } catch (const ConvergenceError& e) {
    err << "expgeo: convergence failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitNoConvergence;
  } catch (const Error& e) {
    err << "expgeo: error: " << e.what() << "\n";
    return kExitUserError;
  }
  return code;
}

}  // namespace expgeo
