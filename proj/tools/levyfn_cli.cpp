// Batch front-end for the levyfn library.  Every subcommand reads JSON
// inputs, runs one library operation and writes a deterministic artifact:
// CSV with a '#' header block, or a JSON envelope carrying the same
// metadata (library version, model hash, seed, scheme).  Identical
// invocations produce identical bytes on a given build.
//
// Exit codes: 0 success (including test reports with pass=false), 2 for
// schema-invalid input, 1 for any other library error.  Errors are printed
// to stdout as one-line JSON {"error": <code>, "message": ...}.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levyfn/density_ops.hpp"
#include "levyfn/errors.hpp"
#include "levyfn/exponent.hpp"
#include "levyfn/io.hpp"
#include "levyfn/ladders.hpp"
#include "levyfn/moments.hpp"
#include "levyfn/sampler.hpp"
#include "levyfn/series.hpp"
#include "levyfn/stable.hpp"
#include "levyfn/stats.hpp"
#include "levyfn/transform.hpp"
#include "levyfn/verify.hpp"

namespace {

using nlohmann::json;

constexpr uint64_t kDefaultSeed = 0xC0FFEE;

struct Options {
  std::string model;
  std::string model2;
  std::string out;
  uint64_t n = 100000;
  uint64_t seed = kDefaultSeed;
  std::string grid;
  double beta = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  double alpha_prime = 0.0;
  std::string mode;
  std::string scheme;
  double eps = 1e-3;
  double dt = 1e-3;
  bool scheme_set = false;
  bool eps_set = false;
  bool dt_set = false;
};

// "start:stop:count" with count >= 1; strictly increasing when count > 1.
std::vector<double> parse_grid(const std::string& spec) {
  double start = 0.0, stop = 0.0;
  long count = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &start, &stop, &count,
                  &tail) != 3 ||
      count < 1)
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "grid must be start:stop:count with count >= 1, got '" +
                     spec + "'");
  if (count == 1) return {start};
  if (!(stop > start))
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "grid must be strictly increasing (stop > start)");
  std::vector<double> xs(count);
  for (long i = 0; i < count; ++i)
    xs[i] = start + static_cast<double>(i) * (stop - start) /
                        static_cast<double>(count - 1);
  return xs;
}

std::vector<double> grid_or_default(const Options& o, const char* fallback) {
  return parse_grid(o.grid.empty() ? fallback : o.grid);
}

levyfn::SamplerOptions sampler_options(const Options& o) {
  levyfn::SamplerOptions opt;
  if (o.scheme_set) {
    auto s = levyfn::scheme_from_name(o.scheme);
    if (!s)
      levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                   "unknown scheme '" + o.scheme +
                       "'; valid: exact-jump-times, euler-grid, "
                       "small-jump-substitution");
    opt.scheme = *s;
  }
  opt.dt = o.dt;
  opt.eps = o.eps;
  return opt;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::fputs(text.c_str(), stdout);
  else
    levyfn::write_text(o.out, text);
}

json envelope(uint64_t model_hash, uint64_t seed, const std::string& scheme) {
  json j{{"levyfn-version", levyfn::kLibraryVersion},
         {"model-hash", levyfn::hash_hex(model_hash)},
         {"seed", seed}};
  if (!scheme.empty()) j["scheme"] = scheme;
  return j;
}

json factor_json(const levyfn::LadderExponent& f) {
  if (f.has_triplet()) return json::parse(levyfn::factor_to_json(f));
  return json{{"form", "quotient"},
              {"role", f.side() == levyfn::LadderExponent::Side::Ascending
                           ? "ascending"
                           : "descending"},
              {"kill", f.kill()}};
}

// Factor files share the model schema plus a "role" field; moments desc and
// density specneg take the descending factor directly.
levyfn::LadderExponent load_descending_factor(const std::string& path) {
  std::string text = levyfn::read_text(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    levyfn::fail(levyfn::ErrorCode::Schema, "input is not valid JSON");
  if (!j.is_object() || !j.contains("role"))
    levyfn::fail(levyfn::ErrorCode::Schema,
                 "expected a factor file with a 'role' field");
  levyfn::LadderExponent f = levyfn::factor_from_json(text);
  if (f.side() != levyfn::LadderExponent::Side::Descending)
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "factor role must be 'descending'");
  return f;
}

// Density of the exponential functional of a killed subordinator model,
// using the Euler-transformed series when the drift is positive (valid on
// all of x > 0) and the raw series otherwise (infinite radius at b = 0).
std::function<double(double)> subordinator_density_fn(
    const levyfn::LevyModel& model) {
  levyfn::SeriesMode mode = model.drift > 0 ? levyfn::SeriesMode::Euler
                                            : levyfn::SeriesMode::Raw;
  auto series = std::make_shared<levyfn::DensitySeries>(
      levyfn::density_series_subordinator(model, mode));
  return [series](double x) { return series->eval(x); };
}

void run_exponent_eval(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::LaplaceExponent psi = levyfn::make_exponent(model);
  std::vector<std::vector<double>> rows;
  for (double s : grid_or_default(o, "0:1:11")) rows.push_back({s, psi(s)});
  levyfn::CsvMeta meta{levyfn::model_hash(model), o.seed, "", {}};
  emit(o, levyfn::csv_format(meta, {"s", "psi"}, rows));
}

void run_transform_tbeta(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::LevyModel transformed = levyfn::tbeta_model(model, o.beta);
  json j = envelope(levyfn::model_hash(model), o.seed, "");
  j["beta"] = o.beta;
  j["model"] = json::parse(levyfn::model_to_json(transformed));
  j["transformed-hash"] = levyfn::hash_hex(levyfn::model_hash(transformed));
  emit(o, j.dump(2) + "\n");
}

void run_factorize_compose(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::Factorization f = levyfn::build_factorization(model);
  json j = envelope(levyfn::model_hash(model), o.seed, "");
  j["route"] = f.route;
  j["consistency"] = levyfn::factor_consistency(model, f);
  j["rhs-supported"] = f.rhs_supported;
  if (f.route == "onesided-positive" || f.route == "onesided-negative")
    j["gamma-q"] = f.gamma_q;
  j["phi-plus"] = factor_json(f.phi_plus);
  j["phi-minus"] = factor_json(f.phi_minus);
  emit(o, j.dump(2) + "\n");
}

void run_factorize_onesided(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::OneSidedFactors f = levyfn::spectrally_onesided_factors(model);
  json j = envelope(levyfn::model_hash(model), o.seed, "");
  j["case"] = f.which == levyfn::OneSidedCase::SpectrallyPositive
                  ? "spectrally-positive"
                  : "spectrally-negative";
  j["gamma-q"] = f.gamma_q;
  j["phi-plus"] = factor_json(f.phi_plus);
  j["phi-minus"] = factor_json(f.phi_minus);
  emit(o, j.dump(2) + "\n");
}

void run_vigon_check(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::Factorization f = levyfn::build_factorization(model);
  levyfn::PotentialMeasure pot = levyfn::potential_measure(f.phi_minus);
  std::function<double(double)> mu_bar;
  if (f.phi_plus.has_triplet()) {
    const levyfn::JumpSpec& measure = f.phi_plus.measure();
    mu_bar = [measure](double y) { return measure.tail_plus(y); };
  } else if (model.jumps.tail_plus(1e-12) == 0.0) {
    mu_bar = [](double) { return 0.0; };
  } else {
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "ascending ladder measure has no parametric form for this "
                 "model");
  }
  const levyfn::JumpSpec& jumps = model.jumps;
  auto pi_bar = [&jumps](double y) { return jumps.tail_plus(y); };
  std::vector<double> ys = grid_or_default(o, "0.2:5:25");
  double residual = levyfn::vigon_check(pi_bar, pot, mu_bar, ys);
  json j = envelope(levyfn::model_hash(model), o.seed, "");
  j["residual"] = residual;
  j["y-grid"] = ys;
  emit(o, j.dump(2) + "\n");
}

void run_moments_desc(const Options& o) {
  levyfn::LadderExponent factor = load_descending_factor(o.model);
  int count = static_cast<int>(o.n);
  levyfn::MomentLadder ladder = levyfn::moments_descending(factor, count);
  std::vector<std::vector<double>> rows;
  for (int m = 1; m <= ladder.size(); ++m)
    rows.push_back({static_cast<double>(m), ladder.moment(m)});
  levyfn::CsvMeta meta{levyfn::text_hash(levyfn::factor_to_json(factor)),
                       o.seed,
                       "",
                       {{"log-convex", ladder.log_convex() ? "true" : "false"}}};
  emit(o, levyfn::csv_format(meta, {"m", "moment"}, rows));
}

void run_moments_negpos(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::LaplaceExponent psi = levyfn::make_exponent(model);
  int count = static_cast<int>(o.n);
  levyfn::MomentLadder ladder =
      levyfn::negative_moments_spectrally_positive(psi, count);
  std::vector<std::vector<double>> rows;
  for (int m = 1; m <= ladder.size(); ++m)
    rows.push_back({static_cast<double>(m), ladder.moment(m)});
  levyfn::CsvMeta meta{
      levyfn::model_hash(model),
      o.seed,
      "",
      {{"log-convex", ladder.log_convex() ? "true" : "false"}}};
  emit(o, levyfn::csv_format(meta, {"m", "negative-moment"}, rows));
}

void run_density_series(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::SeriesMode mode;
  if (o.mode.empty() || o.mode == "raw")
    mode = levyfn::SeriesMode::Raw;
  else if (o.mode == "euler")
    mode = levyfn::SeriesMode::Euler;
  else
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "mode must be 'raw' or 'euler', got '" + o.mode + "'");
  levyfn::DensitySeries series =
      levyfn::density_series_subordinator(model, mode);
  std::vector<std::vector<double>> rows;
  for (double x : grid_or_default(o, "0:0.9:10"))
    rows.push_back({x, series.eval(x)});
  levyfn::CsvMeta meta{levyfn::model_hash(model),
                       o.seed,
                       "",
                       {{"mode", o.mode.empty() ? "raw" : o.mode}}};
  emit(o, levyfn::csv_format(meta, {"x", "density"}, rows));
}

void run_density_product(const Options& o) {
  levyfn::LevyModel m1 = levyfn::load_model(o.model);
  levyfn::LevyModel m2 = levyfn::load_model(o.model2);
  std::vector<double> xs = grid_or_default(o, "0.1:5:25");
  std::vector<double> values = levyfn::density_product(
      subordinator_density_fn(m1), subordinator_density_fn(m2), xs);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < xs.size(); ++i) rows.push_back({xs[i], values[i]});
  levyfn::CsvMeta meta{
      levyfn::model_hash(m1),
      o.seed,
      "",
      {{"model2-hash", levyfn::hash_hex(levyfn::model_hash(m2))}}};
  emit(o, levyfn::csv_format(meta, {"x", "density"}, rows));
}

void run_density_specneg(const Options& o) {
  levyfn::LadderExponent factor = load_descending_factor(o.model);
  if (o.gamma <= 0)
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "--gamma must be positive");
  // Closed-form density of the descending functional, available when the
  // factor has no jump measure: (1 - e^{-delta e_q}) / delta has density
  // q (1 - delta y)^{q/delta - 1} on (0, 1/delta); pure kill gives e_q.
  if (factor.measure().tail_plus(1e-12) != 0.0)
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "descending factor must be drift-plus-kill (no jumps)");
  double q = factor.kill();
  double delta = factor.delta();
  if (q <= 0)
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "descending factor must be killed (q > 0)");
  auto m_minus = [q, delta](double y) -> double {
    if (y <= 0) return 0.0;
    if (delta <= 0) return q * std::exp(-q * y);
    if (delta * y >= 1) return 0.0;
    return q * std::pow(1 - delta * y, q / delta - 1);
  };
  std::vector<double> xs = grid_or_default(o, "0.1:100:40");
  levyfn::SpectralNegDensity d =
      levyfn::density_spectrally_negative(m_minus, o.gamma, xs);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < xs.size(); ++i)
    rows.push_back({xs[i], d.values[i]});
  levyfn::CsvMeta meta{
      levyfn::text_hash(levyfn::factor_to_json(factor)),
      o.seed,
      "",
      {{"gamma-q", levyfn::format_double(o.gamma)},
       {"tail-constant", levyfn::format_double(d.tail_constant)},
       {"tail-limit-ok", d.tail_limit_ok ? "true" : "false"},
       {"reciprocal-completely-monotone",
        d.reciprocal_completely_monotone ? "true" : "false"}}};
  emit(o, levyfn::csv_format(meta, {"x", "density"}, rows));
}

void run_density_gamma(const Options& o) {
  std::string mode = o.mode.empty() ? "small" : o.mode;
  std::vector<double> xs = grid_or_default(o, "0.1:2:20");
  std::vector<double> values;
  if (mode == "small" || mode == "large") {
    levyfn::GammaRegime regime = mode == "small" ? levyfn::GammaRegime::SmallX
                                                 : levyfn::GammaRegime::LargeX;
    values = levyfn::gamma_family_densities(o.alpha, o.gamma, o.alpha_prime,
                                            xs, regime);
  } else if (mode == "complete") {
    for (double x : xs)
      values.push_back(
          levyfn::gamma_family_complete_density(o.alpha, o.gamma, x));
  } else {
    levyfn::fail(levyfn::ErrorCode::ParameterViolation,
                 "mode must be 'small', 'large' or 'complete', got '" + mode +
                     "'");
  }
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < xs.size(); ++i) rows.push_back({xs[i], values[i]});
  levyfn::CsvMeta meta{0,
                       o.seed,
                       "",
                       {{"alpha", levyfn::format_double(o.alpha)},
                        {"gamma", levyfn::format_double(o.gamma)},
                        {"alpha-prime", levyfn::format_double(o.alpha_prime)},
                        {"mode", mode}}};
  emit(o, levyfn::csv_format(meta, {"x", "density"}, rows));
}

void run_simulate(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::SampleSet ss =
      levyfn::sample_functional(model, o.n, o.seed, sampler_options(o));
  ss.model_hash = levyfn::model_hash(model);
  levyfn::save_samples(ss, o.out);
  json j = envelope(ss.model_hash, ss.seed,
                    levyfn::scheme_label(ss.scheme, ss.dt, ss.eps));
  j["n"] = ss.n();
  j["out"] = o.out;
  std::fputs((j.dump(2) + "\n").c_str(), stdout);
}

void run_test_factorization(const Options& o) {
  levyfn::LevyModel model = levyfn::load_model(o.model);
  levyfn::Factorization f = levyfn::build_factorization(model);
  levyfn::SamplerOptions opt = sampler_options(o);
  levyfn::TestReport report =
      levyfn::test_factorization(model, f, o.n, o.seed, opt);
  json j = envelope(levyfn::model_hash(model), o.seed,
                    o.scheme_set ? o.scheme : "auto");
  j["route"] = f.route;
  j["n"] = report.n;
  j["consistency"] = report.consistency;
  j["pass"] = report.pass;
  json entries = json::array();
  for (const levyfn::TestEntry& e : report.entries)
    entries.push_back(json{{"statistic", e.statistic},
                           {"value", e.value},
                           {"threshold", e.threshold},
                           {"pass", e.pass}});
  j["entries"] = entries;
  emit(o, j.dump(2) + "\n");
}

void run_stable_passage(const Options& o) {
  levyfn::StableParams p{o.alpha, o.rho};
  levyfn::PassageLaw law =
      levyfn::passage_time_law(p, o.n, o.seed, sampler_options(o));
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < law.t1_density.size(); ++i)
    rows.push_back({law.t1_density[i].x, law.t1_density[i].value,
                    law.t1_density[i].se, law.s1a_density[i].x,
                    law.s1a_density[i].value, law.s1a_density[i].se});
  levyfn::CsvMeta meta{
      0,
      o.seed,
      levyfn::scheme_label(law.t1.scheme, law.t1.dt, law.t1.eps),
      {{"alpha", levyfn::format_double(o.alpha)},
       {"rho", levyfn::format_double(o.rho)},
       {"kill", levyfn::format_double(law.kill)},
       {"surrogate-residual", levyfn::format_double(law.surrogate_residual)},
       {"t1-monotone-applies", law.t1_monotone_applies ? "true" : "false"},
       {"t1-monotone", law.t1_monotone ? "true" : "false"},
       {"s1a-log-convex", law.s1a_log_convex ? "true" : "false"}}};
  emit(o, levyfn::csv_format(
              meta,
              {"t1-x", "t1-density", "t1-se", "s1a-x", "s1a-density",
               "s1a-se"},
              rows));
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output path (stdout when omitted)");
  cmd->add_option("--seed", o.seed, "RNG seed, recorded in the output")
      ->default_val(kDefaultSeed);
}

void add_sampling(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "Number of Monte Carlo paths")
      ->default_val(100000);
  cmd->add_option("--scheme", o.scheme,
                  "exact-jump-times | euler-grid | small-jump-substitution")
      ->each([&o](const std::string&) { o.scheme_set = true; });
  cmd->add_option("--eps", o.eps, "Small-jump substitution cutoff")
      ->default_val(1e-3);
  cmd->add_option("--dt", o.dt, "Grid width for Brownian segments / Euler")
      ->default_val(1e-3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential functionals of killed Levy processes"};
  app.require_subcommand(1);
  Options o;

  CLI::App* exponent = app.add_subcommand("exponent", "Laplace exponents");
  CLI::App* exp_eval =
      exponent->add_subcommand("eval", "Evaluate Psi_q on a grid");
  exp_eval->add_option("--model", o.model, "Model JSON path")->required();
  exp_eval->add_option("--grid", o.grid, "start:stop:count (default 0:1:11)");
  add_common(exp_eval, o);
  exp_eval->callback([&o] { run_exponent_eval(o); });

  CLI::App* transform = app.add_subcommand("transform", "Exponent transforms");
  CLI::App* tbeta = transform->add_subcommand(
      "tbeta", "Killed-to-unkilled transform of a model");
  tbeta->add_option("--model", o.model, "Model JSON path")->required();
  tbeta->add_option("--beta", o.beta, "Shift in (0, theta_max)")->required();
  add_common(tbeta, o);
  tbeta->callback([&o] { run_transform_tbeta(o); });

  CLI::App* factorize =
      app.add_subcommand("factorize", "Wiener-Hopf ladder factors");
  CLI::App* compose = factorize->add_subcommand(
      "compose", "Factor the model and report the consistency residual");
  compose->add_option("--model", o.model, "Model JSON path")->required();
  add_common(compose, o);
  compose->callback([&o] { run_factorize_compose(o); });
  CLI::App* onesided = factorize->add_subcommand(
      "onesided", "Root-based factors for spectrally one-sided models");
  onesided->add_option("--model", o.model, "Model JSON path")->required();
  add_common(onesided, o);
  onesided->callback([&o] { run_factorize_onesided(o); });

  CLI::App* vigon = app.add_subcommand("vigon", "Ladder-measure identities");
  CLI::App* vcheck = vigon->add_subcommand(
      "check", "Residual of the ascending-measure identity");
  vcheck->add_option("--model", o.model, "Model JSON path")->required();
  vcheck->add_option("--grid", o.grid, "start:stop:count (default 0.2:5:25)");
  add_common(vcheck, o);
  vcheck->callback([&o] { run_vigon_check(o); });

  CLI::App* moments = app.add_subcommand("moments", "Moment ladders");
  CLI::App* desc = moments->add_subcommand(
      "desc", "E[I^m] from a descending factor file (role: descending)");
  desc->add_option("--model", o.model, "Factor JSON path")->required();
  desc->add_option("--n", o.n, "Number of orders")->default_val(20);
  add_common(desc, o);
  desc->callback([&o] { run_moments_desc(o); });
  CLI::App* negpos = moments->add_subcommand(
      "negpos",
      "E[I^-m] for an unkilled spectrally positive model, negative mean");
  negpos->add_option("--model", o.model, "Model JSON path")->required();
  negpos->add_option("--n", o.n, "Number of orders")->default_val(10);
  add_common(negpos, o);
  negpos->callback([&o] { run_moments_negpos(o); });

  CLI::App* density = app.add_subcommand("density", "Densities of functionals");
  CLI::App* series = density->add_subcommand(
      "series", "Killed-subordinator density power series");
  series->add_option("--model", o.model, "Model JSON path")->required();
  series->add_option("--mode", o.mode, "raw | euler (default raw)");
  series->add_option("--grid", o.grid, "start:stop:count (default 0:0.9:10)");
  add_common(series, o);
  series->callback([&o] { run_density_series(o); });
  CLI::App* product = density->add_subcommand(
      "product", "Density of the product of two independent functionals");
  product->add_option("--model", o.model, "First model JSON path")->required();
  product->add_option("--model2", o.model2, "Second model JSON path")
      ->required();
  product->add_option("--grid", o.grid, "start:stop:count (default 0.1:5:25)");
  add_common(product, o);
  product->callback([&o] { run_density_product(o); });
  CLI::App* specneg = density->add_subcommand(
      "specneg",
      "Spectrally negative density from a descending factor file and gamma_q");
  specneg->add_option("--model", o.model, "Descending factor JSON path")
      ->required();
  specneg->add_option("--gamma", o.gamma, "Positive root gamma_q")->required();
  specneg->add_option("--grid", o.grid,
                      "start:stop:count (default 0.1:100:40)");
  add_common(specneg, o);
  specneg->callback([&o] { run_density_specneg(o); });
  CLI::App* gamma_cmd = density->add_subcommand(
      "gamma", "Worked gamma-family expansions");
  gamma_cmd->add_option("--alpha", o.alpha, "Family exponent alpha in (0,1]")
      ->required();
  gamma_cmd->add_option("--gamma", o.gamma, "Family shift gamma > 0")
      ->required();
  gamma_cmd->add_option("--alpha-prime", o.alpha_prime,
                        "Index alpha' in (0,1), small/large modes");
  gamma_cmd->add_option("--mode", o.mode,
                        "small | large | complete (default small)");
  gamma_cmd->add_option("--grid", o.grid,
                        "start:stop:count (default 0.1:2:20)");
  add_common(gamma_cmd, o);
  gamma_cmd->callback([&o] { run_density_gamma(o); });

  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo draws of the functional");
  simulate->add_option("--model", o.model, "Model JSON path")->required();
  add_sampling(simulate, o);
  simulate->add_option("--out", o.out, "Output path for raw f64 samples")
      ->required();
  simulate->add_option("--seed", o.seed, "RNG seed, recorded in the output")
      ->default_val(kDefaultSeed);
  simulate->callback([&o] { run_simulate(o); });

  CLI::App* test = app.add_subcommand("test", "Simulation-based verification");
  CLI::App* tfact = test->add_subcommand(
      "factorization", "Two-sample test of the product identity");
  tfact->add_option("--model", o.model, "Model JSON path")->required();
  add_sampling(tfact, o);
  add_common(tfact, o);
  tfact->callback([&o] { run_test_factorization(o); });

  CLI::App* stable = app.add_subcommand("stable", "Strictly stable processes");
  CLI::App* passage = stable->add_subcommand(
      "passage", "First-passage time law over a unit level");
  passage->add_option("--alpha", o.alpha, "Stability index in (0,1) or 2")
      ->required();
  passage->add_option("--rho", o.rho, "Positivity parameter")->required();
  add_sampling(passage, o);
  add_common(passage, o);
  passage->callback([&o] { run_stable_passage(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const levyfn::Error& e) {
    std::fputs(levyfn::error_json(e.code(), e.what()).c_str(), stdout);
    return e.code() == levyfn::ErrorCode::Schema ? 2 : 1;
  } catch (const std::exception& e) {
    std::fputs(levyfn::error_json(levyfn::ErrorCode::Io, e.what()).c_str(),
               stdout);
    return 1;
  }
  return 0;
}
