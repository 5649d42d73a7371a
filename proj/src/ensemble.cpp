#include "dpa/ensemble.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "dpa/errors.hpp"
#include "dpa/exact.hpp"
#include "dpa/io.hpp"
#include "dpa/linalg.hpp"
#include "dpa/rng.hpp"
#include "dpa/simulator.hpp"
#include "dpa/stats.hpp"

namespace dpa {

namespace {

std::vector<std::uint64_t> run_one(const EnsembleSpec& spec,
                                   std::uint64_t run_index) {
  GraphState state(spec.params);
  Rng rng = Rng::for_run(spec.seed, run_index);
  while (state.n() < spec.n) state.step(rng);
  return window_counts(state.counts(), spec.window);
}

}  // namespace

EnsembleCounts run_ensemble(const EnsembleSpec& spec) {
  if (spec.runs < 1) throw ValidationError("need at least one run");
  if (spec.n < 1) throw ValidationError("target size must be at least 1");
  const std::size_t dim = spec.window.size();

  EnsembleCounts out;
  out.dim = dim;
  out.counts.assign(std::size_t(spec.runs) * dim, 0);

  // Every run writes only its own slot, so the result is identical for any
  // worker count; the workers==1 path is the serial reference.
  if (spec.workers <= 1) {
    for (int r = 0; r < spec.runs; ++r) {
      const auto counts = run_one(spec, std::uint64_t(r));
      std::copy(counts.begin(), counts.end(),
                out.counts.begin() + std::size_t(r) * dim);
    }
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(spec.workers)
#endif
    for (int r = 0; r < spec.runs; ++r) {
      const auto counts = run_one(spec, std::uint64_t(r));
      std::copy(counts.begin(), counts.end(),
                out.counts.begin() + std::size_t(r) * dim);
    }
  }
  return out;
}

EnsembleReport analyze_ensemble(const EnsembleSpec& spec,
                                const EnsembleCounts& counts,
                                const PGrid& pgrid,
                                const CovarianceModel& corrected,
                                const CovarianceModel& verbatim,
                                BVariant selected,
                                double concentration_c) {
  const std::size_t dim = spec.window.size();
  const std::size_t runs = std::size_t(spec.runs);
  const double n = double(spec.n);
  const double sqrt_n = std::sqrt(n);

  EnsembleReport rep;
  rep.alpha = spec.params.alpha();
  rep.gamma = spec.params.gamma();
  rep.lambda = spec.params.lambda();
  rep.mu = spec.params.mu();
  rep.n = spec.n;
  rep.runs = spec.runs;
  rep.seed = spec.seed;
  rep.variant = selected == BVariant::corrected ? "corrected" : "verbatim";
  rep.window_imax = spec.window.imax;
  rep.window_jmax = spec.window.jmax;
  rep.coords = spec.window.coords;
  rep.insufficient_replications = spec.runs < 2;
  rep.concentration_c = concentration_c;

  for (const auto& c : rep.coords) {
    rep.p_values_used.push_back(pgrid.at(c.i, c.j));
  }

  // Centering bias |nu_n - n p| / sqrt(n) per coordinate.
  NuRecursion nu(spec.params, spec.window.imax, spec.window.jmax);
  nu.advance_to(spec.n);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto& coord = rep.coords[c];
    rep.nu_bias.push_back(
        std::fabs(nu.at(coord.i, coord.j) - n * rep.p_values_used[c]) /
        sqrt_n);
  }

  // Z = sqrt(n) (N/n - p), one row per run.
  std::vector<double> z(runs * dim);
  for (std::size_t r = 0; r < runs; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      z[r * dim + c] =
          (double(counts.at(r, c)) - n * rep.p_values_used[c]) / sqrt_n;
    }
  }

  rep.z_mean.assign(dim, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    long double s = 0.0L;
    for (std::size_t r = 0; r < runs; ++r) s += z[r * dim + c];
    rep.z_mean[c] = double(s / runs);
  }

  const CovarianceModel& sel =
      selected == BVariant::corrected ? corrected : verbatim;
  const CovarianceModel& alt =
      selected == BVariant::corrected ? verbatim : corrected;
  rep.predicted_cov = sel.final_cov;
  rep.predicted_cov_alt = alt.final_cov;

  // Concentration: fraction of runs whose worst window deviation of N/n
  // from p reaches the envelope.
  rep.concentration_envelope_value =
      concentration_envelope(n, concentration_c);
  std::size_t violations = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    double worst = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      worst = std::max(worst, std::fabs(double(counts.at(r, c)) / n -
                                        rep.p_values_used[c]));
    }
    if (worst >= rep.concentration_envelope_value) ++violations;
  }
  rep.concentration_violation_rate = double(violations) / double(runs);

  if (rep.insufficient_replications) return rep;

  const auto jack = covariance_with_jackknife(z, runs, dim);
  rep.empirical_cov = jack.covariance;
  rep.jackknife_se = jack.standard_error;
  rep.z_var.assign(dim, 0.0);
  rep.variance_floor.assign(dim, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    rep.z_var[c] = jack.covariance[c * dim + c];
    rep.variance_floor[c] = rep.z_var[c];  // Var(N_n)/n == Var(Z)
  }

  if (spec.runs >= 100) {
    std::vector<double> column(runs);
    for (std::size_t c = 0; c < dim; ++c) {
      for (std::size_t r = 0; r < runs; ++r) column[r] = z[r * dim + c];
      const auto ks = ks_test_normal(column, sel.final_cov[c * dim + c]);
      rep.ks.push_back({rep.coords[c], ks.statistic, ks.p_value});
    }
  }

  // Mahalanobis distances against the selected prediction.
  std::vector<double> lower;
  if (cholesky(dim, sel.final_cov, lower)) {
    std::vector<double> d2(runs);
    std::vector<double> zc(dim);
    for (std::size_t r = 0; r < runs; ++r) {
      for (std::size_t c = 0; c < dim; ++c) zc[c] = z[r * dim + c];
      d2[r] = quadratic_form_inverse(dim, lower, zc);
    }
    std::sort(d2.begin(), d2.end());
    rep.mahalanobis.df = dim;
    rep.mahalanobis.q50 = quantile_sorted(d2, 0.5);
    rep.mahalanobis.q90 = quantile_sorted(d2, 0.9);
    rep.mahalanobis.q99 = quantile_sorted(d2, 0.99);
    const std::uint64_t boot_seed = spec.seed ^ 0xb0075eedULL;
    rep.mahalanobis.se50 = bootstrap_quantile_se(d2, 0.5, 500, boot_seed);
    rep.mahalanobis.se90 = bootstrap_quantile_se(d2, 0.9, 500, boot_seed + 1);
    rep.mahalanobis.se99 = bootstrap_quantile_se(d2, 0.99, 500, boot_seed + 2);
    rep.mahalanobis.chi2_q50 = chi_square_quantile(double(dim), 0.5);
    rep.mahalanobis.chi2_q90 = chi_square_quantile(double(dim), 0.9);
    rep.mahalanobis.chi2_q99 = chi_square_quantile(double(dim), 0.99);
  }

  // Variant adjudication: worst covariance-entry deviation in jackknife SE
  // units for both predictions.
  auto max_dev_se = [&](const std::vector<double>& predicted) {
    double worst = 0.0;
    for (std::size_t k = 0; k < dim * dim; ++k) {
      const double se = rep.jackknife_se[k];
      if (se > 0.0) {
        worst = std::max(worst,
                         std::fabs(rep.empirical_cov[k] - predicted[k]) / se);
      }
    }
    return worst;
  };
  const double dev_corr = max_dev_se(corrected.final_cov);
  const double dev_verb = max_dev_se(verbatim.final_cov);
  rep.adjudication.corrected_max_dev_se = dev_corr;
  rep.adjudication.verbatim_max_dev_se = dev_verb;
  const bool corr_ok = dev_corr <= 5.0;
  const bool verb_ok = dev_verb <= 5.0;
  if (corr_ok && verb_ok) {
    rep.adjudication.matching_variant = "inconclusive";
  } else if (corr_ok) {
    rep.adjudication.matching_variant = "corrected";
  } else if (verb_ok) {
    rep.adjudication.matching_variant = "verbatim";
  } else {
    rep.adjudication.matching_variant = "neither";
  }
  return rep;
}

namespace {

nlohmann::ordered_json matrix_json(const std::vector<double>& m,
                                   std::size_t dim) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < dim; ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < dim; ++c) row.push_back(m[r * dim + c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string report_to_json(const EnsembleReport& rep) {
  using json = nlohmann::ordered_json;
  const std::size_t dim = rep.coords.size();
  json j;
  j["tool"] = kToolVersion;
  j["params"] = {{"alpha", rep.alpha},
                 {"gamma", rep.gamma},
                 {"lambda", rep.lambda},
                 {"mu", rep.mu}};
  j["n"] = rep.n;
  j["runs"] = rep.runs;
  j["seed"] = rep.seed;
  j["variant"] = rep.variant;
  j["window"] = {{"imax", rep.window_imax}, {"jmax", rep.window_jmax}};
  json coords = json::array();
  for (const auto& c : rep.coords) coords.push_back({c.i, c.j});
  j["coords"] = std::move(coords);
  j["insufficient_replications"] = rep.insufficient_replications;
  j["p"] = rep.p_values_used;
  j["nu_bias"] = rep.nu_bias;
  j["z_mean"] = rep.z_mean;
  j["z_var"] = rep.z_var;
  if (!rep.empirical_cov.empty()) {
    j["empirical_cov"] = matrix_json(rep.empirical_cov, dim);
    j["jackknife_se"] = matrix_json(rep.jackknife_se, dim);
  }
  j["predicted_cov"] = matrix_json(rep.predicted_cov, dim);
  j["predicted_cov_alt"] = matrix_json(rep.predicted_cov_alt, dim);
  if (!rep.ks.empty()) {
    json ks = json::array();
    for (const auto& k : rep.ks) {
      ks.push_back({{"coord", {k.coord.i, k.coord.j}},
                    {"statistic", k.statistic},
                    {"p_value", k.p_value}});
    }
    j["ks"] = std::move(ks);
  }
  if (rep.mahalanobis.df > 0) {
    j["mahalanobis"] = {
        {"df", rep.mahalanobis.df},
        {"q50", rep.mahalanobis.q50},
        {"q90", rep.mahalanobis.q90},
        {"q99", rep.mahalanobis.q99},
        {"bootstrap_se50", rep.mahalanobis.se50},
        {"bootstrap_se90", rep.mahalanobis.se90},
        {"bootstrap_se99", rep.mahalanobis.se99},
        {"chi2_q50", rep.mahalanobis.chi2_q50},
        {"chi2_q90", rep.mahalanobis.chi2_q90},
        {"chi2_q99", rep.mahalanobis.chi2_q99}};
  }
  j["concentration"] = {{"c", rep.concentration_c},
                        {"envelope", rep.concentration_envelope_value},
                        {"violation_rate", rep.concentration_violation_rate}};
  j["variance_floor"] = rep.variance_floor;
  if (!rep.adjudication.matching_variant.empty()) {
    j["adjudication"] = {
        {"corrected_max_dev_se", rep.adjudication.corrected_max_dev_se},
        {"verbatim_max_dev_se", rep.adjudication.verbatim_max_dev_se},
        {"matching_variant", rep.adjudication.matching_variant}};
  }
  return j.dump(2) + "\n";
}

std::string qq_csv(const EnsembleSpec& spec, const EnsembleCounts& counts,
                   const PGrid& pgrid, const CovarianceModel& predicted) {
  const std::size_t dim = spec.window.size();
  const std::size_t runs = std::size_t(spec.runs);
  const double n = double(spec.n);
  const double sqrt_n = std::sqrt(n);

  std::string out = "i,j,rank,standardized_sample,normal_quantile\n";
  std::vector<double> column(runs);
  for (std::size_t c = 0; c < dim; ++c) {
    const auto& coord = spec.window.coords[c];
    const double sigma = std::sqrt(predicted.final_cov[c * dim + c]);
    const double p = pgrid.at(coord.i, coord.j);
    for (std::size_t r = 0; r < runs; ++r) {
      column[r] = (double(counts.at(r, c)) - n * p) / (sqrt_n * sigma);
    }
    std::sort(column.begin(), column.end());
    for (std::size_t r = 0; r < runs; ++r) {
      const double u = (double(r) + 0.5) / double(runs);
      out += std::to_string(coord.i);
      out += ',';
      out += std::to_string(coord.j);
      out += ',';
      out += std::to_string(r + 1);
      out += ',';
      out += format_double(column[r]);
      out += ',';
      out += format_double(normal_quantile(u));
      out += '\n';
    }
  }
  return out;
}

}  // namespace dpa
