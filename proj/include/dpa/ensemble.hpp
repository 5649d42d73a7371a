#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpa/covariance.hpp"
#include "dpa/limits.hpp"
#include "dpa/params.hpp"

namespace dpa {

struct EnsembleSpec {
  ModelParams params;
  std::uint64_t n = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  IndexWindow window;
  int workers = 1;
};

/// Final window counts of every run, runs x coords row-major. Run r uses the
/// RNG stream derived from (seed, r); the matrix is identical for any worker
/// count.
struct EnsembleCounts {
  std::vector<std::uint64_t> counts;
  std::size_t dim = 0;

  std::uint64_t at(std::size_t run, std::size_t coord) const {
    return counts[run * dim + coord];
  }
};

EnsembleCounts run_ensemble(const EnsembleSpec& spec);

struct KsEntry {
  DegreePair coord;
  double statistic = 0.0;
  double p_value = 0.0;
};

struct MahalanobisSummary {
  std::size_t df = 0;
  double q50 = 0.0, q90 = 0.0, q99 = 0.0;
  double se50 = 0.0, se90 = 0.0, se99 = 0.0;
  double chi2_q50 = 0.0, chi2_q90 = 0.0, chi2_q99 = 0.0;
};

struct Adjudication {
  double corrected_max_dev_se = 0.0;
  double verbatim_max_dev_se = 0.0;
  std::string matching_variant;  // corrected | verbatim | inconclusive | neither
};

/// Full Monte Carlo report for one ensemble: moments of
/// Z = sqrt(n) (N_n/n - p), normality and concentration checks, and the
/// covariance comparison that adjudicates the B-sum variant. Contains no
/// wall-clock or worker information, so serialized reports are byte-stable.
struct EnsembleReport {
  // inputs
  double alpha = 0, gamma = 0, lambda = 0, mu = 0;
  std::uint64_t n = 0;
  int runs = 0;
  std::uint64_t seed = 0;
  std::string variant;
  int window_imax = 0, window_jmax = 0;
  std::vector<DegreePair> coords;

  bool insufficient_replications = false;

  std::vector<double> z_mean;
  std::vector<double> z_var;
  std::vector<double> p_values_used;       // p_ij per coordinate
  std::vector<double> nu_bias;             // |nu_n - n p| / sqrt(n)
  std::vector<double> empirical_cov;       // dim x dim
  std::vector<double> jackknife_se;        // dim x dim
  std::vector<double> predicted_cov;       // selected variant
  std::vector<double> predicted_cov_alt;   // the other variant
  std::vector<KsEntry> ks;
  MahalanobisSummary mahalanobis;
  double concentration_c = 0.0;
  double concentration_envelope_value = 0.0;
  double concentration_violation_rate = 0.0;
  std::vector<double> variance_floor;      // Var(N_n)/n per coordinate
  Adjudication adjudication;
};

/// Builds the report. `corrected` and `verbatim` must be covariance models
/// over spec.window's coordinates; `selected` picks which one the KS and
/// Mahalanobis sections test against.
EnsembleReport analyze_ensemble(const EnsembleSpec& spec,
                                const EnsembleCounts& counts,
                                const PGrid& pgrid,
                                const CovarianceModel& corrected,
                                const CovarianceModel& verbatim,
                                BVariant selected,
                                double concentration_c = 5.0);

/// Stable-ordered JSON; byte-identical across reruns and worker counts.
std::string report_to_json(const EnsembleReport& report);

/// Plot-ready QQ data: one row per coordinate and rank with the standardized
/// sorted sample and the matching normal quantile.
std::string qq_csv(const EnsembleSpec& spec, const EnsembleCounts& counts,
                   const PGrid& pgrid, const CovarianceModel& predicted);

}  // namespace dpa
