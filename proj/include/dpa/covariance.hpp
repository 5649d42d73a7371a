#pragma once

#include <span>
#include <vector>

#include "dpa/limits.hpp"
#include "dpa/martingale.hpp"
#include "dpa/params.hpp"

namespace dpa {

/// Per-target drift scalars entering the covariance of the scaled
/// martingale differences:
///   xi_mass   = sum_{k<=i,l<=j} xi_kl p_kl
///   birth_mean = alpha xi_01 + gamma xi_10
///   drift_sum = sum p_kl (delta_kl xi_kl - c1(k+lambda) xi_{k+1,l}
///                                        - c2(l+mu) xi_{k,l+1})
/// The finite-window identity drift_sum - birth_mean + xi_mass = 0 holds
/// exactly (mean-zero differences); it is asserted by tests, not assumed.
struct DriftTerms {
  double xi_mass = 0.0;
  double birth_mean = 0.0;
  double drift_sum = 0.0;
};

DriftTerms drift_terms(const ModelParams& params, const PGrid& pgrid,
                       const XiTable& xi);

/// Drift product A(w,v) = (S_w-a_w)(S_v-a_v) + (S_w-a_w)P_v + (S_v-a_v)P_w;
/// algebraically equal to -P_w P_v via the mean-zero identity.
double a_term(const DriftTerms& w, const DriftTerms& v);

/// Which birth coefficient multiplies out-attachment events in the jump
/// covariance: `corrected` uses xi_10 (an out-event creates a (1,0) node);
/// `verbatim` keeps xi_01 on both event types. Simulation adjudicates.
enum class BVariant { corrected, verbatim };

struct BoxPolicy {
  int rmax = -1;  // -1: max target index + 10
  int qmax = -1;
  bool tail_accel = false;
  double tolerance = 1e-6;
};

struct BResult {
  double value = 0.0;
  double remainder = 0.0;  // bound on the neglected tail (diagnostic)
};

/// Jump-covariance sum
///   B(w,v) = sum_{r,q} c1(r+lambda) p_rq F^w_in(r,q)  F^v_in(r,q)
///          + sum_{r,q} c2(q+mu)     p_rq F^w_out(r,q) F^v_out(r,q),
/// with F^w_in(r,q)  = xi^w_{r+1,q} + xi^w_01    - xi^w_rq and
///      F^w_out(r,q) = xi^w_{r,q+1} + xi^w_birth - xi^w_rq,
/// one product per attachment event. Outside both target boxes the factors
/// are constant, so the neglected tail is (alpha - covered_in) xi^w_01
/// xi^v_01 + (gamma - covered_out) xi^w_b xi^v_b; tail_accel adds it
/// (relying on sum p = sum i p = sum j p = 1), otherwise it is reported as
/// the remainder and BoxTooSmallError is thrown above the tolerance.
BResult b_term(const ModelParams& params, const PGrid& pgrid,
               const XiTable& w, const XiTable& v, BVariant variant,
               const BoxPolicy& box = {});

/// Everything criterion-facing about the asymptotic covariance over one
/// coordinate set: the A/B/C tables, the Karamata-normalized kernel
/// Ctilde = C / (1 + delta_w + delta_v), and the covariance of
/// sqrt(n)(N_n/n - p), final_cov = Xi^{-1} Ctilde Xi^{-T}. The per-target
/// scale constants of the raw martingale normalization cancel in this form,
/// which also sidesteps their poles at integer delta (delta_11 == 1 always).
struct CovarianceModel {
  std::vector<DegreePair> coords;
  BVariant variant = BVariant::corrected;
  std::vector<double> a;       // dim x dim, row-major
  std::vector<double> b;
  std::vector<double> c;       // a + b
  std::vector<double> ctilde;  // c / (1 + delta_w + delta_v)
  std::vector<double> final_cov;
  double max_remainder = 0.0;
  bool tail_accel = false;

  std::size_t dim() const noexcept { return coords.size(); }
};

CovarianceModel final_covariance(const ModelParams& params,
                                 std::span<const DegreePair> coords,
                                 const PGrid& pgrid, BVariant variant,
                                 const BoxPolicy& box = {});

}  // namespace dpa
