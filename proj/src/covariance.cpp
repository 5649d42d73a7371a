#include "dpa/covariance.hpp"

#include <algorithm>
#include <cmath>

#include "dpa/errors.hpp"
#include "dpa/linalg.hpp"

namespace dpa {

DriftTerms drift_terms(const ModelParams& params, const PGrid& pgrid,
                       const XiTable& xi) {
  DriftTerms d;
  const double c1 = params.c1();
  const double c2 = params.c2();
  for (int k = 0; k <= xi.ti; ++k) {
    for (int l = 0; l <= xi.tj; ++l) {
      const double p = pgrid.at(k, l);
      d.xi_mass += xi.at(k, l) * p;
      d.drift_sum +=
          p * (params.delta(k, l) * xi.at(k, l) -
               c1 * (k + params.lambda()) * xi.at(k + 1, l) -
               c2 * (l + params.mu()) * xi.at(k, l + 1));
    }
  }
  d.birth_mean = params.alpha() * xi.at(0, 1) + params.gamma() * xi.at(1, 0);
  return d;
}

double a_term(const DriftTerms& w, const DriftTerms& v) {
  const double dw = w.drift_sum - w.birth_mean;
  const double dv = v.drift_sum - v.birth_mean;
  return dw * dv + dw * v.xi_mass + dv * w.xi_mass;
}

BResult b_term(const ModelParams& params, const PGrid& pgrid,
               const XiTable& w, const XiTable& v, BVariant variant,
               const BoxPolicy& box) {
  int rmax = box.rmax >= 0 ? box.rmax : std::max(w.ti, v.ti) + 10;
  int qmax = box.qmax >= 0 ? box.qmax : std::max(w.tj, v.tj) + 10;
  // Outside both target boxes the event factors are constant; the box must
  // reach past the boxes for the tail bookkeeping below to be valid.
  rmax = std::max(rmax, std::max(w.ti, v.ti) + 1);
  qmax = std::max(qmax, std::max(w.tj, v.tj) + 1);
  if (pgrid.rmax < rmax || pgrid.qmax < qmax) {
    throw BoxTooSmallError("p grid does not cover the summation box");
  }

  const double c1 = params.c1();
  const double c2 = params.c2();
  const double w01 = w.at(0, 1), v01 = v.at(0, 1);
  const double wb =
      variant == BVariant::corrected ? w.at(1, 0) : w.at(0, 1);
  const double vb =
      variant == BVariant::corrected ? v.at(1, 0) : v.at(0, 1);

  long double total = 0.0L;
  long double covered_in = 0.0L, covered_out = 0.0L;
  for (int r = 0; r <= rmax; ++r) {
    for (int q = 0; q <= qmax; ++q) {
      const double p = pgrid.at(r, q);
      if (p == 0.0) continue;
      const double win = c1 * (r + params.lambda()) * p;
      const double wout = c2 * (q + params.mu()) * p;
      covered_in += win;
      covered_out += wout;
      const double fw_in = w.at(r + 1, q) + w01 - w.at(r, q);
      const double fv_in = v.at(r + 1, q) + v01 - v.at(r, q);
      const double fw_out = w.at(r, q + 1) + wb - w.at(r, q);
      const double fv_out = v.at(r, q + 1) + vb - v.at(r, q);
      total += win * fw_in * fv_in + wout * fw_out * fv_out;
    }
  }

  const double tail_in = std::max(0.0, params.alpha() - double(covered_in));
  const double tail_out = std::max(0.0, params.gamma() - double(covered_out));
  BResult res;
  res.remainder =
      tail_in * std::fabs(w01 * v01) + tail_out * std::fabs(wb * vb);
  if (box.tail_accel) {
    total += tail_in * w01 * v01 + tail_out * wb * vb;
  } else if (res.remainder > box.tolerance) {
    throw BoxTooSmallError(
        "summation box leaves a tail above tolerance; enlarge the box or "
        "enable tail acceleration");
  }
  res.value = double(total);
  return res;
}

CovarianceModel final_covariance(const ModelParams& params,
                                 std::span<const DegreePair> coords,
                                 const PGrid& pgrid, BVariant variant,
                                 const BoxPolicy& box) {
  CovarianceModel model;
  model.coords.assign(coords.begin(), coords.end());
  model.variant = variant;
  model.tail_accel = box.tail_accel;
  const std::size_t dim = coords.size();

  std::vector<XiTable> xi;
  std::vector<DriftTerms> drift;
  xi.reserve(dim);
  drift.reserve(dim);
  for (const auto& c : coords) {
    xi.push_back(xi_table(params, c.i, c.j));
    drift.push_back(drift_terms(params, pgrid, xi.back()));
  }

  model.a.assign(dim * dim, 0.0);
  model.b.assign(dim * dim, 0.0);
  model.c.assign(dim * dim, 0.0);
  model.ctilde.assign(dim * dim, 0.0);
  for (std::size_t wi = 0; wi < dim; ++wi) {
    for (std::size_t vi = wi; vi < dim; ++vi) {
      const double a = a_term(drift[wi], drift[vi]);
      const BResult b = b_term(params, pgrid, xi[wi], xi[vi], variant, box);
      model.max_remainder = std::max(model.max_remainder, b.remainder);
      const double c = a + b.value;
      const double scale =
          1.0 + params.delta(coords[wi].i, coords[wi].j) +
          params.delta(coords[vi].i, coords[vi].j);
      model.a[wi * dim + vi] = model.a[vi * dim + wi] = a;
      model.b[wi * dim + vi] = model.b[vi * dim + wi] = b.value;
      model.c[wi * dim + vi] = model.c[vi * dim + wi] = c;
      model.ctilde[wi * dim + vi] = model.ctilde[vi * dim + wi] = c / scale;
    }
  }

  const XiMatrix m = xi_matrix(params, coords);
  model.final_cov = sandwich_unit_lower_inverse(dim, m.values, model.ctilde);
  if (max_asymmetry(dim, model.final_cov) > 1e-10) {
    throw InternalError("final covariance lost symmetry");
  }
  // symmetrize rounding residue
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = r + 1; c < dim; ++c) {
      const double avg =
          0.5 * (model.final_cov[r * dim + c] + model.final_cov[c * dim + r]);
      model.final_cov[r * dim + c] = model.final_cov[c * dim + r] = avg;
    }
  }
  return model;
}

}  // namespace dpa
