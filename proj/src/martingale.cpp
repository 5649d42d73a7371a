#include "dpa/martingale.hpp"

#include <cmath>
#include <utility>

#include "dpa/errors.hpp"

namespace dpa {

double xi_row_limit(const ModelParams& params, int i, int k) {
  if (k < 0 || k > i) throw ValidationError("need 0 <= k <= i");
  double prod = 1.0;
  for (int d = k; d <= i - 1; ++d) {
    prod *= (params.lambda() + d) / double(i - d);
  }
  return ((i - k) % 2 == 0) ? prod : -prod;
}

double xi_col_limit(const ModelParams& params, int j, int l) {
  if (l < 0 || l > j) throw ValidationError("need 0 <= l <= j");
  double prod = 1.0;
  for (int r = l; r <= j - 1; ++r) {
    prod *= (params.mu() + r) / double(j - r);
  }
  return ((j - l) % 2 == 0) ? prod : -prod;
}

XiTable xi_table(const ModelParams& params, int i, int j) {
  if (i < 0 || j < 0 || (i == 0 && j == 0)) {
    throw ValidationError("target pair must differ from (0,0)");
  }
  XiTable t;
  t.ti = i;
  t.tj = j;
  t.values.assign(std::size_t(i + 1) * (j + 1), 0.0);
  auto set = [&](int k, int l, double v) {
    t.values[std::size_t(k) * (j + 1) + l] = v;
  };

  for (int k = i; k >= 0; --k) set(k, j, xi_row_limit(params, i, k));
  for (int l = j; l >= 0; --l) set(i, l, xi_col_limit(params, j, l));

  const double dij = params.delta(i, j);
  for (int k = i - 1; k >= 0; --k) {
    for (int l = j - 1; l >= 0; --l) {
      const double gap = dij - params.delta(k, l);  // c1(i-k)+c2(j-l) > 0
      const double v = -(params.c1() * (k + params.lambda()) * t.at(k + 1, l) +
                         params.c2() * (l + params.mu()) * t.at(k, l + 1)) /
                       gap;
      set(k, l, v);
    }
  }

  t.raw00 = t.at(0, 0);
  set(0, 0, 0.0);
  return t;
}

XiMatrix xi_matrix(const ModelParams& params,
                   std::span<const DegreePair> coords) {
  XiMatrix m;
  m.coords.assign(coords.begin(), coords.end());
  const std::size_t dim = coords.size();
  m.values.assign(dim * dim, 0.0);
  for (std::size_t r = 0; r < dim; ++r) {
    const XiTable t = xi_table(params, coords[r].i, coords[r].j);
    for (std::size_t c = 0; c < dim; ++c) {
      m.values[r * dim + c] = t.at(coords[c].i, coords[c].j);
    }
  }
  // Lexicographic coordinate order makes the matrix unit lower triangular;
  // anything above the diagonal would be a construction bug.
  for (std::size_t r = 0; r < dim; ++r) {
    if (m.values[r * dim + r] != 1.0) {
      throw InternalError("xi matrix diagonal entry is not 1");
    }
    for (std::size_t c = r + 1; c < dim; ++c) {
      if (m.values[r * dim + c] != 0.0) {
        throw InternalError("xi matrix has mass above the diagonal");
      }
    }
  }
  return m;
}

double XiMatrix::det() const {
  double d = 1.0;
  for (std::size_t r = 0; r < dim(); ++r) d *= at(r, r);
  return d;
}

std::uint64_t BTable::start_index(const ModelParams& params, int i, int j) {
  // floor(delta)+1 clears every factor (1 - delta_kl/n); the epsilon guards
  // delta values that are integers up to rounding (delta_11 == 1 always).
  return std::uint64_t(std::floor(params.delta(i, j) + 1e-9)) + 1;
}

BTable::BTable(const ModelParams& params, int i, int j)
    : BTable(params, i, j,
             std::vector<double>(std::size_t(i + 1) * (j + 1), 1.0)) {}

BTable::BTable(const ModelParams& params, int i, int j,
               std::vector<double> start)
    : params_(params), ti_(i), tj_(j), n_(start_index(params, i, j)) {
  if (start.size() != std::size_t(i + 1) * (j + 1)) {
    throw ValidationError("start vector size mismatch");
  }
  b_ = std::move(start);
  scratch_.assign(b_.size(), 0.0);
}

void BTable::advance() {
  const double inv_n = 1.0 / double(n_);
  const double c1 = params_.c1();
  const double c2 = params_.c2();
  const double lambda = params_.lambda();
  const double mu = params_.mu();

  auto next_at = [&](int k, int l) -> double {
    return scratch_[std::size_t(k) * (tj_ + 1) + l];
  };
  auto solve_cell = [&](int k, int l, double coupled) {
    const double factor = 1.0 - params_.delta(k, l) * inv_n;
    if (std::fabs(factor) < 1e-14) {
      throw SingularStepError("vanishing factor in coefficient recursion");
    }
    scratch_[std::size_t(k) * (tj_ + 1) + l] = (at(k, l) - coupled) / factor;
  };

  solve_cell(ti_, tj_, 0.0);
  for (int k = ti_ - 1; k >= 0; --k) {
    solve_cell(k, tj_, next_at(k + 1, tj_) * c1 * (k + lambda) * inv_n);
  }
  for (int l = tj_ - 1; l >= 0; --l) {
    solve_cell(ti_, l, next_at(ti_, l + 1) * c2 * (l + mu) * inv_n);
  }
  for (int k = ti_ - 1; k >= 0; --k) {
    for (int l = tj_ - 1; l >= 0; --l) {
      solve_cell(k, l, next_at(k + 1, l) * c1 * (k + lambda) * inv_n +
                           next_at(k, l + 1) * c2 * (l + mu) * inv_n);
    }
  }
  b_.swap(scratch_);
  ++n_;
}

void BTable::advance_to(std::uint64_t n_target) {
  while (n_ < n_target) advance();
}

}  // namespace dpa
