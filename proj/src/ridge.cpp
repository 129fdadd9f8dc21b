#include <algorithm>
#include <cmath>
#include <random>

#include "panelkit/estimators.hpp"

namespace panelkit {

RidgeFit ridge_fit(const DesignMatrix& d, double lambda) {
  if (!(lambda >= 0.0))
    throw Error(ErrorCode::ConfigError, "lambda must be >= 0");
  const Eigen::Index n = d.X.rows();
  const Eigen::Index k = d.X.cols();
  if (n < 2)
    throw Error(ErrorCode::InsufficientRows, "ridge needs n >= 2");

  RidgeFit fit;
  fit.lambda = lambda;
  fit.names = d.names;

  Eigen::MatrixXd Z(n, k);
  Eigen::VectorXd sds(k), means(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    std::pair<Eigen::VectorXd, Standardization> sj;
    try {
      sj = standardize(d.X.col(j));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroVariance)
        throw Error(ErrorCode::ZeroVariance,
                    "column \"" + d.names[static_cast<std::size_t>(j)] +
                        "\" has zero variance");
      throw;
    }
    Z.col(j) = sj.first;
    means(j) = sj.second.mean;
    sds(j) = sj.second.sd;
  }

  const double y_mean = d.y.mean();
  const Eigen::VectorXd y_c = d.y.array() - y_mean;

  if (k == 0) {
    fit.intercept = y_mean;
    fit.coefficients.resize(0);
    fit.standardized.resize(0);
    return fit;
  }

  Eigen::MatrixXd ztz = Z.transpose() * Z;
  ztz.diagonal().array() += lambda;
  fit.standardized = ztz.ldlt().solve(Z.transpose() * y_c);
  fit.coefficients = fit.standardized.array() / sds.array();
  fit.intercept = y_mean - fit.coefficients.dot(means);
  return fit;
}

std::vector<int> cv_fold_assignment(std::size_t n, int folds,
                                    std::uint64_t seed) {
  if (folds < 2 || static_cast<std::size_t>(folds) > n)
    throw Error(ErrorCode::ConfigError,
                "fold count must lie in [2, n]; got " + std::to_string(folds) +
                    " with n=" + std::to_string(n));

  // Hand-rolled Fisher-Yates: std::shuffle's use of the generator is
  // implementation-defined, mt19937_64 output is not.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 gen(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
    std::swap(order[i], order[j]);
  }

  const std::size_t base = n / static_cast<std::size_t>(folds);
  const std::size_t extra = n % static_cast<std::size_t>(folds);
  std::vector<int> assignment(n, 0);
  std::size_t pos = 0;
  for (int f = 0; f < folds; ++f) {
    const std::size_t size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) assignment[order[pos++]] = f;
  }
  return assignment;
}

namespace {

DesignMatrix subset_rows(const DesignMatrix& d,
                         const std::vector<Eigen::Index>& rows) {
  DesignMatrix out;
  out.names = d.names;
  out.response_name = d.response_name;
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  out.X.resize(static_cast<Eigen::Index>(rows.size()), d.X.cols());
  out.keys.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.y(static_cast<Eigen::Index>(i)) = d.y(rows[i]);
    out.X.row(static_cast<Eigen::Index>(i)) = d.X.row(rows[i]);
    out.keys.push_back(d.keys.empty() ? PanelKey{}
                                      : d.keys[static_cast<std::size_t>(rows[i])]);
  }
  return out;
}

}  // namespace

CvCurve ridge_cv(const DesignMatrix& d, std::vector<double> grid, int folds,
                 std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(d.X.rows());
  if (grid.empty())
    throw Error(ErrorCode::ConfigError, "lambda grid is empty");
  for (double lambda : grid)
    if (!(lambda >= 0.0))
      throw Error(ErrorCode::ConfigError, "lambda grid values must be >= 0");
  std::sort(grid.begin(), grid.end());

  const std::vector<int> assignment = cv_fold_assignment(n, folds, seed);

  std::vector<std::vector<Eigen::Index>> train_rows(
      static_cast<std::size_t>(folds)),
      test_rows(static_cast<std::size_t>(folds));
  for (std::size_t i = 0; i < n; ++i) {
    for (int f = 0; f < folds; ++f)
      (assignment[i] == f ? test_rows : train_rows)[static_cast<std::size_t>(f)]
          .push_back(static_cast<Eigen::Index>(i));
  }
  for (int f = 0; f < folds; ++f)
    if (train_rows[static_cast<std::size_t>(f)].size() < 2)
      throw Error(ErrorCode::FoldTooSmall,
                  "training fold " + std::to_string(f) +
                      " has fewer than 2 rows");

  CvCurve curve;
  curve.grid = grid;
  curve.fold_count = folds;
  curve.seed = seed;
  curve.mse_mean.resize(grid.size());
  curve.mse_se.resize(grid.size());

  // Sequential evaluation; fold assignment is a pure function of (n, folds,
  // seed), so a parallel schedule would have to reproduce these exact sums.
  std::vector<std::vector<double>> fold_mse(
      grid.size(), std::vector<double>(static_cast<std::size_t>(folds)));
  for (int f = 0; f < folds; ++f) {
    const DesignMatrix train =
        subset_rows(d, train_rows[static_cast<std::size_t>(f)]);
    const auto& held = test_rows[static_cast<std::size_t>(f)];
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      const RidgeFit fit = ridge_fit(train, grid[gi]);
      double sum = 0.0;
      for (Eigen::Index row : held) {
        const double pred = fit.intercept + fit.coefficients.dot(d.X.row(row));
        const double err = d.y(row) - pred;
        sum += err * err;
      }
      fold_mse[gi][static_cast<std::size_t>(f)] =
          sum / static_cast<double>(held.size());
    }
  }

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const auto& mses = fold_mse[gi];
    double mean = 0.0;
    for (double m : mses) mean += m;
    mean /= static_cast<double>(folds);
    double var = 0.0;
    for (double m : mses) var += (m - mean) * (m - mean);
    var /= static_cast<double>(folds - 1);
    curve.mse_mean[gi] = mean;
    curve.mse_se[gi] = std::sqrt(var / static_cast<double>(folds));
  }

  // Minimal mean MSE; exact ties resolve to the smallest lambda because the
  // grid is ascending and the comparison is strict.
  std::size_t min_idx = 0;
  for (std::size_t gi = 1; gi < grid.size(); ++gi)
    if (curve.mse_mean[gi] < curve.mse_mean[min_idx]) min_idx = gi;
  curve.lambda_min = grid[min_idx];

  const double limit = curve.mse_mean[min_idx] + curve.mse_se[min_idx];
  std::size_t idx_1se = min_idx;
  for (std::size_t gi = grid.size(); gi-- > 0;) {
    if (curve.mse_mean[gi] <= limit) {
      idx_1se = gi;
      break;
    }
  }
  curve.lambda_1se = grid[idx_1se];
  return curve;
}

std::vector<double> default_lambda_grid(double min, double max, int count) {
  if (!(min > 0.0) || !(max > min))
    throw Error(ErrorCode::ConfigError,
                "lambda grid needs 0 < min < max");
  if (count < 1)
    throw Error(ErrorCode::ConfigError, "lambda grid needs count >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    grid.push_back(min);
    return grid;
  }
  const double log_min = std::log(min);
  const double log_max = std::log(max);
  for (int i = 0; i < count; ++i)
    grid.push_back(std::exp(log_min + (log_max - log_min) *
                                          static_cast<double>(i) /
                                          static_cast<double>(count - 1)));
  return grid;
}

}  // namespace panelkit
