#include <doctest.h>

#include <cmath>

#include "panelkit/estimators.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace panelkit;

namespace {

DesignMatrix random_design(Eigen::Index n, Eigen::Index k,
                           std::uint64_t seed) {
  const Eigen::MatrixXd X = fixtures::random_matrix(n, k, seed);
  Eigen::VectorXd y(n);
  fixtures::Rng rng(seed + 1000);
  for (Eigen::Index i = 0; i < n; ++i)
    y(i) = 5.0 + X.row(i).sum() * 0.8 + rng.normal();
  return fixtures::make_design(y, X, fixtures::numbered_names(static_cast<int>(k)));
}

}  // namespace

TEST_CASE("ridge at lambda 0 equals ols on full-rank designs") {
  const DesignMatrix d = random_design(40, 4, 10);
  const RidgeFit ridge = ridge_fit(d, 0.0);
  const OlsFit ols = ols_fit(d, true);
  CHECK(std::abs(ridge.intercept - ols.coefficients.rows[0].estimate) < 1e-6);
  for (Eigen::Index j = 0; j < 4; ++j)
    CHECK(std::abs(ridge.coefficients(j) -
                   ols.coefficients.rows[static_cast<std::size_t>(j) + 1]
                       .estimate) < 1e-6);
}

TEST_CASE("ridge at huge lambda shrinks slopes to zero, intercept to ybar") {
  const DesignMatrix d = random_design(40, 4, 20);
  const RidgeFit fit = ridge_fit(d, 1e12);
  CHECK(fit.standardized.cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(fit.intercept - d.y.mean()) < 1e-6);
}

TEST_CASE("single-predictor ridge matches the scalar closed form") {
  Eigen::VectorXd x(8), y(8);
  x << 1, 2, 3, 5, 8, 13, 21, 34;
  y << 2.1, 3.9, 6.2, 9.8, 16.5, 25.9, 42.2, 67.8;
  const DesignMatrix d = fixtures::make_design(y, x, {"x"});

  const oracle::Vector xv(x.begin(), x.end());
  const double mx = oracle::mean(xv);
  const double sdx = std::sqrt(oracle::sample_var(xv));
  const double my = y.mean();
  for (double lambda : {0.0, 1.0, 10.0}) {
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < 8; ++i) {
      const double z = (x(i) - mx) / sdx;
      num += z * (y(i) - my);
      den += z * z;
    }
    const double expect = num / (den + lambda);
    const RidgeFit fit = ridge_fit(d, lambda);
    CHECK(std::abs(fit.standardized(0) - expect) < 1e-10);
    CHECK(std::abs(fit.coefficients(0) - expect / sdx) < 1e-10);
  }
}

TEST_CASE("ridge rejects negative lambda and zero-variance columns") {
  const DesignMatrix d = random_design(10, 2, 30);
  CHECK_THROWS_AS(ridge_fit(d, -1.0), Error);
  DesignMatrix flat = d;
  flat.X.col(1).setConstant(2.0);
  try {
    ridge_fit(flat, 1.0);
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVariance);
    CHECK(std::string(e.what()).find("x2") != std::string::npos);
  }
}

TEST_CASE("standardized slope norm is nonincreasing in lambda") {
  const DesignMatrix d = random_design(60, 6, 40);
  const std::vector<double> grid = default_lambda_grid(1e-3, 1e6, 100);
  double previous = std::numeric_limits<double>::infinity();
  for (double lambda : grid) {
    const double norm = ridge_fit(d, lambda).standardized.norm();
    CHECK(norm <= previous + 1e-10);
    previous = norm;
  }
}

TEST_CASE("ridge approaches ols as lambda approaches zero") {
  const DesignMatrix d = random_design(50, 5, 50);
  const OlsFit ols = ols_fit(d, true);
  double prev_dist = std::numeric_limits<double>::infinity();
  for (double lambda : {1.0, 1e-2, 1e-4, 1e-6, 1e-8}) {
    const RidgeFit fit = ridge_fit(d, lambda);
    double dist = 0.0;
    for (Eigen::Index j = 0; j < 5; ++j)
      dist = std::max(dist,
                      std::abs(fit.coefficients(j) -
                               ols.coefficients.rows[static_cast<std::size_t>(j) + 1]
                                   .estimate));
    CHECK(dist <= prev_dist + 1e-12);
    prev_dist = dist;
  }
  CHECK(prev_dist < 1e-6);
}

TEST_CASE("fold assignment is a pure near-equal partition") {
  const auto assignment = cv_fold_assignment(23, 5, 99);
  CHECK(assignment.size() == 23);
  std::vector<int> counts(5, 0);
  for (int f : assignment) {
    REQUIRE(f >= 0);
    REQUIRE(f < 5);
    ++counts[static_cast<std::size_t>(f)];
  }
  for (int c : counts) CHECK((c == 4 || c == 5));
  CHECK(cv_fold_assignment(23, 5, 99) == assignment);  // pure function
  CHECK(cv_fold_assignment(23, 5, 100) != assignment);
  CHECK_THROWS_AS(cv_fold_assignment(23, 1, 99), Error);
  CHECK_THROWS_AS(cv_fold_assignment(23, 24, 99), Error);
}

TEST_CASE("singleton grid pins both selected lambdas") {
  const DesignMatrix d = random_design(30, 3, 60);
  const CvCurve curve = ridge_cv(d, {3.5}, 5, 1);
  CHECK(curve.lambda_min == 3.5);
  CHECK(curve.lambda_1se == 3.5);
  CHECK(curve.grid.size() == 1);
}

TEST_CASE("cv is deterministic for a fixed seed") {
  const DesignMatrix d = random_design(45, 4, 70);
  const std::vector<double> grid = {0.1, 1.0, 10.0};
  const CvCurve a = ridge_cv(d, grid, 5, 42);
  const CvCurve b = ridge_cv(d, grid, 5, 42);
  CHECK(a.grid == b.grid);
  CHECK(a.mse_mean == b.mse_mean);  // exact double equality
  CHECK(a.mse_se == b.mse_se);
  CHECK(a.lambda_min == b.lambda_min);
  CHECK(a.lambda_1se == b.lambda_1se);
}

TEST_CASE("cv matches a manual fold-loop oracle") {
  const DesignMatrix d = random_design(21, 3, 80);
  const std::vector<double> grid = {0.5, 5.0};
  const int folds = 3;
  const std::uint64_t seed = 7;
  const CvCurve curve = ridge_cv(d, grid, folds, seed);

  const std::vector<int> assignment =
      cv_fold_assignment(static_cast<std::size_t>(d.y.size()), folds, seed);
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    std::vector<double> fold_mse;
    for (int f = 0; f < folds; ++f) {
      std::vector<Eigen::Index> train, held;
      for (Eigen::Index i = 0; i < d.y.size(); ++i)
        (assignment[static_cast<std::size_t>(i)] == f ? held : train)
            .push_back(i);
      Eigen::VectorXd ty(static_cast<Eigen::Index>(train.size()));
      Eigen::MatrixXd tx(static_cast<Eigen::Index>(train.size()), d.X.cols());
      for (std::size_t i = 0; i < train.size(); ++i) {
        ty(static_cast<Eigen::Index>(i)) = d.y(train[i]);
        tx.row(static_cast<Eigen::Index>(i)) = d.X.row(train[i]);
      }
      const RidgeFit fit =
          ridge_fit(fixtures::make_design(ty, tx, d.names), grid[gi]);
      double sum = 0.0;
      for (Eigen::Index i : held) {
        const double pred = fit.intercept + fit.coefficients.dot(d.X.row(i));
        sum += (d.y(i) - pred) * (d.y(i) - pred);
      }
      fold_mse.push_back(sum / static_cast<double>(held.size()));
    }
    double mean = 0.0;
    for (double m : fold_mse) mean += m;
    mean /= folds;
    double var = 0.0;
    for (double m : fold_mse) var += (m - mean) * (m - mean);
    var /= folds - 1;
    CHECK(std::abs(curve.mse_mean[gi] - mean) < 1e-10);
    CHECK(std::abs(curve.mse_se[gi] - std::sqrt(var / folds)) < 1e-10);
  }

  // lambda_1se definition: largest lambda within one se of the minimum
  const std::size_t min_idx =
      curve.mse_mean[0] <= curve.mse_mean[1] ? 0 : 1;
  const double limit = curve.mse_mean[min_idx] + curve.mse_se[min_idx];
  double expect_1se = curve.lambda_min;
  for (std::size_t gi = 0; gi < grid.size(); ++gi)
    if (curve.mse_mean[gi] <= limit) expect_1se = curve.grid[gi];
  CHECK(curve.lambda_1se == expect_1se);
}

TEST_CASE("mse ties select the smallest lambda") {
  // Constant response: every lambda fits the identical zero-slope model, so
  // all MSEs tie bit-for-bit and the smallest lambda must win.
  Eigen::VectorXd y = Eigen::VectorXd::Constant(12, 4.0);
  const Eigen::MatrixXd X = fixtures::random_matrix(12, 2, 90);
  const DesignMatrix d = fixtures::make_design(y, X, {"x1", "x2"});
  const CvCurve curve = ridge_cv(d, {2.0, 0.5, 8.0}, 3, 5);
  CHECK(curve.mse_mean[0] == curve.mse_mean[1]);
  CHECK(curve.mse_mean[1] == curve.mse_mean[2]);
  CHECK(curve.lambda_min == 0.5);
  CHECK(curve.lambda_1se == 8.0);  // largest within one se of the min
}

TEST_CASE("cv rejects training folds smaller than 2 rows") {
  const DesignMatrix d = random_design(2, 1, 91);
  CHECK_THROWS_AS(ridge_cv(d, {1.0}, 2, 1), Error);
  try {
    ridge_cv(d, {1.0}, 2, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FoldTooSmall);
  }
}

TEST_CASE("cv validates the grid") {
  const DesignMatrix d = random_design(20, 2, 92);
  CHECK_THROWS_AS(ridge_cv(d, {}, 4, 1), Error);
  CHECK_THROWS_AS(ridge_cv(d, {1.0, -2.0}, 4, 1), Error);
  // zero is allowed in the grid
  const CvCurve curve = ridge_cv(d, {0.0, 1.0}, 4, 1);
  CHECK(curve.grid.front() == 0.0);
}

TEST_CASE("default lambda grid is log-spaced and ascending") {
  const std::vector<double> grid = default_lambda_grid(1e-3, 1e6, 100);
  REQUIRE(grid.size() == 100);
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(1e6));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] > grid[i - 1]);
    // constant ratio on the log scale
    if (i >= 2)
      CHECK(std::abs(grid[i] / grid[i - 1] - grid[i - 1] / grid[i - 2]) <
            1e-9 * grid[i] / grid[i - 1]);
  }
}
