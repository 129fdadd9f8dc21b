#ifndef PANELKIT_ESTIMATORS_HPP
#define PANELKIT_ESTIMATORS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "panelkit/panel.hpp"

namespace panelkit {

struct CoefficientRow {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
  double t = 0.0;
  double p = 1.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  bool significant = false;
};

struct CoefficientTable {
  std::vector<CoefficientRow> rows;
  long df_resid = 0;
  long n = 0;
  double alpha = 0.10;  // level used by mark_significance
};

/// Pooled OLS with classical (homoskedastic) inference.
struct OlsFit {
  CoefficientTable coefficients;  // intercept row first when fitted
  double r_squared = 0.0;
  double sigma2 = 0.0;
  Eigen::VectorXd residuals;
  Eigen::VectorXd fitted;
};

struct FeOptions {
  bool country_effects = true;
  bool year_effects = false;
};

/// Within-estimator fit; slope table carries no global intercept row.
struct FeFit {
  CoefficientTable coefficients;
  std::map<std::string, double> group_intercepts;
  std::optional<std::map<int, double>> year_intercepts;
  double sigma2 = 0.0;
  double within_r_squared = 0.0;
  Eigen::VectorXd residuals;
};

/// L2-penalized least squares; no p-values by construction.
struct RidgeFit {
  double lambda = 0.0;
  double intercept = 0.0;               // original response units
  std::vector<std::string> names;
  Eigen::VectorXd coefficients;         // original units per raw-unit change
  Eigen::VectorXd standardized;         // response units per 1-sd change
};

struct CvCurve {
  std::vector<double> grid;  // ascending
  std::vector<double> mse_mean;
  std::vector<double> mse_se;
  int fold_count = 10;
  std::uint64_t seed = 0;
  double lambda_min = 0.0;
  double lambda_1se = 0.0;
};

/// Minimizes sum((y - [1 X] beta)^2). Classical SEs from sigma2 = RSS/df;
/// two-sided p-values and 95% CIs from Student-t with df_resid degrees of
/// freedom. Throws RankDeficient naming a dependent column set.
OlsFit ols_fit(const DesignMatrix& d, bool intercept = true);

/// Demeans y and X within country (and within year when enabled), runs OLS
/// on the transformed data with df = n - k - G - (T - 1 if year effects),
/// and recovers group intercepts as mean(y_i) - mean(x_i) . beta.
FeFit fe_fit(const DesignMatrix& d, const FeOptions& options = {});

/// Standardizes X columns, centers y, solves (Z'Z + lambda I) b = Z'y_c.
/// The intercept is unpenalized and recovered at the variable means; both
/// standardized and original-unit coefficients are reported.
RidgeFit ridge_fit(const DesignMatrix& d, double lambda);

/// Deterministic fold id per row: Fisher-Yates shuffle driven by a seeded
/// mt19937_64, folds of near-equal size. Pure function of (n, folds, seed).
std::vector<int> cv_fold_assignment(std::size_t n, int folds,
                                    std::uint64_t seed);

/// K-fold CV over the lambda grid. Standardization parameters come from the
/// training fold only. lambda_min attains the minimal mean MSE (ties take
/// the smallest lambda); lambda_1se is the largest lambda whose mean MSE is
/// within one standard error of the minimum.
CvCurve ridge_cv(const DesignMatrix& d, std::vector<double> grid, int folds,
                 std::uint64_t seed);

/// Log-spaced lambda grid, count points over [min, max].
std::vector<double> default_lambda_grid(double min = 1e-3, double max = 1e6,
                                        int count = 100);

/// Flags rows with p <= alpha (inclusive). Presentation metadata only.
CoefficientTable mark_significance(CoefficientTable table, double alpha = 0.10);

}  // namespace panelkit

#endif
