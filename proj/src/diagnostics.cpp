#include "panelkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace panelkit {

namespace {

void check_columns(const Eigen::MatrixXd& X,
                   const std::vector<std::string>& names) {
  if (names.size() != static_cast<std::size_t>(X.cols()))
    throw Error(ErrorCode::Internal, "column name count mismatch");
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double mean = X.col(j).mean();
    const double ss = (X.col(j).array() - mean).square().sum();
    if (!(ss > 0.0))
      throw Error(ErrorCode::ZeroVariance,
                  "column \"" + names[static_cast<std::size_t>(j)] +
                      "\" has zero variance");
  }
}

}  // namespace

CorrelationMatrix correlation_matrix(const Eigen::MatrixXd& X,
                                     const std::vector<std::string>& names) {
  if (X.rows() < 3)
    throw Error(ErrorCode::TooShort,
                "correlation needs n >= 3, got " + std::to_string(X.rows()));
  check_columns(X, names);

  const Eigen::Index k = X.cols();
  Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
  Eigen::VectorXd norms(k);
  for (Eigen::Index j = 0; j < k; ++j) norms(j) = centered.col(j).norm();

  CorrelationMatrix out;
  out.names = names;
  out.R = Eigen::MatrixXd::Identity(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) {
      double r = centered.col(i).dot(centered.col(j)) / (norms(i) * norms(j));
      r = std::clamp(r, -1.0, 1.0);
      out.R(i, j) = r;
      out.R(j, i) = r;
    }
  return out;
}

std::vector<CorrelationPair> high_correlation_pairs(
    const CorrelationMatrix& corr, double cutoff) {
  if (!(cutoff > 0.0 && cutoff < 1.0))
    throw Error(ErrorCode::ConfigError,
                "correlation cutoff must lie in (0, 1)");

  std::vector<CorrelationPair> pairs;
  const Eigen::Index k = corr.R.cols();
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double r = corr.R(i, j);
      if (std::abs(r) >= cutoff)
        pairs.push_back({corr.names[static_cast<std::size_t>(i)],
                         corr.names[static_cast<std::size_t>(j)], r});
    }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const CorrelationPair& a, const CorrelationPair& b) {
                     return std::abs(a.r) > std::abs(b.r);
                   });
  return pairs;
}

VifTable vif(const Eigen::MatrixXd& X, const std::vector<std::string>& names,
             double threshold) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (k < 2)
    throw Error(ErrorCode::TooShort, "vif needs at least 2 columns");
  if (n <= k)
    throw Error(ErrorCode::InsufficientRows,
                "vif needs n > k, got n=" + std::to_string(n) +
                    " k=" + std::to_string(k));
  check_columns(X, names);

  VifTable table;
  table.threshold = threshold;
  // Auxiliary regressions column-by-column; deterministic regardless of
  // evaluation order, so they could run in parallel.
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::MatrixXd A(n, k);  // other columns plus intercept
    A.col(0).setOnes();
    Eigen::Index c = 1;
    for (Eigen::Index m = 0; m < k; ++m)
      if (m != j) A.col(c++) = X.col(m);

    const Eigen::VectorXd target = X.col(j);
    const Eigen::VectorXd beta = A.colPivHouseholderQr().solve(target);
    const double rss = (target - A * beta).squaredNorm();
    const double tss = (target.array() - target.mean()).square().sum();
    const double r2 = 1.0 - rss / tss;

    VifEntry entry;
    entry.name = names[static_cast<std::size_t>(j)];
    if (r2 >= 1.0 - 1e-12) {
      entry.vif = std::numeric_limits<double>::infinity();
      entry.flagged = true;
    } else {
      entry.vif = 1.0 / (1.0 - r2);
      entry.flagged = entry.vif > threshold;
    }
    table.entries.push_back(std::move(entry));
  }
  return table;
}

}  // namespace panelkit
