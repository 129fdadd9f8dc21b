#include "panelkit/estimators.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <set>

namespace panelkit {

namespace {

double t_p_two_sided(double t, long df) {
  boost::math::students_t dist(static_cast<double>(df));
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

double t_quantile_975(long df) {
  boost::math::students_t dist(static_cast<double>(df));
  return boost::math::quantile(dist, 0.975);
}

// Classical inference around a solved least-squares system.
CoefficientTable classical_inference(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& beta,
                                     const std::vector<std::string>& names,
                                     long df, double sigma2) {
  CoefficientTable table;
  table.n = static_cast<long>(A.rows());
  table.df_resid = df;

  const Eigen::MatrixXd xtx = A.transpose() * A;
  const Eigen::MatrixXd xtx_inv =
      xtx.llt().solve(Eigen::MatrixXd::Identity(A.cols(), A.cols()));
  const double q = t_quantile_975(df);

  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    CoefficientRow row;
    row.name = names[static_cast<std::size_t>(j)];
    row.estimate = beta(j);
    row.se = std::sqrt(sigma2 * xtx_inv(j, j));
    row.t = row.se > 0.0 ? row.estimate / row.se : 0.0;
    row.p = row.se > 0.0 ? t_p_two_sided(row.t, df) : 0.0;
    row.ci_lower = row.estimate - q * row.se;
    row.ci_upper = row.estimate + q * row.se;
    table.rows.push_back(std::move(row));
  }
  return table;
}

void check_rank(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                const std::vector<std::string>& names) {
  const Eigen::Index k = qr.cols();
  const Eigen::Index rank = qr.rank();
  if (rank >= k) return;
  // Pivot order puts the independent columns first; the remainder form a
  // dependent set.
  const auto& perm = qr.colsPermutation().indices();
  std::vector<std::string> dependent;
  for (Eigen::Index i = rank; i < k; ++i)
    dependent.push_back(names[static_cast<std::size_t>(perm(i))]);
  std::sort(dependent.begin(), dependent.end());
  std::string msg = "design is rank deficient; dependent column set: ";
  for (std::size_t i = 0; i < dependent.size(); ++i) {
    if (i) msg += ", ";
    msg += "\"" + dependent[i] + "\"";
  }
  throw Error(ErrorCode::RankDeficient, msg);
}

}  // namespace

OlsFit ols_fit(const DesignMatrix& d, bool intercept) {
  const Eigen::Index n = d.X.rows();
  const Eigen::Index k = d.X.cols();
  const Eigen::Index params = k + (intercept ? 1 : 0);
  if (n <= params)
    throw Error(ErrorCode::InsufficientRows,
                "ols needs n > " + std::to_string(params) + ", got n=" +
                    std::to_string(n));

  Eigen::MatrixXd A(n, params);
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(params));
  if (intercept) {
    A.col(0).setOnes();
    names.push_back("(Intercept)");
  }
  for (Eigen::Index j = 0; j < k; ++j) {
    A.col(j + (intercept ? 1 : 0)) = d.X.col(j);
    names.push_back(d.names[static_cast<std::size_t>(j)]);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  check_rank(qr, names);
  const Eigen::VectorXd beta = qr.solve(d.y);

  OlsFit fit;
  fit.fitted = A * beta;
  fit.residuals = d.y - fit.fitted;
  const double rss = fit.residuals.squaredNorm();
  const long df = static_cast<long>(n - params);
  fit.sigma2 = rss / static_cast<double>(df);
  const double tss = intercept
                         ? (d.y.array() - d.y.mean()).square().sum()
                         : d.y.squaredNorm();
  fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 0.0;
  fit.coefficients = classical_inference(A, beta, names, df, fit.sigma2);
  return fit;
}

namespace {

struct GroupIndex {
  std::vector<std::string> labels;       // distinct, first-occurrence order
  std::vector<Eigen::Index> of_row;      // row -> group ordinal
  std::vector<Eigen::Index> counts;
};

GroupIndex index_countries(const std::vector<PanelKey>& keys) {
  GroupIndex g;
  std::map<std::string, Eigen::Index> seen;
  for (const auto& key : keys) {
    auto it = seen.find(key.country);
    if (it == seen.end()) {
      it = seen.emplace(key.country,
                        static_cast<Eigen::Index>(g.labels.size())).first;
      g.labels.push_back(key.country);
      g.counts.push_back(0);
    }
    g.of_row.push_back(it->second);
    ++g.counts[static_cast<std::size_t>(it->second)];
  }
  return g;
}

struct YearIndex {
  std::vector<int> labels;
  std::vector<Eigen::Index> of_row;
  std::vector<Eigen::Index> counts;
};

YearIndex index_years(const std::vector<PanelKey>& keys) {
  YearIndex g;
  std::map<int, Eigen::Index> seen;
  for (const auto& key : keys) {
    auto it = seen.find(key.year);
    if (it == seen.end()) {
      it = seen.emplace(key.year,
                        static_cast<Eigen::Index>(g.labels.size())).first;
      g.labels.push_back(key.year);
      g.counts.push_back(0);
    }
    g.of_row.push_back(it->second);
    ++g.counts[static_cast<std::size_t>(it->second)];
  }
  return g;
}

// Removes group means in place, one pass.
template <typename Index>
void demean_by(Eigen::MatrixXd& M, const Index& g) {
  Eigen::MatrixXd means =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.labels.size()),
                            M.cols());
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    means.row(g.of_row[static_cast<std::size_t>(i)]) += M.row(i);
  for (Eigen::Index gi = 0; gi < means.rows(); ++gi)
    means.row(gi) /= static_cast<double>(g.counts[static_cast<std::size_t>(gi)]);
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    M.row(i) -= means.row(g.of_row[static_cast<std::size_t>(i)]);
}

}  // namespace

FeFit fe_fit(const DesignMatrix& d, const FeOptions& options) {
  if (!options.country_effects)
    throw Error(ErrorCode::ConfigError,
                "fixed-effects fit requires country effects");
  const Eigen::Index n = d.X.rows();
  const Eigen::Index k = d.X.cols();
  if (static_cast<std::size_t>(n) != d.keys.size())
    throw Error(ErrorCode::Internal, "design keys out of sync");

  const GroupIndex groups = index_countries(d.keys);
  const Eigen::Index G = static_cast<Eigen::Index>(groups.labels.size());
  if (G < 2)
    throw Error(ErrorCode::SingleGroup,
                "fixed effects need at least 2 countries");
  for (std::size_t gi = 0; gi < groups.labels.size(); ++gi)
    if (groups.counts[gi] < 2)
      throw Error(ErrorCode::InsufficientRows,
                  "country \"" + groups.labels[gi] +
                      "\" has fewer than 2 rows");

  const YearIndex years = index_years(d.keys);
  const Eigen::Index T = static_cast<Eigen::Index>(years.labels.size());

  // Within transformation. One-way needs a single pass; the two-way
  // transformation alternates until both margins are zero (exact in two
  // passes on balanced panels).
  Eigen::MatrixXd W(n, k + 1);
  W.col(0) = d.y;
  W.rightCols(k) = d.X;
  if (!options.year_effects) {
    demean_by(W, groups);
  } else {
    const double scale = std::max(1.0, W.cwiseAbs().maxCoeff());
    for (int pass = 0; pass < 200; ++pass) {
      Eigen::MatrixXd before = W;
      demean_by(W, groups);
      demean_by(W, years);
      if ((W - before).cwiseAbs().maxCoeff() <= 1e-13 * scale) break;
    }
  }

  // A regressor with zero within-variance cannot be identified.
  for (Eigen::Index j = 0; j < k; ++j) {
    const double within = W.col(j + 1).squaredNorm();
    const double raw = std::max(d.X.col(j).squaredNorm(), 1.0);
    if (within <= 1e-18 * raw)
      throw Error(ErrorCode::ConstantWithinGroups,
                  "regressor \"" + d.names[static_cast<std::size_t>(j)] +
                      "\" is constant within groups");
  }

  const long df = static_cast<long>(n - k - G - (options.year_effects
                                                     ? (T - 1)
                                                     : 0));
  if (df <= 0)
    throw Error(ErrorCode::InsufficientRows,
                "no residual degrees of freedom after fixed effects");

  const Eigen::VectorXd y_w = W.col(0);
  const Eigen::MatrixXd x_w = W.rightCols(k);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x_w);
  check_rank(qr, d.names);
  const Eigen::VectorXd beta = qr.solve(y_w);

  FeFit fit;
  fit.residuals = y_w - x_w * beta;
  const double rss = fit.residuals.squaredNorm();
  fit.sigma2 = rss / static_cast<double>(df);
  const double tss_w = y_w.squaredNorm();
  fit.within_r_squared = tss_w > 0.0 ? 1.0 - rss / tss_w : 0.0;
  fit.coefficients =
      classical_inference(x_w, beta, d.names, df, fit.sigma2);

  // Group intercepts: mean(y_i) - mean(x_i) . beta. Year intercepts are the
  // same quantity per year, centered on the grand value.
  Eigen::VectorXd y_means = Eigen::VectorXd::Zero(G);
  Eigen::MatrixXd x_means = Eigen::MatrixXd::Zero(G, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index gi = groups.of_row[static_cast<std::size_t>(i)];
    y_means(gi) += d.y(i);
    x_means.row(gi) += d.X.row(i);
  }
  for (Eigen::Index gi = 0; gi < G; ++gi) {
    const double c = static_cast<double>(groups.counts[static_cast<std::size_t>(gi)]);
    y_means(gi) /= c;
    x_means.row(gi) /= c;
    fit.group_intercepts[groups.labels[static_cast<std::size_t>(gi)]] =
        y_means(gi) - x_means.row(gi).dot(beta);
  }

  if (options.year_effects) {
    const double grand = d.y.mean() - d.X.colwise().mean().dot(beta);
    std::map<int, double> year_fx;
    Eigen::VectorXd yt = Eigen::VectorXd::Zero(T);
    Eigen::MatrixXd xt = Eigen::MatrixXd::Zero(T, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::Index ti = years.of_row[static_cast<std::size_t>(i)];
      yt(ti) += d.y(i);
      xt.row(ti) += d.X.row(i);
    }
    for (Eigen::Index ti = 0; ti < T; ++ti) {
      const double c = static_cast<double>(years.counts[static_cast<std::size_t>(ti)]);
      year_fx[years.labels[static_cast<std::size_t>(ti)]] =
          yt(ti) / c - (xt.row(ti) / c).dot(beta) - grand;
    }
    fit.year_intercepts = std::move(year_fx);
  }
  return fit;
}

CoefficientTable mark_significance(CoefficientTable table, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(ErrorCode::ConfigError, "alpha must lie in (0, 1)");
  table.alpha = alpha;
  for (auto& row : table.rows) row.significant = row.p <= alpha;
  return table;
}

}  // namespace panelkit
