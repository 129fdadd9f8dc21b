#include "panelkit/indices.hpp"

#include <algorithm>
#include <cmath>

namespace panelkit {

ExternalOpenness build_external_openness(
    const Panel& panel, const std::vector<std::string>& variable_names,
    double warn_share_below) {
  if (variable_names.size() < 2)
    throw Error(ErrorCode::ConfigError,
                "openness block needs at least 2 variables");
  const VariableBlock block = extract_block(panel, variable_names);

  ExternalOpenness out;
  out.model = fit_pca(block);
  out.pc1 = scores(out.model, block, 1);
  out.pc1_share = out.model.var_explained(0);
  out.low_share_warning = out.pc1_share < warn_share_below;
  out.dropped_rows = block.dropped_rows;
  return out;
}

AdpiComponents adpi_components_from_panel(const Panel& panel,
                                          const AdpiColumnMapping& mapping) {
  const VariableBlock block = extract_block(
      panel, {mapping.oda, mapping.gdp, mapping.revenue, mapping.tax});

  AdpiComponents out;
  out.keys = block.keys;
  const Eigen::Index n = block.X.rows();
  out.oda_gdp.resize(n);
  out.oda_revenue.resize(n);
  out.tax_gdp.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double oda = block.X(i, 0);
    const double gdp = block.X(i, 1);
    const double revenue = block.X(i, 2);
    const double tax = block.X(i, 3);
    if (gdp == 0.0)
      throw Error(ErrorCode::ZeroDenominator,
                  "zero GDP for (" + block.keys[static_cast<std::size_t>(i)]
                          .country + ", " +
                      std::to_string(block.keys[static_cast<std::size_t>(i)]
                                         .year) + ")");
    if (revenue == 0.0)
      throw Error(ErrorCode::ZeroDenominator,
                  "zero government revenue for (" +
                      block.keys[static_cast<std::size_t>(i)].country + ", " +
                      std::to_string(block.keys[static_cast<std::size_t>(i)]
                                         .year) + ")");
    out.oda_gdp(i) = oda / gdp;
    out.oda_revenue(i) = oda / revenue;
    out.tax_gdp(i) = tax / gdp;
  }
  return out;
}

AdpiSeries build_adpi(const AdpiComponents& components, AdpiVariant variant) {
  const Eigen::Index n = components.oda_gdp.size();
  if (n < 3)
    throw Error(ErrorCode::TooShort, "adpi needs at least 3 observations");

  // Oriented z-scores: higher always means greater aid dependence, so the
  // tax component is sign-reversed.
  const Eigen::VectorXd z1 = standardize(components.oda_gdp, false).first;
  const Eigen::VectorXd z2 = standardize(components.oda_revenue, false).first;
  const Eigen::VectorXd z3 = standardize(components.tax_gdp, true).first;

  AdpiSeries series;
  series.keys = components.keys;
  series.variant = variant;

  if (variant == AdpiVariant::MeanOfZ) {
    series.values = (z1 + z2 + z3) / 3.0;
    series.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return series;
  }

  Eigen::MatrixXd Z(n, 3);
  Z.col(0) = z1;
  Z.col(1) = z2;
  Z.col(2) = z3;
  const Eigen::MatrixXd R = (Z.transpose() * Z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(R);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::Internal, "eigendecomposition failed to converge");
  Eigen::VectorXd w = solver.eigenvectors().col(2);  // largest eigenvalue

  // Anchor the orientation on a positive oda_gdp weight; fall back to the
  // largest-magnitude entry if that weight is numerically zero.
  if (std::abs(w(0)) > 1e-12) {
    if (w(0) < 0.0) w = -w;
  } else {
    Eigen::Index arg = 0;
    w.cwiseAbs().maxCoeff(&arg);
    if (w(arg) < 0.0) w = -w;
  }

  Eigen::VectorXd raw = Z * w;
  const double sd = standardize(raw, false).second.sd;
  series.values = raw / sd;
  series.weights = {w(0), w(1), w(2)};
  return series;
}

std::vector<RankedEntry> rank_adpi(const AdpiSeries& series, int year) {
  std::vector<RankedEntry> entries;
  for (std::size_t i = 0; i < series.keys.size(); ++i)
    if (series.keys[i].year == year)
      entries.push_back({0, series.keys[i].country,
                         series.values(static_cast<Eigen::Index>(i))});
  if (entries.empty())
    throw Error(ErrorCode::UnknownYear,
                "year " + std::to_string(year) + " not present in the series");

  std::sort(entries.begin(), entries.end(),
            [](const RankedEntry& a, const RankedEntry& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.country < b.country;
            });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].value == entries[i - 1].value)
      entries[i].rank = entries[i - 1].rank;
    else
      entries[i].rank = static_cast<int>(i) + 1;
  }
  return entries;
}

}  // namespace panelkit
