#ifndef PANELKIT_INDICES_HPP
#define PANELKIT_INDICES_HPP

#include <array>
#include <string>
#include <vector>

#include "panelkit/panel.hpp"
#include "panelkit/pca.hpp"

namespace panelkit {

inline const std::vector<std::string> kDefaultOpennessBlock = {
    "CurrentAccount", "Exports", "FDI", "Imports"};

/// Raw ratio components of the aid-dependence index, keyed by country-year.
struct AdpiComponents {
  std::vector<PanelKey> keys;
  Eigen::VectorXd oda_gdp;
  Eigen::VectorXd oda_revenue;
  Eigen::VectorXd tax_gdp;
};

enum class AdpiVariant { MeanOfZ, PcaWeighted };

struct AdpiSeries {
  std::vector<PanelKey> keys;
  Eigen::VectorXd values;
  AdpiVariant variant = AdpiVariant::MeanOfZ;
  std::array<double, 3> weights{};  // oda_gdp, oda_revenue, tax (oriented)
};

struct RankedEntry {
  int rank = 1;  // competition ranking: ties share, next rank skips
  std::string country;
  double value = 0.0;
};

/// PC1 scores of the openness block plus the fitted model; emits a warning
/// flag when PC1 explains less than the share threshold and a single-index
/// reading is not supported by the data.
struct ExternalOpenness {
  ScoreSeries pc1;
  PcaModel model;
  double pc1_share = 0.0;
  bool low_share_warning = false;
  std::size_t dropped_rows = 0;
};

ExternalOpenness build_external_openness(
    const Panel& panel,
    const std::vector<std::string>& variable_names = kDefaultOpennessBlock,
    double warn_share_below = 0.4);

/// Column names holding the raw inputs; ratios are formed at ingestion.
struct AdpiColumnMapping {
  std::string oda;
  std::string gdp;
  std::string revenue;
  std::string tax;
};

/// Builds ODA/GDP, ODA/revenue and tax/GDP from panel columns, listwise over
/// the four. Denominators must be nonzero.
AdpiComponents adpi_components_from_panel(const Panel& panel,
                                          const AdpiColumnMapping& mapping);

/// Standardizes the three components over the pooled panel, sign-reverses
/// the tax z-score, then averages (mean_of_z) or projects onto PC1 of the
/// 3x3 correlation matrix of the oriented z-scores (pca_weighted, scores
/// rescaled to unit variance, weights oriented so oda_gdp is positive).
AdpiSeries build_adpi(const AdpiComponents& components, AdpiVariant variant);

/// Countries of one year ordered most aid-dependent first.
std::vector<RankedEntry> rank_adpi(const AdpiSeries& series, int year);

}  // namespace panelkit

#endif
