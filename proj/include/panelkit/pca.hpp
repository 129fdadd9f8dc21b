#ifndef PANELKIT_PCA_HPP
#define PANELKIT_PCA_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "panelkit/panel.hpp"

namespace panelkit {

/// Correlation-basis PCA. Loadings columns are unit-norm eigenvectors in
/// descending eigenvalue order, each oriented so its largest-magnitude entry
/// is positive (eigenvectors are sign-ambiguous). Immutable once fitted.
struct PcaModel {
  std::vector<std::string> names;
  Eigen::MatrixXd loadings;      // p x p, columns are components
  Eigen::VectorXd eigenvalues;   // descending, clamped at 0
  Eigen::VectorXd var_explained; // eigenvalue / sum(eigenvalues)
  std::vector<Standardization> standardization;
};

/// Per-row scores on one component (1-based index).
struct ScoreSeries {
  std::vector<PanelKey> keys;
  int component = 1;
  Eigen::VectorXd values;
};

struct ScreeRow {
  int component = 1;
  double eigenvalue = 0.0;
  double var_explained = 0.0;
  double cumulative = 0.0;
};

struct BiplotRecord {
  std::string kind;  // "arrow" or "point"
  std::string label;
  double dim1 = 0.0;
  double dim2 = 0.0;
};

enum class BiplotPoints { PerRow, PerCountry };

/// Eigendecomposition of the sample correlation matrix of the block.
/// Requires n > p >= 2 and positive sd in every column. Eigenvalue ties are
/// ordered by first occurrence in the solver output; repeated eigenvalues
/// are allowed.
PcaModel fit_pca(const VariableBlock& block);

/// Standardizes rows with the model's parameters and projects them onto the
/// given component. Rows used to fit the model yield a zero-mean series.
/// Block columns may be in any order; they are matched by name.
ScoreSeries scores(const PcaModel& model, const VariableBlock& block,
                   int component);

std::vector<ScreeRow> scree_data(const PcaModel& model);

/// Variable arrows are loadings on components 1-2 scaled by sqrt(eigenvalue);
/// points are row scores on components 1-2, optionally averaged per country.
std::vector<BiplotRecord> biplot_data(const PcaModel& model,
                                      const VariableBlock& block,
                                      BiplotPoints points);

}  // namespace panelkit

#endif
