#ifndef PANELKIT_DIAGNOSTICS_HPP
#define PANELKIT_DIAGNOSTICS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "panelkit/panel.hpp"

namespace panelkit {

struct CorrelationMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd R;  // symmetric, unit diagonal
};

struct CorrelationPair {
  std::string name_a;
  std::string name_b;
  double r = 0.0;
};

struct VifEntry {
  std::string name;
  double vif = 1.0;  // +infinity when the column is perfectly collinear
  bool flagged = false;
};

struct VifTable {
  std::vector<VifEntry> entries;
  double threshold = 5.0;
};

/// Pearson correlations of all column pairs. Columns must have positive
/// sample sd and n >= 3. Pure function, safe for concurrent invocation.
CorrelationMatrix correlation_matrix(const Eigen::MatrixXd& X,
                                     const std::vector<std::string>& names);

/// Unordered pairs with |r| >= cutoff, each once, sorted by |r| descending
/// (ties by pair position for determinism). cutoff must lie in (0, 1).
std::vector<CorrelationPair> high_correlation_pairs(
    const CorrelationMatrix& corr, double cutoff = 0.70);

/// vif_j = 1 / (1 - R²_j) from the OLS of column j on all other columns plus
/// an intercept. Perfectly collinear columns report +infinity and are
/// flagged; the diagnostic displays the pathology rather than aborting.
VifTable vif(const Eigen::MatrixXd& X, const std::vector<std::string>& names,
             double threshold = 5.0);

}  // namespace panelkit

#endif
