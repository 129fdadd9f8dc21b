#ifndef PANELKIT_PANEL_HPP
#define PANELKIT_PANEL_HPP

#include <Eigen/Dense>
#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "panelkit/errors.hpp"

namespace panelkit {

/// (country, year) identifier of one panel observation.
struct PanelKey {
  std::string country;
  int year = 0;

  auto operator<=>(const PanelKey&) const = default;
};

enum class VarRole { Response, Regressor, RawComponent, Id };

struct VariableSpec {
  std::string name;
  VarRole role = VarRole::Regressor;
  std::string unit;
  bool sign_flip = false;
};

/// Standardization parameters for one variable (sample sd, divisor n-1).
struct Standardization {
  double mean = 0.0;
  double sd = 1.0;
  bool sign_flip = false;
};

/// Long-format country-year panel. Immutable after construction; operations
/// that "modify" a panel return a new one. Safe to share across concurrent
/// readers.
class Panel {
 public:
  Panel() = default;  // empty panel

  /// Validates key uniqueness, name uniqueness and cell shape.
  static Panel create(std::vector<VariableSpec> variables,
                      std::vector<PanelKey> keys,
                      std::vector<std::vector<std::optional<double>>> cells,
                      std::string country_column = "country",
                      std::string year_column = "year");

  const std::vector<VariableSpec>& variables() const { return variables_; }
  const std::vector<PanelKey>& keys() const { return keys_; }
  std::size_t row_count() const { return keys_.size(); }
  std::size_t variable_count() const { return variables_.size(); }

  const std::string& country_column() const { return country_column_; }
  const std::string& year_column() const { return year_column_; }

  /// Index of a registered variable, or -1 when absent.
  int variable_index(const std::string& name) const;

  /// Throws UnknownVariable when the name is not registered.
  std::size_t require_variable(const std::string& name) const;

  std::optional<double> cell(std::size_t row, std::size_t var) const {
    return cells_[row][var];
  }

  std::size_t missing_count(std::size_t var) const;

  bool same_contents(const Panel& other) const;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<PanelKey> keys_;
  std::vector<std::vector<std::optional<double>>> cells_;
  std::map<PanelKey, std::size_t> row_index_;
  std::string country_column_;
  std::string year_column_;
};

/// Response + regressor matrix extracted from a panel after the missing-data
/// policy (listwise deletion). X excludes the intercept column.
struct DesignMatrix {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> names;  // column names of X
  std::vector<PanelKey> keys;      // surviving rows, input order
  std::size_t dropped_rows = 0;
  std::string response_name;
};

/// Regressor-only block (no response), listwise-complete on its columns.
struct VariableBlock {
  Eigen::MatrixXd X;
  std::vector<std::string> names;
  std::vector<PanelKey> keys;
  std::size_t dropped_rows = 0;
};

/// Loads a long-format CSV: header row, country column, year column, then
/// variables. Empty cell or literal "NA" means missing. Columns not listed
/// in the schema are ignored.
Panel load_panel(std::istream& in, const std::vector<VariableSpec>& schema,
                 const std::string& country_col, const std::string& year_col);

Panel load_panel_file(const std::string& path,
                      const std::vector<VariableSpec>& schema,
                      const std::string& country_col,
                      const std::string& year_col);

/// Serializes in the same dialect load_panel reads (missing -> empty cell),
/// full precision; load_panel(panel_to_csv(p), p.variables(), ...) round-trips.
std::string panel_to_csv(const Panel& panel);

/// Listwise deletion over {response} ∪ regressors. Row order of survivors
/// follows panel order. Rank checks are deferred to the estimators.
DesignMatrix extract_design(const Panel& panel, const std::string& response,
                            const std::vector<std::string>& regressors);

/// Listwise deletion over the given columns only.
VariableBlock extract_block(const Panel& panel,
                            const std::vector<std::string>& names);

/// z-scores with sample sd (divisor n-1); negated after standardization when
/// sign_flip is set.
std::pair<Eigen::VectorXd, Standardization> standardize(
    const Eigen::VectorXd& values, bool sign_flip = false);

/// Returns a new panel with one more registered variable; rows without a
/// supplied value carry missing. Keys absent from the panel are ignored.
Panel append_variable(const Panel& panel, const std::string& name,
                      const std::map<PanelKey, double>& keyed_values,
                      VarRole role = VarRole::Regressor);

}  // namespace panelkit

#endif
