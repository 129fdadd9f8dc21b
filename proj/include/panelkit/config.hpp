#ifndef PANELKIT_CONFIG_HPP
#define PANELKIT_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "panelkit/indices.hpp"

namespace panelkit {

struct LambdaGridSpec {
  double min = 1e-3;
  double max = 1e6;
  int count = 100;
};

/// Flat key-value run configuration; see parse_config_file for the file
/// schema. Every field can also be set through apply_config_override, which
/// is what the CLI flags map onto.
struct PipelineConfig {
  std::string input;
  std::string country_col = "country";
  std::string year_col = "year";
  std::string response;
  std::vector<std::string> regressors;  // empty: all non-id CSV columns
  std::vector<std::string> openness_block = kDefaultOpennessBlock;
  double corr_cutoff = 0.70;
  double vif_threshold = 5.0;
  LambdaGridSpec lambda_grid;
  std::optional<double> fixed_lambda;  // set: ridge CV is skipped
  int cv_folds = 10;
  std::optional<std::uint64_t> seed;  // mandatory when CV runs
  double alpha = 0.10;
  bool year_effects = false;
  std::optional<AdpiColumnMapping> adpi;
  AdpiVariant adpi_variant = AdpiVariant::MeanOfZ;
  std::string output_dir;
  std::vector<std::string> formats = {"json", "csv", "text"};
};

/// Lines of "key = value"; '#' lines are comments, blank lines ignored.
/// Lists are comma-separated; lambda_grid is "min:max:count".
PipelineConfig parse_config_file(const std::string& path);
PipelineConfig parse_config_text(const std::string& text);

/// Applies one key/value pair (same keys as the file schema); throws
/// ConfigError on unknown keys or malformed values.
void apply_config_override(PipelineConfig& config, const std::string& key,
                           const std::string& value);

/// Structural checks shared by every run mode: ranges, formats, grid shape.
void validate_config(const PipelineConfig& config);

/// output_dir from the config, falling back to $PANELKIT_OUTPUT_DIR; empty
/// when neither is set.
std::string resolve_output_dir(const PipelineConfig& config);

}  // namespace panelkit

#endif
