#include "panelkit/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "panelkit/detail/strings.hpp"
#include "panelkit/errors.hpp"

namespace panelkit {

namespace {

double parse_real(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end || begin == end)
    throw Error(ErrorCode::ConfigError,
                key + ": cannot parse \"" + value + "\" as a number");
  return out;
}

long long parse_integer(const std::string& key, const std::string& value) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw Error(ErrorCode::ConfigError,
                key + ": cannot parse \"" + value + "\" as an integer");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(ErrorCode::ConfigError,
              key + ": cannot parse \"" + value + "\" as a boolean");
}

void set_adpi_field(PipelineConfig& config, const std::string& key,
                    const std::string& value) {
  if (!config.adpi) config.adpi = AdpiColumnMapping{};
  if (key == "adpi_oda")
    config.adpi->oda = value;
  else if (key == "adpi_gdp")
    config.adpi->gdp = value;
  else if (key == "adpi_revenue")
    config.adpi->revenue = value;
  else
    config.adpi->tax = value;
}

}  // namespace

void apply_config_override(PipelineConfig& config, const std::string& key,
                           const std::string& value) {
  if (key == "input") {
    config.input = value;
  } else if (key == "country_col") {
    config.country_col = value;
  } else if (key == "year_col") {
    config.year_col = value;
  } else if (key == "response") {
    config.response = value;
  } else if (key == "regressors") {
    config.regressors = detail::split_list(value);
  } else if (key == "openness_block") {
    config.openness_block = detail::split_list(value);
  } else if (key == "corr_cutoff") {
    config.corr_cutoff = parse_real(key, value);
  } else if (key == "vif_threshold") {
    config.vif_threshold = parse_real(key, value);
  } else if (key == "lambda_grid") {
    const auto parts = detail::split_list(value, ':');
    if (parts.size() != 3)
      throw Error(ErrorCode::ConfigError,
                  "lambda_grid: expected \"min:max:count\", got \"" + value +
                      "\"");
    config.lambda_grid.min = parse_real("lambda_grid.min", parts[0]);
    config.lambda_grid.max = parse_real("lambda_grid.max", parts[1]);
    config.lambda_grid.count =
        static_cast<int>(parse_integer("lambda_grid.count", parts[2]));
  } else if (key == "lambda") {
    config.fixed_lambda = parse_real(key, value);
  } else if (key == "cv_folds") {
    config.cv_folds = static_cast<int>(parse_integer(key, value));
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
  } else if (key == "alpha") {
    config.alpha = parse_real(key, value);
  } else if (key == "year_effects") {
    config.year_effects = parse_bool(key, value);
  } else if (key == "adpi_oda" || key == "adpi_gdp" || key == "adpi_revenue" ||
             key == "adpi_tax") {
    set_adpi_field(config, key, value);
  } else if (key == "adpi_variant") {
    if (value == "mean_of_z")
      config.adpi_variant = AdpiVariant::MeanOfZ;
    else if (value == "pca_weighted")
      config.adpi_variant = AdpiVariant::PcaWeighted;
    else
      throw Error(ErrorCode::ConfigError,
                  "adpi_variant: expected mean_of_z or pca_weighted, got \"" +
                      value + "\"");
  } else if (key == "output_dir") {
    config.output_dir = value;
  } else if (key == "formats") {
    config.formats = detail::split_list(value);
  } else {
    throw Error(ErrorCode::ConfigError, "unknown config key: \"" + key + "\"");
  }
}

PipelineConfig parse_config_text(const std::string& text) {
  PipelineConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    const std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError,
                  "config line " + std::to_string(line_no) +
                      ": expected \"key = value\"");
    const std::string key = detail::trim(trimmed.substr(0, eq));
    const std::string value = detail::trim(trimmed.substr(eq + 1));
    apply_config_override(config, key, value);
  }
  return config;
}

PipelineConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void validate_config(const PipelineConfig& config) {
  if (!(config.corr_cutoff > 0.0 && config.corr_cutoff < 1.0))
    throw Error(ErrorCode::ConfigError,
                "corr_cutoff: must lie in (0, 1)");
  if (!(config.vif_threshold > 0.0))
    throw Error(ErrorCode::ConfigError, "vif_threshold: must be positive");
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw Error(ErrorCode::ConfigError, "alpha: must lie in (0, 1)");
  if (config.cv_folds < 2)
    throw Error(ErrorCode::ConfigError, "cv_folds: must be at least 2");
  if (config.fixed_lambda && !(*config.fixed_lambda >= 0.0))
    throw Error(ErrorCode::ConfigError, "lambda: must be >= 0");
  if (!(config.lambda_grid.min > 0.0) ||
      !(config.lambda_grid.max > config.lambda_grid.min) ||
      config.lambda_grid.count < 1)
    throw Error(ErrorCode::ConfigError,
                "lambda_grid: needs 0 < min < max and count >= 1");
  if (config.adpi) {
    if (config.adpi->oda.empty() || config.adpi->gdp.empty() ||
        config.adpi->revenue.empty() || config.adpi->tax.empty())
      throw Error(ErrorCode::ConfigError,
                  "adpi mapping: adpi_oda, adpi_gdp, adpi_revenue and "
                  "adpi_tax must all be set");
  }
  const std::set<std::string> known_formats = {"json", "csv", "text"};
  if (config.formats.empty())
    throw Error(ErrorCode::ConfigError, "formats: at least one required");
  for (const auto& f : config.formats)
    if (!known_formats.count(f))
      throw Error(ErrorCode::ConfigError, "formats: unknown format \"" + f +
                                              "\"");
}

std::string resolve_output_dir(const PipelineConfig& config) {
  if (!config.output_dir.empty()) return config.output_dir;
  const char* env = std::getenv("PANELKIT_OUTPUT_DIR");
  return env ? env : "";
}

}  // namespace panelkit
