#include "panelkit/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "panelkit/detail/strings.hpp"

namespace panelkit {

Panel Panel::create(std::vector<VariableSpec> variables,
                    std::vector<PanelKey> keys,
                    std::vector<std::vector<std::optional<double>>> cells,
                    std::string country_column, std::string year_column) {
  if (keys.size() != cells.size())
    throw Error(ErrorCode::Internal, "panel rows and cells differ in length");

  std::set<std::string> names;
  for (const auto& v : variables) {
    if (!names.insert(v.name).second)
      throw Error(ErrorCode::NameCollision,
                  "variable registered twice: \"" + v.name + "\"");
  }

  Panel p;
  p.variables_ = std::move(variables);
  p.keys_ = std::move(keys);
  p.cells_ = std::move(cells);
  p.country_column_ = std::move(country_column);
  p.year_column_ = std::move(year_column);

  for (std::size_t i = 0; i < p.keys_.size(); ++i) {
    if (p.cells_[i].size() != p.variables_.size())
      throw Error(ErrorCode::Internal, "row cell count mismatch");
    auto [it, inserted] = p.row_index_.emplace(p.keys_[i], i);
    if (!inserted)
      throw Error(ErrorCode::DuplicateKey,
                  "duplicate (country, year) key: (" + p.keys_[i].country +
                      ", " + std::to_string(p.keys_[i].year) + ")");
  }
  return p;
}

int Panel::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i].name == name) return static_cast<int>(i);
  return -1;
}

std::size_t Panel::require_variable(const std::string& name) const {
  int idx = variable_index(name);
  if (idx < 0)
    throw Error(ErrorCode::UnknownVariable,
                "unknown variable: \"" + name + "\"");
  return static_cast<std::size_t>(idx);
}

std::size_t Panel::missing_count(std::size_t var) const {
  std::size_t n = 0;
  for (const auto& row : cells_)
    if (!row[var].has_value()) ++n;
  return n;
}

bool Panel::same_contents(const Panel& other) const {
  if (keys_ != other.keys_) return false;
  if (variables_.size() != other.variables_.size()) return false;
  for (std::size_t v = 0; v < variables_.size(); ++v)
    if (variables_[v].name != other.variables_[v].name) return false;
  for (std::size_t r = 0; r < keys_.size(); ++r)
    for (std::size_t v = 0; v < variables_.size(); ++v) {
      const auto& a = cells_[r][v];
      const auto& b = other.cells_[r][v];
      if (a.has_value() != b.has_value()) return false;
      if (a.has_value() && *a != *b) return false;
    }
  return true;
}

namespace {

using detail::split_csv_line;

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && begin != end;
}

bool parse_int(const std::string& text, int& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && begin != end;
}

}  // namespace

Panel load_panel(std::istream& in, const std::vector<VariableSpec>& schema,
                 const std::string& country_col, const std::string& year_col) {
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorCode::ParseError, "empty CSV: missing header row");
  const std::vector<std::string> header_raw = split_csv_line(line);
  std::vector<std::string> header;
  header.reserve(header_raw.size());
  for (const auto& h : header_raw) header.push_back(detail::trim(h));

  auto column_of = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  };

  int country_idx = column_of(country_col);
  if (country_idx < 0)
    throw Error(ErrorCode::MissingColumn,
                "id column \"" + country_col + "\" absent from header");
  int year_idx = column_of(year_col);
  if (year_idx < 0)
    throw Error(ErrorCode::MissingColumn,
                "id column \"" + year_col + "\" absent from header");

  std::vector<int> var_cols;
  var_cols.reserve(schema.size());
  for (const auto& spec : schema) {
    int idx = column_of(spec.name);
    if (idx < 0)
      throw Error(ErrorCode::MissingColumn,
                  "column \"" + spec.name + "\" absent from header");
    var_cols.push_back(idx);
  }

  std::vector<PanelKey> keys;
  std::vector<std::vector<std::optional<double>>> cells;
  std::size_t line_no = 1;  // header is line 1
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    auto field_at = [&](int idx) -> std::string {
      return idx < static_cast<int>(fields.size())
                 ? detail::trim(fields[static_cast<std::size_t>(idx)])
                 : std::string();
    };

    PanelKey key;
    key.country = field_at(country_idx);
    const std::string year_text = field_at(year_idx);
    if (!parse_int(year_text, key.year))
      throw Error(ErrorCode::ParseError,
                  "parse error at row " + std::to_string(line_no) +
                      ", column \"" + year_col + "\": \"" + year_text +
                      "\" is not an integer year");

    std::vector<std::optional<double>> row(schema.size());
    for (std::size_t v = 0; v < schema.size(); ++v) {
      const std::string text = field_at(var_cols[v]);
      if (text.empty() || text == "NA") continue;
      double value = 0.0;
      if (!parse_double(text, value))
        throw Error(ErrorCode::ParseError,
                    "parse error at row " + std::to_string(line_no) +
                        ", column \"" + schema[v].name + "\": cannot parse \"" +
                        text + "\" as a number");
      row[v] = value;
    }
    keys.push_back(std::move(key));
    cells.push_back(std::move(row));
  }

  return Panel::create(schema, std::move(keys), std::move(cells), country_col,
                       year_col);
}

Panel load_panel_file(const std::string& path,
                      const std::vector<VariableSpec>& schema,
                      const std::string& country_col,
                      const std::string& year_col) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open input file: " + path);
  return load_panel(in, schema, country_col, year_col);
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string panel_to_csv(const Panel& panel) {
  std::ostringstream out;
  out << csv_escape(panel.country_column()) << ','
      << csv_escape(panel.year_column());
  for (const auto& v : panel.variables()) out << ',' << csv_escape(v.name);
  out << '\n';
  for (std::size_t r = 0; r < panel.row_count(); ++r) {
    out << csv_escape(panel.keys()[r].country) << ',' << panel.keys()[r].year;
    for (std::size_t v = 0; v < panel.variable_count(); ++v) {
      out << ',';
      const auto cell = panel.cell(r, v);
      if (cell.has_value()) out << detail::format_full(*cell);
    }
    out << '\n';
  }
  return out.str();
}

DesignMatrix extract_design(const Panel& panel, const std::string& response,
                            const std::vector<std::string>& regressors) {
  const std::size_t y_idx = panel.require_variable(response);
  std::vector<std::size_t> x_idx;
  x_idx.reserve(regressors.size());
  for (const auto& name : regressors) {
    if (name == response)
      throw Error(ErrorCode::ConfigError,
                  "response \"" + response + "\" also listed as a regressor");
    x_idx.push_back(panel.require_variable(name));
  }

  std::vector<std::size_t> survivors;
  for (std::size_t r = 0; r < panel.row_count(); ++r) {
    bool complete = panel.cell(r, y_idx).has_value();
    for (std::size_t j = 0; complete && j < x_idx.size(); ++j)
      complete = panel.cell(r, x_idx[j]).has_value();
    if (complete) survivors.push_back(r);
  }
  if (survivors.empty())
    throw Error(ErrorCode::EmptyDesign,
                "all rows dropped by listwise deletion");

  DesignMatrix d;
  d.response_name = response;
  d.names = regressors;
  d.dropped_rows = panel.row_count() - survivors.size();
  d.y.resize(static_cast<Eigen::Index>(survivors.size()));
  d.X.resize(static_cast<Eigen::Index>(survivors.size()),
             static_cast<Eigen::Index>(x_idx.size()));
  d.keys.reserve(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const std::size_t r = survivors[i];
    d.keys.push_back(panel.keys()[r]);
    d.y(static_cast<Eigen::Index>(i)) = *panel.cell(r, y_idx);
    for (std::size_t j = 0; j < x_idx.size(); ++j)
      d.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          *panel.cell(r, x_idx[j]);
  }
  return d;
}

VariableBlock extract_block(const Panel& panel,
                            const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& name : names) idx.push_back(panel.require_variable(name));

  std::vector<std::size_t> survivors;
  for (std::size_t r = 0; r < panel.row_count(); ++r) {
    bool complete = true;
    for (std::size_t j = 0; complete && j < idx.size(); ++j)
      complete = panel.cell(r, idx[j]).has_value();
    if (complete) survivors.push_back(r);
  }
  if (survivors.empty())
    throw Error(ErrorCode::EmptyDesign,
                "all rows dropped by listwise deletion");

  VariableBlock b;
  b.names = names;
  b.dropped_rows = panel.row_count() - survivors.size();
  b.X.resize(static_cast<Eigen::Index>(survivors.size()),
             static_cast<Eigen::Index>(idx.size()));
  b.keys.reserve(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) {
    const std::size_t r = survivors[i];
    b.keys.push_back(panel.keys()[r]);
    for (std::size_t j = 0; j < idx.size(); ++j)
      b.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          *panel.cell(r, idx[j]);
  }
  return b;
}

std::pair<Eigen::VectorXd, Standardization> standardize(
    const Eigen::VectorXd& values, bool sign_flip) {
  const Eigen::Index n = values.size();
  if (n < 2)
    throw Error(ErrorCode::TooShort,
                "standardize needs at least 2 values, got " +
                    std::to_string(n));
  Standardization params;
  params.mean = values.mean();
  const double ss = (values.array() - params.mean).square().sum();
  params.sd = std::sqrt(ss / static_cast<double>(n - 1));
  params.sign_flip = sign_flip;
  if (!(params.sd > 0.0))
    throw Error(ErrorCode::ZeroVariance, "constant input has zero variance");
  Eigen::VectorXd z = (values.array() - params.mean) / params.sd;
  if (sign_flip) z = -z;
  return {std::move(z), params};
}

Panel append_variable(const Panel& panel, const std::string& name,
                      const std::map<PanelKey, double>& keyed_values,
                      VarRole role) {
  if (panel.variable_index(name) >= 0)
    throw Error(ErrorCode::NameCollision,
                "variable already registered: \"" + name + "\"");

  std::vector<VariableSpec> variables = panel.variables();
  VariableSpec spec;
  spec.name = name;
  spec.role = role;
  variables.push_back(spec);

  std::vector<std::vector<std::optional<double>>> cells;
  cells.reserve(panel.row_count());
  for (std::size_t r = 0; r < panel.row_count(); ++r) {
    std::vector<std::optional<double>> row;
    row.reserve(panel.variable_count() + 1);
    for (std::size_t v = 0; v < panel.variable_count(); ++v)
      row.push_back(panel.cell(r, v));
    auto it = keyed_values.find(panel.keys()[r]);
    row.push_back(it == keyed_values.end()
                      ? std::optional<double>()
                      : std::optional<double>(it->second));
    cells.push_back(std::move(row));
  }

  return Panel::create(std::move(variables), panel.keys(), std::move(cells),
                       panel.country_column(), panel.year_column());
}

}  // namespace panelkit
