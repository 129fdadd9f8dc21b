#include "panelkit/render.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <set>
#include <sstream>

#include "panelkit/detail/strings.hpp"
#include "panelkit/errors.hpp"

namespace panelkit {

namespace {

using nlohmann::json;
using detail::format_full;
using detail::format_table_number;

json finite_or_text(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return value;
}

json coefficient_table_json(const CoefficientTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"variable", row.name},
                    {"estimate", row.estimate},
                    {"std_error", row.se},
                    {"t_statistic", row.t},
                    {"p_value", row.p},
                    {"ci_lower", row.ci_lower},
                    {"ci_upper", row.ci_upper},
                    {"significant", row.significant}});
  }
  return {{"alpha", table.alpha},
          {"coefficients", rows},
          {"df_resid", table.df_resid},
          {"n", table.n}};
}

json payload_json(const StagePayload& payload) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return json(nullptr);
        } else if constexpr (std::is_same_v<T, OlsStagePayload>) {
          json out = coefficient_table_json(p.fit.coefficients);
          out["r_squared"] = p.fit.r_squared;
          out["sigma2"] = p.fit.sigma2;
          out["rows_used"] = p.rows_used;
          out["rows_dropped"] = p.rows_dropped;
          return out;
        } else if constexpr (std::is_same_v<T, DiagnosticsStagePayload>) {
          json matrix = json::array();
          for (Eigen::Index i = 0; i < p.correlation.R.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < p.correlation.R.cols(); ++j)
              row.push_back(p.correlation.R(i, j));
            matrix.push_back(std::move(row));
          }
          json pairs = json::array();
          for (const auto& pair : p.high_pairs)
            pairs.push_back({{"variable_a", pair.name_a},
                             {"variable_b", pair.name_b},
                             {"r", pair.r}});
          json vif_entries = json::array();
          for (const auto& entry : p.vif.entries)
            vif_entries.push_back({{"variable", entry.name},
                                   {"vif", finite_or_text(entry.vif)},
                                   {"flagged", entry.flagged}});
          return {{"correlation",
                   {{"names", p.correlation.names}, {"matrix", matrix}}},
                  {"cutoff", p.cutoff},
                  {"high_pairs", pairs},
                  {"vif",
                   {{"threshold", p.vif.threshold}, {"entries", vif_entries}}}};
        } else if constexpr (std::is_same_v<T, PcaStagePayload>) {
          json loadings = json::array();
          for (Eigen::Index v = 0; v < p.model.loadings.rows(); ++v) {
            json row = json::array();
            for (Eigen::Index c = 0; c < p.model.loadings.cols(); ++c)
              row.push_back(p.model.loadings(v, c));
            loadings.push_back(std::move(row));
          }
          json scores = json::array();
          for (std::size_t i = 0; i < p.pc1.keys.size(); ++i)
            scores.push_back(
                {{"country", p.pc1.keys[i].country},
                 {"year", p.pc1.keys[i].year},
                 {"value", p.pc1.values(static_cast<Eigen::Index>(i))}});
          return {{"variables", p.model.names},
                  {"loadings", loadings},
                  {"eigenvalues",
                   std::vector<double>(p.model.eigenvalues.begin(),
                                       p.model.eigenvalues.end())},
                  {"var_explained",
                   std::vector<double>(p.model.var_explained.begin(),
                                       p.model.var_explained.end())},
                  {"pc1_share", p.pc1_share},
                  {"low_share_warning", p.low_share_warning},
                  {"pc1_scores", scores},
                  {"rows_dropped", p.rows_dropped}};
        } else if constexpr (std::is_same_v<T, FeStagePayload>) {
          json out = coefficient_table_json(p.fit.coefficients);
          out["sigma2"] = p.fit.sigma2;
          out["within_r_squared"] = p.fit.within_r_squared;
          out["rows_used"] = p.rows_used;
          out["year_effects"] = p.year_effects;
          json groups = json::object();
          for (const auto& [country, value] : p.fit.group_intercepts)
            groups[country] = value;
          out["group_intercepts"] = groups;
          if (p.fit.year_intercepts) {
            json years = json::object();
            for (const auto& [year, value] : *p.fit.year_intercepts)
              years[std::to_string(year)] = value;
            out["year_intercepts"] = years;
          }
          return out;
        } else if constexpr (std::is_same_v<T, RidgeCvStagePayload>) {
          json points = json::array();
          for (std::size_t i = 0; i < p.curve.grid.size(); ++i)
            points.push_back({{"lambda", p.curve.grid[i]},
                              {"mse_mean", p.curve.mse_mean[i]},
                              {"mse_se", p.curve.mse_se[i]}});
          return {{"fold_count", p.curve.fold_count},
                  {"seed", p.curve.seed},
                  {"lambda_min", p.curve.lambda_min},
                  {"lambda_1se", p.curve.lambda_1se},
                  {"points", points}};
        } else if constexpr (std::is_same_v<T, RidgeStagePayload>) {
          json rows = json::array();
          rows.push_back({{"variable", "(Intercept)"},
                          {"estimate", p.fit.intercept}});
          for (std::size_t j = 0; j < p.fit.names.size(); ++j)
            rows.push_back(
                {{"variable", p.fit.names[j]},
                 {"estimate",
                  p.fit.coefficients(static_cast<Eigen::Index>(j))},
                 {"standardized_estimate",
                  p.fit.standardized(static_cast<Eigen::Index>(j))}});
          return {{"lambda", p.fit.lambda},
                  {"lambda_from_cv", p.lambda_from_cv},
                  {"coefficients", rows}};
        } else if constexpr (std::is_same_v<T, AdpiStagePayload>) {
          json series = json::array();
          for (std::size_t i = 0; i < p.series.keys.size(); ++i)
            series.push_back(
                {{"country", p.series.keys[i].country},
                 {"year", p.series.keys[i].year},
                 {"value", p.series.values(static_cast<Eigen::Index>(i))}});
          json ranking = json::array();
          for (const auto& entry : p.latest_ranking)
            ranking.push_back({{"rank", entry.rank},
                               {"country", entry.country},
                               {"adpi", entry.value}});
          return {{"variant", p.series.variant == AdpiVariant::MeanOfZ
                                  ? "mean_of_z"
                                  : "pca_weighted"},
                  {"weights",
                   {{"oda_gdp", p.series.weights[0]},
                    {"oda_revenue", p.series.weights[1]},
                    {"tax", p.series.weights[2]}}},
                  {"series", series},
                  {"ranking", {{"year", p.latest_year}, {"entries", ranking}}}};
        } else if constexpr (std::is_same_v<T, IngestStagePayload>) {
          json missing = json::object();
          for (const auto& [name, count] : p.missing_by_variable)
            missing[name] = count;
          return {{"rows", p.rows},
                  {"countries", p.countries},
                  {"year_min", p.year_min},
                  {"year_max", p.year_max},
                  {"missing_by_variable", missing}};
        }
      },
      payload);
}

json report_json_tree(const Report& report) {
  json stages = json::array();
  for (const auto& stage : report.stages) {
    json record = {{"name", stage.name},
                   {"status", stage_status_name(stage.status)},
                   {"variables", stage.variables}};
    if (!stage.message.empty()) record["message"] = stage.message;
    if (!stage.error_code.empty()) record["error_code"] = stage.error_code;
    if (stage.status == StageStatus::Ok)
      record["result"] = payload_json(stage.payload);
    stages.push_back(std::move(record));
  }
  return {{"schema_version", 1}, {"stages", stages}};
}

// ---------------------------------------------------------------------------
// text rendering

class TextTable {
 public:
  explicit TextTable(std::vector<std::string> headers)
      : headers_(std::move(headers)) {}

  void add_row(std::vector<std::string> cells) {
    rows_.push_back(std::move(cells));
  }

  void print(std::ostringstream& out) const {
    std::vector<std::size_t> widths(headers_.size());
    for (std::size_t c = 0; c < headers_.size(); ++c)
      widths[c] = headers_[c].size();
    for (const auto& row : rows_)
      for (std::size_t c = 0; c < row.size(); ++c)
        widths[c] = std::max(widths[c], row[c].size());

    auto emit = [&](const std::vector<std::string>& cells, bool header) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) out << "  ";
        // first column left-aligned, the rest right-aligned
        if (c == 0) {
          out << cells[c];
          out << std::string(widths[c] - cells[c].size(), ' ');
        } else {
          out << std::string(widths[c] - cells[c].size(), ' ');
          out << cells[c];
        }
      }
      out << '\n';
      if (header) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < widths.size(); ++c)
          total += widths[c] + (c ? 2 : 0);
        out << std::string(total, '-') << '\n';
      }
    };
    emit(headers_, true);
    for (const auto& row : rows_) emit(row, false);
  }

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

void coefficient_table_text(const CoefficientTable& table,
                            std::ostringstream& out) {
  TextTable t({"variable", "estimate", "std.error", "t-stat", "p-value",
               "ci.lower", "ci.upper", "signif"});
  for (const auto& row : table.rows)
    t.add_row({row.name, format_table_number(row.estimate),
               format_table_number(row.se), format_table_number(row.t),
               format_table_number(row.p), format_table_number(row.ci_lower),
               format_table_number(row.ci_upper),
               row.significant ? "*" : ""});
  t.print(out);
}

void payload_text(const StagePayload& payload, std::ostringstream& out) {
  std::visit(
      [&out](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, OlsStagePayload>) {
          out << "n = " << p.rows_used << " (dropped " << p.rows_dropped
              << ")   df_resid = " << p.fit.coefficients.df_resid
              << "   R^2 = " << format_table_number(p.fit.r_squared) << '\n';
          coefficient_table_text(p.fit.coefficients, out);
        } else if constexpr (std::is_same_v<T, DiagnosticsStagePayload>) {
          out << "high-correlation pairs (|r| >= "
              << format_table_number(p.cutoff) << "):\n";
          if (p.high_pairs.empty()) {
            out << "  none\n";
          } else {
            TextTable t({"variable_a", "variable_b", "r"});
            for (const auto& pair : p.high_pairs)
              t.add_row({pair.name_a, pair.name_b,
                         format_table_number(pair.r)});
            t.print(out);
          }
          out << "variance inflation factors (threshold "
              << format_table_number(p.vif.threshold) << "):\n";
          TextTable t({"variable", "vif", "flagged"});
          for (const auto& entry : p.vif.entries)
            t.add_row({entry.name, format_table_number(entry.vif),
                       entry.flagged ? "*" : ""});
          t.print(out);
        } else if constexpr (std::is_same_v<T, PcaStagePayload>) {
          out << "PC1 share = " << format_table_number(100.0 * p.pc1_share)
              << "%";
          if (p.low_share_warning)
            out << "   warning: PC1 explains too little joint variance for a "
                   "single-index reading";
          out << '\n';
          TextTable t({"component", "eigenvalue", "share", "cumulative"});
          double cumulative = 0.0;
          for (Eigen::Index c = 0; c < p.model.eigenvalues.size(); ++c) {
            cumulative += p.model.var_explained(c);
            t.add_row({"PC" + std::to_string(c + 1),
                       format_table_number(p.model.eigenvalues(c)),
                       format_table_number(p.model.var_explained(c)),
                       format_table_number(cumulative)});
          }
          t.print(out);
          std::vector<std::string> headers = {"variable"};
          for (Eigen::Index c = 0; c < p.model.loadings.cols(); ++c)
            headers.push_back("PC" + std::to_string(c + 1));
          TextTable loadings(headers);
          for (std::size_t v = 0; v < p.model.names.size(); ++v) {
            std::vector<std::string> cells = {p.model.names[v]};
            for (Eigen::Index c = 0; c < p.model.loadings.cols(); ++c)
              cells.push_back(format_table_number(
                  p.model.loadings(static_cast<Eigen::Index>(v), c)));
            loadings.add_row(std::move(cells));
          }
          loadings.print(out);
        } else if constexpr (std::is_same_v<T, FeStagePayload>) {
          out << "n = " << p.rows_used
              << "   df_resid = " << p.fit.coefficients.df_resid
              << "   within R^2 = "
              << format_table_number(p.fit.within_r_squared)
              << (p.year_effects ? "   (country + year effects)"
                                 : "   (country effects)")
              << '\n';
          coefficient_table_text(p.fit.coefficients, out);
          TextTable t({"country", "intercept"});
          for (const auto& [country, value] : p.fit.group_intercepts)
            t.add_row({country, format_table_number(value)});
          t.print(out);
          if (p.fit.year_intercepts) {
            TextTable y({"year", "effect"});
            for (const auto& [year, value] : *p.fit.year_intercepts)
              y.add_row({std::to_string(year), format_table_number(value)});
            y.print(out);
          }
        } else if constexpr (std::is_same_v<T, RidgeCvStagePayload>) {
          out << "folds = " << p.curve.fold_count
              << "   seed = " << p.curve.seed << "   lambda_min = "
              << format_full(p.curve.lambda_min)
              << "   lambda_1se = " << format_full(p.curve.lambda_1se) << '\n';
          out << "grid of " << p.curve.grid.size()
              << " lambdas; per-lambda curve in the CSV sidecar\n";
        } else if constexpr (std::is_same_v<T, RidgeStagePayload>) {
          out << "lambda = " << format_full(p.fit.lambda)
              << (p.lambda_from_cv ? " (lambda_min from CV)" : " (fixed)")
              << '\n';
          TextTable t({"variable", "estimate", "standardized"});
          t.add_row({"(Intercept)", format_table_number(p.fit.intercept), ""});
          for (std::size_t j = 0; j < p.fit.names.size(); ++j)
            t.add_row({p.fit.names[j],
                       format_table_number(
                           p.fit.coefficients(static_cast<Eigen::Index>(j))),
                       format_table_number(
                           p.fit.standardized(static_cast<Eigen::Index>(j)))});
          t.print(out);
        } else if constexpr (std::is_same_v<T, AdpiStagePayload>) {
          out << "variant = "
              << (p.series.variant == AdpiVariant::MeanOfZ ? "mean_of_z"
                                                           : "pca_weighted")
              << "   weights (oda_gdp, oda_revenue, tax) = ("
              << format_table_number(p.series.weights[0]) << ", "
              << format_table_number(p.series.weights[1]) << ", "
              << format_table_number(p.series.weights[2]) << ")\n";
          out << "ranking for " << p.latest_year << ":\n";
          TextTable t({"rank", "country", "adpi"});
          for (const auto& entry : p.latest_ranking)
            t.add_row({std::to_string(entry.rank), entry.country,
                       format_table_number(entry.value)});
          t.print(out);
        } else if constexpr (std::is_same_v<T, IngestStagePayload>) {
          out << "rows = " << p.rows << "   countries = " << p.countries
              << "   years = " << p.year_min << ".." << p.year_max << '\n';
          TextTable t({"variable", "missing"});
          for (const auto& [name, count] : p.missing_by_variable)
            t.add_row({name, std::to_string(count)});
          t.print(out);
        }
      },
      payload);
}

// ---------------------------------------------------------------------------
// CSV rendering

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

void write_file(const std::filesystem::path& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::IoError, "cannot write file: " + path.string());
  out << content;
  if (!out)
    throw Error(ErrorCode::IoError, "write failed: " + path.string());
  written.push_back(path.string());
}

std::string coefficient_table_csv(const CoefficientTable& table) {
  std::ostringstream out;
  out << "variable,estimate,std_error,t_statistic,p_value,ci_lower,ci_upper,"
         "significant\n";
  for (const auto& row : table.rows)
    out << csv_escape(row.name) << ',' << format_full(row.estimate) << ','
        << format_full(row.se) << ',' << format_full(row.t) << ','
        << format_full(row.p) << ',' << format_full(row.ci_lower) << ','
        << format_full(row.ci_upper) << ','
        << (row.significant ? "true" : "false") << '\n';
  return out.str();
}

struct CsvOutputs {
  // stage csv name -> content
  std::vector<std::pair<std::string, std::string>> stage_files;
  std::vector<std::pair<std::string, std::string>> plot_files;
};

void collect_stage_csvs(const StageRecord& stage, CsvOutputs& outputs) {
  if (stage.status != StageStatus::Ok) return;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, OlsStagePayload>) {
          const char* file =
              stage.name == "pooled_ols_full" ? "01_ols_full.csv"
                                              : "04_ols_pc1.csv";
          outputs.stage_files.emplace_back(
              file, coefficient_table_csv(p.fit.coefficients));
        } else if constexpr (std::is_same_v<T, DiagnosticsStagePayload>) {
          std::ostringstream pairs;
          pairs << "variable_a,variable_b,r\n";
          for (const auto& pair : p.high_pairs)
            pairs << csv_escape(pair.name_a) << ',' << csv_escape(pair.name_b)
                  << ',' << format_full(pair.r) << '\n';
          outputs.stage_files.emplace_back("02_diagnostics.csv", pairs.str());

          std::ostringstream heat;
          heat << "row_name,col_name,r\n";
          for (Eigen::Index i = 0; i < p.correlation.R.rows(); ++i)
            for (Eigen::Index j = 0; j < p.correlation.R.cols(); ++j)
              heat << csv_escape(
                          p.correlation.names[static_cast<std::size_t>(i)])
                   << ','
                   << csv_escape(
                          p.correlation.names[static_cast<std::size_t>(j)])
                   << ',' << format_full(p.correlation.R(i, j)) << '\n';
          outputs.plot_files.emplace_back("correlation_heatmap.csv",
                                          heat.str());

          std::ostringstream vifs;
          vifs << "name,vif,flagged\n";
          for (const auto& entry : p.vif.entries)
            vifs << csv_escape(entry.name) << ',' << format_full(entry.vif)
                 << ',' << (entry.flagged ? "true" : "false") << '\n';
          outputs.plot_files.emplace_back("vif.csv", vifs.str());
        } else if constexpr (std::is_same_v<T, PcaStagePayload>) {
          std::ostringstream loadings;
          loadings << "variable";
          for (Eigen::Index c = 0; c < p.model.loadings.cols(); ++c)
            loadings << ",PC" << (c + 1);
          loadings << '\n';
          for (std::size_t v = 0; v < p.model.names.size(); ++v) {
            loadings << csv_escape(p.model.names[v]);
            for (Eigen::Index c = 0; c < p.model.loadings.cols(); ++c)
              loadings << ','
                       << format_full(p.model.loadings(
                              static_cast<Eigen::Index>(v), c));
            loadings << '\n';
          }
          outputs.stage_files.emplace_back("03_pca.csv", loadings.str());

          std::ostringstream scree;
          scree << "component,eigenvalue,share,cumulative\n";
          double cumulative = 0.0;
          for (Eigen::Index c = 0; c < p.model.eigenvalues.size(); ++c) {
            cumulative += p.model.var_explained(c);
            scree << (c + 1) << ',' << format_full(p.model.eigenvalues(c))
                  << ',' << format_full(p.model.var_explained(c)) << ','
                  << format_full(cumulative) << '\n';
          }
          outputs.plot_files.emplace_back("scree.csv", scree.str());

          std::ostringstream biplot;
          biplot << "kind,label,dim1,dim2\n";
          for (const auto& record : p.biplot)
            biplot << record.kind << ',' << csv_escape(record.label) << ','
                   << format_full(record.dim1) << ','
                   << format_full(record.dim2) << '\n';
          outputs.plot_files.emplace_back("biplot.csv", biplot.str());
        } else if constexpr (std::is_same_v<T, FeStagePayload>) {
          outputs.stage_files.emplace_back(
              "05_fixed_effects.csv",
              coefficient_table_csv(p.fit.coefficients));
        } else if constexpr (std::is_same_v<T, RidgeCvStagePayload>) {
          std::ostringstream curve;
          curve << "lambda,log_lambda,mse_mean,mse_se\n";
          for (std::size_t i = 0; i < p.curve.grid.size(); ++i)
            curve << format_full(p.curve.grid[i]) << ','
                  << format_full(std::log(p.curve.grid[i])) << ','
                  << format_full(p.curve.mse_mean[i]) << ','
                  << format_full(p.curve.mse_se[i]) << '\n';
          outputs.stage_files.emplace_back("06_ridge_cv.csv", curve.str());
          outputs.plot_files.emplace_back("cv_curve.csv", curve.str());
        } else if constexpr (std::is_same_v<T, RidgeStagePayload>) {
          std::ostringstream rows;
          rows << "variable,estimate,standardized_estimate\n";
          rows << "(Intercept)," << format_full(p.fit.intercept) << ",\n";
          for (std::size_t j = 0; j < p.fit.names.size(); ++j)
            rows << csv_escape(p.fit.names[j]) << ','
                 << format_full(
                        p.fit.coefficients(static_cast<Eigen::Index>(j)))
                 << ','
                 << format_full(
                        p.fit.standardized(static_cast<Eigen::Index>(j)))
                 << '\n';
          outputs.stage_files.emplace_back("07_ridge.csv", rows.str());
        } else if constexpr (std::is_same_v<T, AdpiStagePayload>) {
          std::ostringstream series;
          series << "country,year,adpi,variant,weight_oda_gdp,weight_oda_rev,"
                    "weight_tax\n";
          const char* variant =
              p.series.variant == AdpiVariant::MeanOfZ ? "mean_of_z"
                                                       : "pca_weighted";
          for (std::size_t i = 0; i < p.series.keys.size(); ++i)
            series << csv_escape(p.series.keys[i].country) << ','
                   << p.series.keys[i].year << ','
                   << format_full(
                          p.series.values(static_cast<Eigen::Index>(i)))
                   << ',' << variant << ','
                   << format_full(p.series.weights[0]) << ','
                   << format_full(p.series.weights[1]) << ','
                   << format_full(p.series.weights[2]) << '\n';
          outputs.stage_files.emplace_back("08_adpi.csv", series.str());

          std::ostringstream ranking;
          ranking << "year,rank,country,adpi\n";
          for (const auto& entry : p.latest_ranking)
            ranking << p.latest_year << ',' << entry.rank << ','
                    << csv_escape(entry.country) << ','
                    << format_full(entry.value) << '\n';
          outputs.stage_files.emplace_back("08_adpi_ranking.csv",
                                           ranking.str());
        } else if constexpr (std::is_same_v<T, IngestStagePayload>) {
          std::ostringstream missing;
          missing << "variable,missing\n";
          for (const auto& [name, count] : p.missing_by_variable)
            missing << csv_escape(name) << ',' << count << '\n';
          outputs.stage_files.emplace_back("00_ingest.csv", missing.str());
        }
      },
      stage.payload);
}

}  // namespace

std::string render_report_json(const Report& report) {
  return report_json_tree(report).dump(2) + "\n";
}

std::string render_report_text(const Report& report) {
  std::ostringstream out;
  for (std::size_t i = 0; i < report.stages.size(); ++i) {
    const StageRecord& stage = report.stages[i];
    out << std::string(78, '=') << '\n';
    out << "stage " << (i + 1) << "/" << report.stages.size() << ": "
        << stage.name << "   [" << stage_status_name(stage.status) << "]\n";
    if (!stage.variables.empty()) {
      out << "variables: ";
      for (std::size_t v = 0; v < stage.variables.size(); ++v) {
        if (v) out << ", ";
        out << stage.variables[v];
      }
      out << '\n';
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", stage.duration_ms);
    out << "duration: " << buf << " ms\n";
    out << std::string(78, '-') << '\n';
    if (stage.status == StageStatus::Ok) {
      payload_text(stage.payload, out);
    } else {
      out << (stage.status == StageStatus::Skipped ? "skipped: " : "error: ")
          << stage.message << '\n';
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> write_report(
    const Report& report, const std::string& out_dir,
    const std::vector<std::string>& formats) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw Error(ErrorCode::IoError,
                "cannot create output dir: " + out_dir + ": " + ec.message());

  const std::set<std::string> want(formats.begin(), formats.end());
  std::vector<std::string> written;

  if (want.count("json"))
    write_file(fs::path(out_dir) / "report.json", render_report_json(report),
               written);
  if (want.count("text"))
    write_file(fs::path(out_dir) / "report.txt", render_report_text(report),
               written);
  if (want.count("csv")) {
    CsvOutputs outputs;
    for (const auto& stage : report.stages) collect_stage_csvs(stage, outputs);
    for (const auto& [name, content] : outputs.stage_files)
      write_file(fs::path(out_dir) / name, content, written);
    if (!outputs.plot_files.empty()) {
      const fs::path plotdir = fs::path(out_dir) / "plotdata";
      fs::create_directories(plotdir, ec);
      if (ec)
        throw Error(ErrorCode::IoError,
                    "cannot create plotdata dir: " + plotdir.string());
      for (const auto& [name, content] : outputs.plot_files)
        write_file(plotdir / name, content, written);
    }
  }
  return written;
}

}  // namespace panelkit
