#include "panelkit/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>

#include "panelkit/detail/strings.hpp"

namespace panelkit {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void check_output_dir_writable(const std::string& out_dir) {
  namespace fs = std::filesystem;
  if (out_dir.empty())
    throw Error(ErrorCode::ConfigError,
                "output_dir: not set (flag, config key, or "
                "PANELKIT_OUTPUT_DIR)");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw Error(ErrorCode::IoError,
                "output_dir: cannot create " + out_dir + ": " + ec.message());
  const fs::path probe = fs::path(out_dir) / ".panelkit_probe";
  {
    std::ofstream out(probe);
    if (!out)
      throw Error(ErrorCode::IoError,
                  "output_dir: not writable: " + out_dir);
  }
  fs::remove(probe, ec);
}

// Which column groups a run mode actually consumes; only those are
// registered (and therefore required to exist in the CSV header).
struct SchemaNeeds {
  bool regression = false;  // response + regressor list
  bool openness = false;
  bool adpi = false;
};

SchemaNeeds needs_of(const std::string& stage) {
  SchemaNeeds needs;
  if (stage == "pipeline" || stage == "ingest-check") {
    needs.regression = true;
    needs.openness = true;
    needs.adpi = true;
  } else if (stage == "ols" || stage == "diagnose") {
    needs.regression = true;
  } else if (stage == "pca") {
    needs.openness = true;
  } else if (stage == "fe" || stage == "ridge") {
    needs.regression = true;
    needs.openness = true;
  } else if (stage == "adpi") {
    needs.adpi = true;
  }
  return needs;
}

std::vector<VariableSpec> build_schema(const PipelineConfig& config,
                                       const SchemaNeeds& needs) {
  std::vector<VariableSpec> schema;
  std::set<std::string> seen;
  auto add = [&](const std::string& name, VarRole role) {
    if (name.empty() || seen.count(name)) return;
    seen.insert(name);
    VariableSpec spec;
    spec.name = name;
    spec.role = role;
    schema.push_back(std::move(spec));
  };
  if (needs.regression) {
    add(config.response, VarRole::Response);
    for (const auto& name : config.regressors) add(name, VarRole::Regressor);
  }
  if (needs.openness)
    for (const auto& name : config.openness_block)
      add(name, VarRole::Regressor);
  if (needs.adpi && config.adpi) {
    add(config.adpi->oda, VarRole::RawComponent);
    add(config.adpi->gdp, VarRole::RawComponent);
    add(config.adpi->revenue, VarRole::RawComponent);
    add(config.adpi->tax, VarRole::RawComponent);
  }
  return schema;
}

// When no regressor list is configured, every non-id CSV column except the
// response becomes a regressor.
std::vector<std::string> header_columns(const std::string& path,
                                        const PipelineConfig& config) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open input file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw Error(ErrorCode::ParseError, "empty CSV: missing header row");
  std::vector<std::string> out;
  for (const auto& raw : detail::split_csv_line(line)) {
    const std::string c = detail::trim(raw);
    if (!c.empty() && c != config.country_col && c != config.year_col &&
        c != config.response)
      out.push_back(c);
  }
  return out;
}

struct RunContext {
  PipelineConfig config;
  Panel panel;
  std::vector<std::string> stage1_regressors;
  std::vector<std::string> stage4_regressors;
  bool pca_done = false;
  std::optional<Panel> augmented;   // panel with PC1 spliced in
  std::optional<double> cv_lambda;  // lambda_min once CV has run
};

RunContext make_context(const PipelineConfig& config_in,
                        const SchemaNeeds& needs) {
  PipelineConfig config = config_in;
  validate_config(config);
  if (config.input.empty())
    throw Error(ErrorCode::ConfigError, "input: not set");
  if (needs.regression && config.regressors.empty())
    config.regressors = header_columns(config.input, config);

  RunContext ctx;
  ctx.config = config;
  ctx.panel = load_panel_file(config.input, build_schema(config, needs),
                              config.country_col, config.year_col);
  ctx.stage1_regressors = config.regressors;
  return ctx;
}

// Stage bodies. Each returns the payload and records the variable list it
// actually consumed.

OlsStagePayload run_ols_full(RunContext& ctx, std::vector<std::string>& vars) {
  if (ctx.config.response.empty())
    throw Error(ErrorCode::ConfigError, "response: not set");
  vars = ctx.stage1_regressors;
  const DesignMatrix d =
      extract_design(ctx.panel, ctx.config.response, ctx.stage1_regressors);
  OlsStagePayload payload;
  payload.fit = ols_fit(d, true);
  payload.fit.coefficients =
      mark_significance(payload.fit.coefficients, ctx.config.alpha);
  payload.rows_used = d.keys.size();
  payload.rows_dropped = d.dropped_rows;
  return payload;
}

DiagnosticsStagePayload run_diagnostics(RunContext& ctx,
                                        std::vector<std::string>& vars) {
  if (ctx.config.response.empty())
    throw Error(ErrorCode::ConfigError, "response: not set");
  vars = ctx.stage1_regressors;
  const DesignMatrix d =
      extract_design(ctx.panel, ctx.config.response, ctx.stage1_regressors);
  DiagnosticsStagePayload payload;
  payload.correlation = correlation_matrix(d.X, d.names);
  payload.cutoff = ctx.config.corr_cutoff;
  payload.high_pairs =
      high_correlation_pairs(payload.correlation, ctx.config.corr_cutoff);
  payload.vif = vif(d.X, d.names, ctx.config.vif_threshold);
  return payload;
}

PcaStagePayload run_pca_stage(RunContext& ctx,
                              std::vector<std::string>& vars) {
  vars = ctx.config.openness_block;
  const ExternalOpenness eo =
      build_external_openness(ctx.panel, ctx.config.openness_block);

  PcaStagePayload payload;
  payload.model = eo.model;
  payload.pc1 = eo.pc1;
  payload.pc1_share = eo.pc1_share;
  payload.low_share_warning = eo.low_share_warning;
  payload.rows_dropped = eo.dropped_rows;
  const VariableBlock block = extract_block(ctx.panel, ctx.config.openness_block);
  payload.biplot = biplot_data(eo.model, block, BiplotPoints::PerCountry);

  // Splice PC1 into the panel and drop the raw openness block from the
  // regressor set used by every later estimation stage.
  std::map<PanelKey, double> keyed;
  for (std::size_t i = 0; i < eo.pc1.keys.size(); ++i)
    keyed[eo.pc1.keys[i]] = eo.pc1.values(static_cast<Eigen::Index>(i));
  ctx.augmented = append_variable(ctx.panel, kPc1VariableName, keyed);

  ctx.stage4_regressors.clear();
  ctx.stage4_regressors.push_back(kPc1VariableName);
  for (const auto& name : ctx.stage1_regressors)
    if (std::find(ctx.config.openness_block.begin(),
                  ctx.config.openness_block.end(),
                  name) == ctx.config.openness_block.end())
      ctx.stage4_regressors.push_back(name);
  ctx.pca_done = true;
  return payload;
}

void require_pca(RunContext& ctx) {
  if (!ctx.pca_done) {
    std::vector<std::string> ignored;
    run_pca_stage(ctx, ignored);
  }
}

DesignMatrix stage4_design(RunContext& ctx) {
  if (ctx.config.response.empty())
    throw Error(ErrorCode::ConfigError, "response: not set");
  return extract_design(*ctx.augmented, ctx.config.response,
                        ctx.stage4_regressors);
}

OlsStagePayload run_ols_pc1(RunContext& ctx, std::vector<std::string>& vars) {
  require_pca(ctx);
  vars = ctx.stage4_regressors;
  const DesignMatrix d = stage4_design(ctx);
  OlsStagePayload payload;
  payload.fit = ols_fit(d, true);
  payload.fit.coefficients =
      mark_significance(payload.fit.coefficients, ctx.config.alpha);
  payload.rows_used = d.keys.size();
  payload.rows_dropped = d.dropped_rows;
  return payload;
}

FeStagePayload run_fe(RunContext& ctx, std::vector<std::string>& vars) {
  require_pca(ctx);
  vars = ctx.stage4_regressors;
  const DesignMatrix d = stage4_design(ctx);
  FeOptions options;
  options.year_effects = ctx.config.year_effects;
  FeStagePayload payload;
  payload.fit = fe_fit(d, options);
  payload.fit.coefficients =
      mark_significance(payload.fit.coefficients, ctx.config.alpha);
  payload.rows_used = d.keys.size();
  payload.year_effects = ctx.config.year_effects;
  return payload;
}

RidgeCvStagePayload run_ridge_cv(RunContext& ctx,
                                 std::vector<std::string>& vars) {
  require_pca(ctx);
  vars = ctx.stage4_regressors;
  if (!ctx.config.seed)
    throw Error(ErrorCode::ConfigError,
                "seed: mandatory when cross-validation runs");
  const DesignMatrix d = stage4_design(ctx);
  const std::vector<double> grid = default_lambda_grid(
      ctx.config.lambda_grid.min, ctx.config.lambda_grid.max,
      ctx.config.lambda_grid.count);
  RidgeCvStagePayload payload;
  payload.curve = ridge_cv(d, grid, ctx.config.cv_folds, *ctx.config.seed);
  ctx.cv_lambda = payload.curve.lambda_min;
  return payload;
}

RidgeStagePayload run_ridge_final(RunContext& ctx,
                                  std::vector<std::string>& vars) {
  require_pca(ctx);
  vars = ctx.stage4_regressors;
  double lambda = 0.0;
  bool from_cv = false;
  if (ctx.config.fixed_lambda) {
    lambda = *ctx.config.fixed_lambda;
  } else if (ctx.cv_lambda) {
    lambda = *ctx.cv_lambda;
    from_cv = true;
  } else {
    throw Error(ErrorCode::ConfigError,
                "ridge: no lambda available (set lambda= or run CV first)");
  }
  const DesignMatrix d = stage4_design(ctx);
  RidgeStagePayload payload;
  payload.fit = ridge_fit(d, lambda);
  payload.lambda_from_cv = from_cv;
  return payload;
}

AdpiStagePayload run_adpi(RunContext& ctx, std::vector<std::string>& vars) {
  if (!ctx.config.adpi)
    throw Error(ErrorCode::ConfigError, "adpi: no column mapping configured");
  vars = {ctx.config.adpi->oda, ctx.config.adpi->gdp, ctx.config.adpi->revenue,
          ctx.config.adpi->tax};
  const AdpiComponents components =
      adpi_components_from_panel(ctx.panel, *ctx.config.adpi);
  AdpiStagePayload payload;
  payload.series = build_adpi(components, ctx.config.adpi_variant);
  int latest = payload.series.keys.front().year;
  for (const auto& key : payload.series.keys)
    latest = std::max(latest, key.year);
  payload.latest_year = latest;
  payload.latest_ranking = rank_adpi(payload.series, latest);
  return payload;
}

IngestStagePayload run_ingest_check(RunContext& ctx,
                                    std::vector<std::string>& vars) {
  IngestStagePayload payload;
  payload.rows = ctx.panel.row_count();
  std::set<std::string> countries;
  int ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& key : ctx.panel.keys()) {
    countries.insert(key.country);
    if (first) {
      ymin = ymax = key.year;
      first = false;
    } else {
      ymin = std::min(ymin, key.year);
      ymax = std::max(ymax, key.year);
    }
  }
  payload.countries = countries.size();
  payload.year_min = ymin;
  payload.year_max = ymax;
  for (std::size_t v = 0; v < ctx.panel.variable_count(); ++v) {
    payload.missing_by_variable.emplace_back(ctx.panel.variables()[v].name,
                                             ctx.panel.missing_count(v));
    vars.push_back(ctx.panel.variables()[v].name);
  }
  return payload;
}

template <typename Fn>
StageRecord run_recorded(const std::string& name, RunContext& ctx, Fn&& body) {
  StageRecord record;
  record.name = name;
  const auto start = Clock::now();
  try {
    record.payload = body(ctx, record.variables);
    record.status = StageStatus::Ok;
  } catch (const Error& e) {
    record.status = StageStatus::Error;
    record.message = e.what();
    record.error_code = error_code_name(e.code());
    record.code = e.code();
  }
  record.duration_ms = ms_since(start);
  return record;
}

StageRecord skipped(const std::string& name, const std::string& reason) {
  StageRecord record;
  record.name = name;
  record.status = StageStatus::Skipped;
  record.message = reason;
  return record;
}

}  // namespace

Report run_pipeline(const PipelineConfig& config) {
  RunContext ctx = make_context(config, needs_of("pipeline"));
  check_output_dir_writable(resolve_output_dir(ctx.config));

  Report report;
  bool estimation_halted = false;
  std::string halted_by;
  auto halted = [&](const std::string& name) {
    return skipped(name, "halted: upstream stage \"" + halted_by +
                             "\" failed");
  };
  auto note_failure = [&](const StageRecord& record) {
    if (record.status == StageStatus::Error && !estimation_halted) {
      estimation_halted = true;
      halted_by = record.name;
    }
  };

  StageRecord s1 = run_recorded("pooled_ols_full", ctx, [](RunContext& c,
                                                           auto& vars) {
    return StagePayload(run_ols_full(c, vars));
  });
  note_failure(s1);
  report.stages.push_back(std::move(s1));

  // Diagnostics never halt the run.
  report.stages.push_back(
      run_recorded("diagnostics", ctx, [](RunContext& c, auto& vars) {
        return StagePayload(run_diagnostics(c, vars));
      }));

  if (estimation_halted) {
    report.stages.push_back(halted("pca"));
    report.stages.push_back(halted("pooled_ols_pc1"));
    report.stages.push_back(halted("fixed_effects"));
    report.stages.push_back(halted("ridge_cv"));
    report.stages.push_back(halted("ridge_final"));
  } else {
    StageRecord s3 = run_recorded("pca", ctx, [](RunContext& c, auto& vars) {
      return StagePayload(run_pca_stage(c, vars));
    });
    note_failure(s3);
    report.stages.push_back(std::move(s3));

    auto run_estimation = [&](const std::string& name, auto body) {
      if (estimation_halted) {
        report.stages.push_back(halted(name));
        return;
      }
      StageRecord record = run_recorded(name, ctx, body);
      note_failure(record);
      report.stages.push_back(std::move(record));
    };

    run_estimation("pooled_ols_pc1", [](RunContext& c, auto& vars) {
      return StagePayload(run_ols_pc1(c, vars));
    });
    run_estimation("fixed_effects", [](RunContext& c, auto& vars) {
      return StagePayload(run_fe(c, vars));
    });

    if (ctx.config.fixed_lambda) {
      report.stages.push_back(
          skipped("ridge_cv", "fixed lambda configured; CV not run"));
    } else {
      run_estimation("ridge_cv", [](RunContext& c, auto& vars) {
        return StagePayload(run_ridge_cv(c, vars));
      });
    }
    run_estimation("ridge_final", [](RunContext& c, auto& vars) {
      return StagePayload(run_ridge_final(c, vars));
    });
  }

  if (!ctx.config.adpi) {
    report.stages.push_back(skipped("adpi", "no adpi column mapping configured"));
  } else {
    report.stages.push_back(
        run_recorded("adpi", ctx, [](RunContext& c, auto& vars) {
          return StagePayload(run_adpi(c, vars));
        }));
  }
  return report;
}

Report run_stage(const PipelineConfig& config, const std::string& stage) {
  if (stage == "pipeline") return run_pipeline(config);

  RunContext ctx = make_context(config, needs_of(stage));
  Report report;

  // Single-stage runs propagate errors to the caller instead of recording
  // them; the CLI maps them onto exit codes.
  auto add = [&](const std::string& name, auto body) {
    StageRecord record;
    record.name = name;
    const auto start = Clock::now();
    record.payload = body(ctx, record.variables);
    record.duration_ms = ms_since(start);
    report.stages.push_back(std::move(record));
  };

  if (stage == "ols") {
    add("pooled_ols_full", [](RunContext& c, auto& vars) {
      return StagePayload(run_ols_full(c, vars));
    });
  } else if (stage == "diagnose") {
    add("diagnostics", [](RunContext& c, auto& vars) {
      return StagePayload(run_diagnostics(c, vars));
    });
  } else if (stage == "pca") {
    add("pca", [](RunContext& c, auto& vars) {
      return StagePayload(run_pca_stage(c, vars));
    });
  } else if (stage == "fe") {
    add("fixed_effects", [](RunContext& c, auto& vars) {
      return StagePayload(run_fe(c, vars));
    });
  } else if (stage == "ridge") {
    if (!ctx.config.fixed_lambda)
      add("ridge_cv", [](RunContext& c, auto& vars) {
        return StagePayload(run_ridge_cv(c, vars));
      });
    add("ridge_final", [](RunContext& c, auto& vars) {
      return StagePayload(run_ridge_final(c, vars));
    });
  } else if (stage == "adpi") {
    add("adpi", [](RunContext& c, auto& vars) {
      return StagePayload(run_adpi(c, vars));
    });
  } else if (stage == "ingest-check") {
    add("ingest_check", [](RunContext& c, auto& vars) {
      return StagePayload(run_ingest_check(c, vars));
    });
  } else {
    throw Error(ErrorCode::ConfigError, "unknown stage: \"" + stage + "\"");
  }
  return report;
}

}  // namespace panelkit
