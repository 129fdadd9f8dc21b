// panelkit command-line front end. Talks to the shared library exclusively
// through the C API in panelkit.h.
#include <CLI11.hpp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "panelkit.h"

namespace {

struct Flags {
  std::string config;
  std::string input;
  std::string output_dir;
  std::string format;
  std::string response;
  std::string regressors;
  std::string corr_cutoff;
  std::string vif_threshold;
  std::string lambda;
  std::string folds;
  std::string seed;
  std::string alpha;
  bool year_fe = false;
};

void add_common_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "config file (key = value lines)");
  cmd->add_option("--input", flags.input, "input CSV path");
  cmd->add_option("--output-dir", flags.output_dir,
                  "output directory (fallback: $PANELKIT_OUTPUT_DIR)");
  cmd->add_option("--format", flags.format,
                  "comma list of output formats: json,csv,text");
  cmd->add_option("--response", flags.response, "response variable name");
  cmd->add_option("--regressors", flags.regressors,
                  "comma list of regressor names");
  cmd->add_option("--corr-cutoff", flags.corr_cutoff,
                  "high-correlation cutoff (default 0.70)");
  cmd->add_option("--vif-threshold", flags.vif_threshold,
                  "VIF flag threshold (default 5)");
  cmd->add_option("--lambda", flags.lambda,
                  "fixed ridge lambda (skips cross-validation)");
  cmd->add_option("--folds", flags.folds, "CV fold count (default 10)");
  cmd->add_option("--seed", flags.seed, "RNG seed for CV fold assignment");
  cmd->add_option("--alpha", flags.alpha,
                  "significance level (default 0.10)");
  cmd->add_flag("--year-fe", flags.year_fe,
                "add year fixed effects in the within estimator");
}

int exit_code_of(pk_status status) {
  switch (status) {
    case PK_OK: return 0;
    case PK_ERR_CONFIG: return 1;
    case PK_ERR_DATA: return 2;
    case PK_ERR_IO: return 2;
    case PK_ERR_NUMERIC: return 3;
    case PK_ERR_INVALID: return 3;
    case PK_ERR_INTERNAL: return 3;
  }
  return 3;
}

int fail(pk_status status) {
  std::fprintf(stderr, "error: %s\n", pk_last_error());
  return exit_code_of(status);
}

struct ConfigDeleter {
  void operator()(pk_config* cfg) const { pk_config_free(cfg); }
};
struct ReportDeleter {
  void operator()(pk_report* rep) const { pk_report_free(rep); }
};

int run_command(const std::string& stage, const Flags& flags) {
  pk_config* raw_cfg = nullptr;
  pk_status st = pk_config_create(&raw_cfg);
  if (st != PK_OK) return fail(st);
  std::unique_ptr<pk_config, ConfigDeleter> cfg(raw_cfg);

  if (!flags.config.empty()) {
    st = pk_config_load_file(cfg.get(), flags.config.c_str());
    if (st != PK_OK) return fail(st);
  }

  const std::vector<std::pair<const char*, const std::string*>> overrides = {
      {"input", &flags.input},
      {"output_dir", &flags.output_dir},
      {"formats", &flags.format},
      {"response", &flags.response},
      {"regressors", &flags.regressors},
      {"corr_cutoff", &flags.corr_cutoff},
      {"vif_threshold", &flags.vif_threshold},
      {"lambda", &flags.lambda},
      {"cv_folds", &flags.folds},
      {"seed", &flags.seed},
      {"alpha", &flags.alpha},
  };
  for (const auto& [key, value] : overrides) {
    if (value->empty()) continue;
    st = pk_config_set(cfg.get(), key, value->c_str());
    if (st != PK_OK) return fail(st);
  }
  if (flags.year_fe) {
    st = pk_config_set(cfg.get(), "year_effects", "true");
    if (st != PK_OK) return fail(st);
  }

  pk_report* raw_rep = nullptr;
  st = pk_run(cfg.get(), stage.c_str(), &raw_rep);
  if (st != PK_OK) return fail(st);
  std::unique_ptr<pk_report, ReportDeleter> rep(raw_rep);

  int count = 0;
  pk_report_stage_count(rep.get(), &count);
  for (int i = 0; i < count; ++i) {
    const char* name = "";
    const char* status = "";
    const char* message = "";
    pk_report_stage_name(rep.get(), i, &name);
    pk_report_stage_status(rep.get(), i, &status);
    pk_report_stage_message(rep.get(), i, &message);
    if (message[0] != '\0')
      std::printf("[%s] %s: %s\n", status, name, message);
    else
      std::printf("[%s] %s\n", status, name);
  }

  char* out_dir = nullptr;
  st = pk_config_output_dir(cfg.get(), &out_dir);
  if (st != PK_OK) return fail(st);
  const std::string dir = out_dir ? out_dir : "";
  pk_free(out_dir);

  if (!dir.empty()) {
    st = pk_report_write(rep.get(), cfg.get(), dir.c_str());
    if (st != PK_OK) return fail(st);
    std::printf("outputs written under %s\n", dir.c_str());
  } else {
    // No destination configured: print the report instead.
    char* text = nullptr;
    st = pk_report_text(rep.get(), &text);
    if (st != PK_OK) return fail(st);
    std::fputs(text, stdout);
    pk_free(text);
  }

  // A pipeline run that recorded a stage error still renders everything it
  // completed, but the process exit code reports the first failure.
  const pk_status worst = pk_report_worst_status(rep.get());
  if (worst != PK_OK) {
    std::fprintf(stderr, "error: %s\n", pk_last_error());
    return exit_code_of(worst);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"panel-econometrics pipeline: pooled OLS, collinearity "
               "diagnostics, PCA indexing, fixed effects, cross-validated "
               "ridge, and the aid-dependence index"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"pipeline", "run every stage in order"},
      {"ols", "pooled OLS on the configured regressor set"},
      {"diagnose", "correlation matrix, high pairs and VIF"},
      {"pca", "PCA on the openness block"},
      {"fe", "country (and optional year) fixed effects"},
      {"ridge", "ridge regression; cross-validates unless --lambda is given"},
      {"adpi", "aid-dependence pressure index"},
      {"ingest-check", "load the CSV and summarize coverage"},
  };

  std::vector<Flags> flag_sets(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].first, commands[i].second);
    add_common_flags(sub, flag_sets[i]);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (std::size_t i = 0; i < commands.size(); ++i)
    if (subs[i]->parsed()) return run_command(commands[i].first, flag_sets[i]);
  return 1;
}
