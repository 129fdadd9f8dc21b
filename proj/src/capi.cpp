#include "panelkit.h"

#include <cstring>
#include <string>

#include "panelkit/config.hpp"
#include "panelkit/pipeline.hpp"
#include "panelkit/render.hpp"

struct pk_config {
  panelkit::PipelineConfig config;
};

struct pk_report {
  panelkit::Report report;
};

namespace {

thread_local std::string g_last_error;

pk_status status_of(const panelkit::Error& e) {
  switch (e.category()) {
    case panelkit::ErrorCategory::Config: return PK_ERR_CONFIG;
    case panelkit::ErrorCategory::Data: return PK_ERR_DATA;
    case panelkit::ErrorCategory::Numeric: return PK_ERR_NUMERIC;
    case panelkit::ErrorCategory::Io: return PK_ERR_IO;
    case panelkit::ErrorCategory::Internal: return PK_ERR_INTERNAL;
  }
  return PK_ERR_INTERNAL;
}

template <typename Fn>
pk_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PK_OK;
  } catch (const panelkit::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PK_ERR_INTERNAL;
  }
}

pk_status invalid(const char* message) {
  g_last_error = message;
  return PK_ERR_INVALID;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* pk_version(void) { return "0.1.0"; }

const char* pk_last_error(void) { return g_last_error.c_str(); }

pk_status pk_config_create(pk_config** out) {
  if (!out) return invalid("pk_config_create: out is null");
  return guarded([&] { *out = new pk_config(); });
}

pk_status pk_config_load_file(pk_config* cfg, const char* path) {
  if (!cfg || !path) return invalid("pk_config_load_file: null argument");
  return guarded([&] { cfg->config = panelkit::parse_config_file(path); });
}

pk_status pk_config_set(pk_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return invalid("pk_config_set: null argument");
  return guarded(
      [&] { panelkit::apply_config_override(cfg->config, key, value); });
}

void pk_config_free(pk_config* cfg) { delete cfg; }

pk_status pk_run(const pk_config* cfg, const char* stage, pk_report** out) {
  if (!cfg || !stage || !out) return invalid("pk_run: null argument");
  return guarded([&] {
    auto rep = new pk_report();
    try {
      rep->report = panelkit::run_stage(cfg->config, stage);
    } catch (...) {
      delete rep;
      throw;
    }
    *out = rep;
  });
}

pk_status pk_config_output_dir(const pk_config* cfg, char** out) {
  if (!cfg || !out) return invalid("pk_config_output_dir: null argument");
  return guarded(
      [&] { *out = dup_string(panelkit::resolve_output_dir(cfg->config)); });
}

pk_status pk_report_json(const pk_report* rep, char** out) {
  if (!rep || !out) return invalid("pk_report_json: null argument");
  return guarded(
      [&] { *out = dup_string(panelkit::render_report_json(rep->report)); });
}

pk_status pk_report_text(const pk_report* rep, char** out) {
  if (!rep || !out) return invalid("pk_report_text: null argument");
  return guarded(
      [&] { *out = dup_string(panelkit::render_report_text(rep->report)); });
}

pk_status pk_report_write(const pk_report* rep, const pk_config* cfg,
                          const char* out_dir) {
  if (!rep || !cfg || !out_dir)
    return invalid("pk_report_write: null argument");
  return guarded([&] {
    panelkit::write_report(rep->report, out_dir, cfg->config.formats);
  });
}

pk_status pk_report_stage_count(const pk_report* rep, int* out) {
  if (!rep || !out) return invalid("pk_report_stage_count: null argument");
  *out = static_cast<int>(rep->report.stages.size());
  g_last_error.clear();
  return PK_OK;
}

pk_status pk_report_worst_status(const pk_report* rep) {
  if (!rep) return invalid("pk_report_worst_status: null argument");
  g_last_error.clear();
  for (const auto& stage : rep->report.stages) {
    if (stage.status != panelkit::StageStatus::Error) continue;
    g_last_error = stage.name + ": " + stage.message;
    if (!stage.code) return PK_ERR_INTERNAL;
    switch (panelkit::error_category(*stage.code)) {
      case panelkit::ErrorCategory::Config: return PK_ERR_CONFIG;
      case panelkit::ErrorCategory::Data: return PK_ERR_DATA;
      case panelkit::ErrorCategory::Numeric: return PK_ERR_NUMERIC;
      case panelkit::ErrorCategory::Io: return PK_ERR_IO;
      case panelkit::ErrorCategory::Internal: return PK_ERR_INTERNAL;
    }
  }
  return PK_OK;
}

pk_status pk_report_stage_name(const pk_report* rep, int index,
                               const char** out) {
  if (!rep || !out) return invalid("pk_report_stage_name: null argument");
  if (index < 0 || index >= static_cast<int>(rep->report.stages.size()))
    return invalid("pk_report_stage_name: index out of range");
  *out = rep->report.stages[static_cast<std::size_t>(index)].name.c_str();
  g_last_error.clear();
  return PK_OK;
}

pk_status pk_report_stage_status(const pk_report* rep, int index,
                                 const char** out) {
  if (!rep || !out) return invalid("pk_report_stage_status: null argument");
  if (index < 0 || index >= static_cast<int>(rep->report.stages.size()))
    return invalid("pk_report_stage_status: index out of range");
  *out = panelkit::stage_status_name(
      rep->report.stages[static_cast<std::size_t>(index)].status);
  g_last_error.clear();
  return PK_OK;
}

pk_status pk_report_stage_message(const pk_report* rep, int index,
                                  const char** out) {
  if (!rep || !out) return invalid("pk_report_stage_message: null argument");
  if (index < 0 || index >= static_cast<int>(rep->report.stages.size()))
    return invalid("pk_report_stage_message: index out of range");
  *out = rep->report.stages[static_cast<std::size_t>(index)].message.c_str();
  g_last_error.clear();
  return PK_OK;
}

void pk_report_free(pk_report* rep) { delete rep; }

void pk_free(char* s) { delete[] s; }

}  // extern "C"
