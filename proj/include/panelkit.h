/*
 * panelkit C API: panel-econometrics pipeline behind opaque handles and
 * integer status codes. All functions are safe to call from C.
 *
 * Usage pattern:
 *   pk_config* cfg = NULL;
 *   pk_config_create(&cfg);
 *   pk_config_load_file(cfg, "pipeline.conf");
 *   pk_config_set(cfg, "seed", "42");
 *   pk_report* rep = NULL;
 *   pk_status st = pk_run(cfg, "pipeline", &rep);
 *   if (st != PK_OK) { fprintf(stderr, "%s\n", pk_last_error()); ... }
 *   pk_report_write(rep, "out");
 *   pk_report_free(rep);
 *   pk_config_free(cfg);
 */
#ifndef PANELKIT_H
#define PANELKIT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pk_status {
  PK_OK = 0,
  PK_ERR_CONFIG = 1,  /* usage / configuration */
  PK_ERR_DATA = 2,    /* input data problems */
  PK_ERR_NUMERIC = 3, /* estimation failures */
  PK_ERR_IO = 4,
  PK_ERR_INVALID = 5, /* null handle or bad argument */
  PK_ERR_INTERNAL = 6
} pk_status;

typedef struct pk_config pk_config;
typedef struct pk_report pk_report;

const char* pk_version(void);

/* Message of the most recent failing call on this thread; empty string when
 * the last call succeeded. The pointer stays valid until the next call. */
const char* pk_last_error(void);

pk_status pk_config_create(pk_config** out);
pk_status pk_config_load_file(pk_config* cfg, const char* path);
/* Same keys as the config file schema, e.g. ("seed", "42"). */
pk_status pk_config_set(pk_config* cfg, const char* key, const char* value);
void pk_config_free(pk_config* cfg);

/* stage: "pipeline", "ols", "diagnose", "pca", "fe", "ridge", "adpi" or
 * "ingest-check". On success *out owns the report. */
pk_status pk_run(const pk_config* cfg, const char* stage, pk_report** out);

/* Resolved output directory: the config value, falling back to the
 * PANELKIT_OUTPUT_DIR environment variable; empty string when neither is
 * set. Caller frees with pk_free. */
pk_status pk_config_output_dir(const pk_config* cfg, char** out);

/* Canonical JSON / human-readable text; caller frees with pk_free. */
pk_status pk_report_json(const pk_report* rep, char** out);
pk_status pk_report_text(const pk_report* rep, char** out);

/* Writes the formats requested by the config under out_dir. */
pk_status pk_report_write(const pk_report* rep, const pk_config* cfg,
                          const char* out_dir);

/* Number of stages and per-stage accessors for status lines. index is
 * 0-based; returned pointers stay valid while the report lives. */
pk_status pk_report_stage_count(const pk_report* rep, int* out);

/* PK_OK when every executed stage succeeded; otherwise the status category
 * of the first stage that recorded an error. Lets callers turn a partially
 * failed pipeline report into a process exit code. */
pk_status pk_report_worst_status(const pk_report* rep);
pk_status pk_report_stage_name(const pk_report* rep, int index,
                               const char** out);
pk_status pk_report_stage_status(const pk_report* rep, int index,
                                 const char** out);
pk_status pk_report_stage_message(const pk_report* rep, int index,
                                  const char** out);

void pk_report_free(pk_report* rep);
void pk_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
