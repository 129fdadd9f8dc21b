#ifndef PANELKIT_PIPELINE_HPP
#define PANELKIT_PIPELINE_HPP

#include <string>

#include "panelkit/config.hpp"
#include "panelkit/report.hpp"

namespace panelkit {

inline constexpr const char* kPc1VariableName = "External_Openness_PC1";

/// Executes the full estimation sequence in fixed order:
///   pooled_ols_full, diagnostics, pca, pooled_ols_pc1, fixed_effects,
///   ridge_cv, ridge_final, adpi.
/// The openness block is replaced by its PC1 from stage 4 onward.
/// Diagnostics failures never halt the run; an estimation-stage failure
/// halts the downstream estimation stages but completed stages still
/// render. Output-dir writability is checked before stage 1.
Report run_pipeline(const PipelineConfig& config);

/// Runs one stage standalone from the same config; stages that consume the
/// PC1-augmented variable set (fe, ridge) execute their PCA prerequisite
/// internally but report only the requested stage.
/// Stage names: pipeline, ols, diagnose, pca, fe, ridge, adpi, ingest-check.
Report run_stage(const PipelineConfig& config, const std::string& stage);

}  // namespace panelkit

#endif
