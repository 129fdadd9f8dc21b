#ifndef PANELKIT_REPORT_HPP
#define PANELKIT_REPORT_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "panelkit/diagnostics.hpp"
#include "panelkit/estimators.hpp"
#include "panelkit/indices.hpp"
#include "panelkit/pca.hpp"

namespace panelkit {

enum class StageStatus { Ok, Skipped, Error };

struct OlsStagePayload {
  OlsFit fit;
  std::size_t rows_used = 0;
  std::size_t rows_dropped = 0;
};

struct DiagnosticsStagePayload {
  CorrelationMatrix correlation;
  std::vector<CorrelationPair> high_pairs;
  double cutoff = 0.70;
  VifTable vif;
};

struct PcaStagePayload {
  PcaModel model;
  ScoreSeries pc1;
  double pc1_share = 0.0;
  bool low_share_warning = false;
  std::vector<BiplotRecord> biplot;
  std::size_t rows_dropped = 0;
};

struct FeStagePayload {
  FeFit fit;
  std::size_t rows_used = 0;
  bool year_effects = false;
};

struct RidgeCvStagePayload {
  CvCurve curve;
};

struct RidgeStagePayload {
  RidgeFit fit;
  bool lambda_from_cv = false;
};

struct AdpiStagePayload {
  AdpiSeries series;
  std::vector<RankedEntry> latest_ranking;
  int latest_year = 0;
};

struct IngestStagePayload {
  std::size_t rows = 0;
  std::size_t countries = 0;
  int year_min = 0;
  int year_max = 0;
  std::vector<std::pair<std::string, std::size_t>> missing_by_variable;
};

using StagePayload =
    std::variant<std::monostate, OlsStagePayload, DiagnosticsStagePayload,
                 PcaStagePayload, FeStagePayload, RidgeCvStagePayload,
                 RidgeStagePayload, AdpiStagePayload, IngestStagePayload>;

struct StageRecord {
  std::string name;
  StageStatus status = StageStatus::Ok;
  std::string message;  // skip reason or structured error text
  std::string error_code;
  std::optional<ErrorCode> code;       // set when status is Error
  std::vector<std::string> variables;  // exact variable list used
  double duration_ms = 0.0;  // volatile; never part of the canonical JSON
  StagePayload payload;
};

/// Ordered pipeline output. Stage order is fixed by the pipeline; partial
/// runs carry the subset they executed, in the same relative order.
struct Report {
  std::vector<StageRecord> stages;

  const StageRecord* find(const std::string& name) const;
};

const char* stage_status_name(StageStatus status);

}  // namespace panelkit

#endif
