#include "panelkit/report.hpp"

namespace panelkit {

const StageRecord* Report::find(const std::string& name) const {
  for (const auto& stage : stages)
    if (stage.name == name) return &stage;
  return nullptr;
}

const char* stage_status_name(StageStatus status) {
  switch (status) {
    case StageStatus::Ok: return "ok";
    case StageStatus::Skipped: return "skipped";
    case StageStatus::Error: return "error";
  }
  return "error";
}

}  // namespace panelkit
