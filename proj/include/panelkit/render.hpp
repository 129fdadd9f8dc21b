#ifndef PANELKIT_RENDER_HPP
#define PANELKIT_RENDER_HPP

#include <string>
#include <vector>

#include "panelkit/report.hpp"

namespace panelkit {

/// Canonical JSON: alphabetical keys, full-precision numbers, no volatile
/// fields. Parsing and re-rendering the output is byte-identical.
std::string render_report_json(const Report& report);

/// Fixed two-decimal tables with thousands separators; significant rows
/// carry a '*' marker. Locale-independent.
std::string render_report_text(const Report& report);

/// Writes the requested formats under out_dir: report.json, report.txt,
/// numbered per-stage CSVs and plotdata/*.csv sidecars. Returns the paths
/// written.
std::vector<std::string> write_report(const Report& report,
                                      const std::string& out_dir,
                                      const std::vector<std::string>& formats);

}  // namespace panelkit

#endif
