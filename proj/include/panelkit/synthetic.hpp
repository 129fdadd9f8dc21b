#ifndef PANELKIT_SYNTHETIC_HPP
#define PANELKIT_SYNTHETIC_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "panelkit/panel.hpp"

namespace panelkit {

/// Parameters of the demo panel generator. The openness block is driven by
/// a common factor so that it is strongly collinear; the response is a
/// known linear combination of all regressors plus Gaussian noise, which
/// makes the generated panel usable both as a runnable demo and as a
/// planted-coefficient test bed.
struct SyntheticSpec {
  int countries = 10;
  int year_from = 2009;
  int year_to = 2023;
  double noise_sd = 150.0;   // response noise, million-USD scale
  std::uint64_t seed = 20240901;
  int missing_cells = 3;     // NA cells sprinkled into one regressor
};

struct SyntheticPanel {
  Panel panel;
  std::string response;                     // "Net_ODA"
  std::vector<std::string> regressors;      // 15 names, openness block last
  std::vector<std::string> openness_block;  // 4 names
  std::map<std::string, double> planted;    // true coefficients + intercept
};

SyntheticPanel make_synthetic_panel(const SyntheticSpec& spec = {});

}  // namespace panelkit

#endif
