#include "panelkit/synthetic.hpp"

#include <cmath>
#include <random>

namespace panelkit {

namespace {

// Deterministic draws: mt19937_64 output is standardized, the distribution
// adaptors in <random> are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  double normal(double mean = 0.0, double sd = 1.0) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double z = std::sqrt(-2.0 * std::log(u1)) *
                     std::cos(2.0 * 3.14159265358979323846 * u2);
    return mean + sd * z;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

SyntheticPanel make_synthetic_panel(const SyntheticSpec& spec) {
  SyntheticPanel out;
  out.response = "Net_ODA";
  out.regressors = {"GDP_per_cap", "Corruption",   "CPI",
                    "Macro_rating", "CPIA_Prop_Rts", "Pol_St",
                    "Voice",        "Dem_Score",     "Poverty_Index",
                    "Remittances",  "Tax_Revenue",   "CurrentAccount",
                    "Exports",      "FDI",           "Imports"};
  out.openness_block = {"CurrentAccount", "Exports", "FDI", "Imports"};

  out.planted = {{"(Intercept)", 2500.0}, {"GDP_per_cap", 0.4},
                 {"Corruption", -8.0},    {"CPI", 40.0},
                 {"Macro_rating", -60.0}, {"CPIA_Prop_Rts", 90.0},
                 {"Pol_St", 350.0},       {"Voice", -900.0},
                 {"Dem_Score", 50.0},     {"Poverty_Index", 25.0},
                 {"Remittances", -90.0},  {"Tax_Revenue", 0.05},
                 {"CurrentAccount", -5.0}, {"Exports", -20.0},
                 {"FDI", -15.0},          {"Imports", 8.0}};

  std::vector<VariableSpec> variables;
  auto reg = [&](const std::string& name, VarRole role) {
    VariableSpec v;
    v.name = name;
    v.role = role;
    variables.push_back(v);
  };
  reg(out.response, VarRole::Response);
  for (const auto& name : out.regressors) reg(name, VarRole::Regressor);
  reg("GDP", VarRole::RawComponent);
  reg("Gov_Revenue", VarRole::RawComponent);

  Rng rng(spec.seed);
  const int T = spec.year_to - spec.year_from + 1;

  std::vector<PanelKey> keys;
  std::vector<std::vector<std::optional<double>>> cells;

  for (int c = 0; c < spec.countries; ++c) {
    char label[32];
    std::snprintf(label, sizeof(label), "country_%02d", c + 1);

    const double gdp_pc0 = rng.uniform(500.0, 3200.0);
    const double gdp_pc_growth = rng.uniform(0.005, 0.035);
    const double corruption0 = rng.uniform(15.0, 50.0);
    const double cpi0 = rng.uniform(2.0, 12.0);
    const double macro0 = rng.uniform(2.2, 4.8);
    const double prop0 = rng.uniform(2.2, 4.2);
    const double pol0 = rng.uniform(-2.2, 0.3);
    const double voice0 = rng.uniform(-1.8, 0.3);
    const double dem0 = rng.uniform(1.5, 7.5);
    const double pov0 = rng.uniform(22.0, 62.0);
    const double remit0 = rng.uniform(1.0, 12.0);
    const double gdp0 = rng.uniform(12000.0, 75000.0);
    const double tax_share = rng.uniform(0.10, 0.22);
    const double rev_share = tax_share + rng.uniform(0.03, 0.08);
    const double open_level = rng.normal(0.0, 0.8);

    for (int t = 0; t < T; ++t) {
      const PanelKey key{label, spec.year_from + t};

      const double gdp_pc =
          gdp_pc0 * std::pow(1.0 + gdp_pc_growth, t) + rng.normal(0.0, 40.0);
      const double corruption = corruption0 + rng.normal(0.0, 2.5);
      const double cpi = std::abs(cpi0 + rng.normal(0.0, 3.0));
      const double macro = macro0 + rng.normal(0.0, 0.2);
      const double prop = prop0 + rng.normal(0.0, 0.15);
      const double pol = pol0 + rng.normal(0.0, 0.25);
      const double voice = voice0 + rng.normal(0.0, 0.18);
      const double dem = dem0 + rng.normal(0.0, 0.4);
      const double pov = pov0 - 0.3 * t + rng.normal(0.0, 1.5);
      const double remit = std::abs(remit0 + rng.normal(0.0, 1.2));
      const double gdp = gdp0 * std::pow(1.0 + gdp_pc_growth, t) *
                         (1.0 + rng.normal(0.0, 0.02));
      const double tax = tax_share * gdp * (1.0 + rng.normal(0.0, 0.05));
      const double revenue = rev_share * gdp * (1.0 + rng.normal(0.0, 0.05));

      // One common factor drives the openness block, so the four variables
      // are strongly collinear and the current account loads opposite.
      const double factor = open_level + rng.normal(0.0, 1.0);
      const double exports = 22.0 + 6.0 * factor + rng.normal(0.0, 3.0);
      const double imports = 27.0 + 7.0 * factor + rng.normal(0.0, 3.2);
      const double fdi = 3.5 + 2.2 * factor + rng.normal(0.0, 1.1);
      const double current_account =
          -3.0 - 4.5 * factor + rng.normal(0.0, 2.2);

      std::map<std::string, double> row;
      row["GDP_per_cap"] = gdp_pc;
      row["Corruption"] = corruption;
      row["CPI"] = cpi;
      row["Macro_rating"] = macro;
      row["CPIA_Prop_Rts"] = prop;
      row["Pol_St"] = pol;
      row["Voice"] = voice;
      row["Dem_Score"] = dem;
      row["Poverty_Index"] = pov;
      row["Remittances"] = remit;
      row["Tax_Revenue"] = tax;
      row["CurrentAccount"] = current_account;
      row["Exports"] = exports;
      row["FDI"] = fdi;
      row["Imports"] = imports;

      double oda = out.planted.at("(Intercept)");
      for (const auto& name : out.regressors)
        oda += out.planted.at(name) * row.at(name);
      oda += rng.normal(0.0, spec.noise_sd);

      std::vector<std::optional<double>> record;
      record.reserve(variables.size());
      record.push_back(oda);
      for (const auto& name : out.regressors) record.push_back(row.at(name));
      record.push_back(gdp);
      record.push_back(revenue);

      keys.push_back(key);
      cells.push_back(std::move(record));
    }
  }

  // A few NA cells in one regressor exercise listwise deletion.
  const int remit_idx = 10 + 1;  // Net_ODA first, Remittances 10th regressor
  const std::vector<std::pair<int, int>> gaps = {{2, 5}, {6, 10}, {8, 2}};
  for (int g = 0; g < spec.missing_cells && g < static_cast<int>(gaps.size());
       ++g) {
    const auto [country, offset] = gaps[static_cast<std::size_t>(g)];
    if (country < spec.countries && offset < T)
      cells[static_cast<std::size_t>(country * T + offset)]
           [static_cast<std::size_t>(remit_idx)] = std::nullopt;
  }

  out.panel = Panel::create(std::move(variables), std::move(keys),
                            std::move(cells));
  return out;
}

}  // namespace panelkit
