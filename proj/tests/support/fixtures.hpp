// Shared fixture builders for the test suite.
#ifndef PANELKIT_TESTS_FIXTURES_HPP
#define PANELKIT_TESTS_FIXTURES_HPP

#include <Eigen/Dense>
#include <random>
#include <string>
#include <vector>

#include "panelkit/panel.hpp"

namespace fixtures {

// 53-bit uniform in (0, 1]; distributions hand-rolled for reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline Eigen::MatrixXd random_matrix(Eigen::Index n, Eigen::Index k,
                                     std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd X(n, k);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < k; ++j) X(i, j) = rng.normal();
  return X;
}

// Balanced panel keys: groups x periods, row-major by group.
inline std::vector<panelkit::PanelKey> balanced_keys(int groups, int periods,
                                                     int first_year = 2009) {
  std::vector<panelkit::PanelKey> keys;
  for (int g = 0; g < groups; ++g)
    for (int t = 0; t < periods; ++t)
      keys.push_back({"g" + std::to_string(g), first_year + t});
  return keys;
}

inline panelkit::DesignMatrix make_design(
    Eigen::VectorXd y, Eigen::MatrixXd X, std::vector<std::string> names,
    std::vector<panelkit::PanelKey> keys = {}) {
  panelkit::DesignMatrix d;
  d.y = std::move(y);
  d.X = std::move(X);
  d.names = std::move(names);
  if (keys.empty())
    for (Eigen::Index i = 0; i < d.y.size(); ++i)
      keys.push_back({"r" + std::to_string(i), 2000});
  d.keys = std::move(keys);
  d.response_name = "y";
  return d;
}

inline std::vector<std::string> numbered_names(int k,
                                               const std::string& prefix = "x") {
  std::vector<std::string> names;
  for (int j = 0; j < k; ++j) names.push_back(prefix + std::to_string(j + 1));
  return names;
}

// First four non-constant columns of the order-8 Hadamard matrix: zero-mean,
// exactly orthogonal, so their sample correlation matrix is the identity.
inline Eigen::MatrixXd hadamard8_block(int cols = 4) {
  Eigen::MatrixXd h(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      int bits = i & j;
      int parity = 0;
      while (bits) {
        parity ^= bits & 1;
        bits >>= 1;
      }
      h(i, j) = parity ? -1.0 : 1.0;
    }
  return h.block(0, 1, 8, cols);
}

inline panelkit::VariableBlock make_block(Eigen::MatrixXd X,
                                          std::vector<std::string> names) {
  panelkit::VariableBlock b;
  b.X = std::move(X);
  b.names = std::move(names);
  for (Eigen::Index i = 0; i < b.X.rows(); ++i)
    b.keys.push_back({"r" + std::to_string(i), 2000});
  return b;
}

// Panel over one country ("A"), years 2000.., one column per name.
inline panelkit::Panel make_panel(
    const std::vector<std::string>& names,
    const std::vector<std::vector<std::optional<double>>>& rows) {
  std::vector<panelkit::VariableSpec> specs;
  for (const auto& name : names) {
    panelkit::VariableSpec v;
    v.name = name;
    specs.push_back(v);
  }
  std::vector<panelkit::PanelKey> keys;
  for (std::size_t i = 0; i < rows.size(); ++i)
    keys.push_back({"A", 2000 + static_cast<int>(i)});
  return panelkit::Panel::create(specs, keys, rows);
}

}  // namespace fixtures

#endif
