#include "panelkit/pca.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace panelkit {

namespace {

// Orients one eigenvector so its largest-magnitude entry is positive;
// magnitude ties resolve to the first occurrence.
void orient_column(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best) {
      best = mag;
      arg = i;
    }
  }
  if (v(arg) < 0.0) v = -v;
}

}  // namespace

PcaModel fit_pca(const VariableBlock& block) {
  const Eigen::Index n = block.X.rows();
  const Eigen::Index p = block.X.cols();
  if (p < 2)
    throw Error(ErrorCode::TooShort, "pca needs at least 2 variables");
  if (n <= p)
    throw Error(ErrorCode::InsufficientRows,
                "pca needs n > p, got n=" + std::to_string(n) +
                    " p=" + std::to_string(p));

  PcaModel model;
  model.names = block.names;
  model.standardization.reserve(static_cast<std::size_t>(p));

  Eigen::MatrixXd Z(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    std::pair<Eigen::VectorXd, Standardization> sj;
    try {
      sj = standardize(block.X.col(j));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ZeroVariance)
        throw Error(ErrorCode::ZeroVariance,
                    "column \"" + block.names[static_cast<std::size_t>(j)] +
                        "\" has zero variance");
      throw;
    }
    Z.col(j) = sj.first;
    model.standardization.push_back(sj.second);
  }

  const Eigen::MatrixXd R = (Z.transpose() * Z) / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(R);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::Internal, "eigendecomposition failed to converge");

  // Solver returns ascending order; re-sort descending with a stable tie
  // order (first occurrence wins).
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return solver.eigenvalues()(a) > solver.eigenvalues()(b);
                   });

  model.loadings.resize(p, p);
  model.eigenvalues.resize(p);
  for (Eigen::Index c = 0; c < p; ++c) {
    model.eigenvalues(c) =
        std::max(0.0, solver.eigenvalues()(order[static_cast<std::size_t>(c)]));
    model.loadings.col(c) =
        solver.eigenvectors().col(order[static_cast<std::size_t>(c)]);
    orient_column(model.loadings.col(c));
  }
  const double total = model.eigenvalues.sum();
  model.var_explained = model.eigenvalues / total;
  return model;
}

ScoreSeries scores(const PcaModel& model, const VariableBlock& block,
                   int component) {
  const Eigen::Index p = static_cast<Eigen::Index>(model.names.size());
  if (component < 1 || component > p)
    throw Error(ErrorCode::ComponentOutOfRange,
                "component " + std::to_string(component) +
                    " outside [1, " + std::to_string(p) + "]");

  // Match block columns to the model's variable order by name.
  std::vector<Eigen::Index> col_of(static_cast<std::size_t>(p));
  for (Eigen::Index j = 0; j < p; ++j) {
    const std::string& want = model.names[static_cast<std::size_t>(j)];
    auto it = std::find(block.names.begin(), block.names.end(), want);
    if (it == block.names.end())
      throw Error(ErrorCode::UnknownVariable,
                  "block lacks model variable \"" + want + "\"");
    col_of[static_cast<std::size_t>(j)] =
        static_cast<Eigen::Index>(it - block.names.begin());
  }

  const Eigen::Index n = block.X.rows();
  ScoreSeries series;
  series.keys = block.keys;
  series.component = component;
  series.values.resize(n);
  const Eigen::VectorXd loading = model.loadings.col(component - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    double score = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const Standardization& s =
          model.standardization[static_cast<std::size_t>(j)];
      const double z =
          (block.X(i, col_of[static_cast<std::size_t>(j)]) - s.mean) / s.sd;
      score += z * loading(j);
    }
    series.values(i) = score;
  }
  return series;
}

std::vector<ScreeRow> scree_data(const PcaModel& model) {
  std::vector<ScreeRow> rows;
  double cumulative = 0.0;
  for (Eigen::Index c = 0; c < model.eigenvalues.size(); ++c) {
    cumulative += model.var_explained(c);
    rows.push_back({static_cast<int>(c) + 1, model.eigenvalues(c),
                    model.var_explained(c), cumulative});
  }
  return rows;
}

std::vector<BiplotRecord> biplot_data(const PcaModel& model,
                                      const VariableBlock& block,
                                      BiplotPoints points) {
  const Eigen::Index p = static_cast<Eigen::Index>(model.names.size());
  if (p < 2)
    throw Error(ErrorCode::ComponentOutOfRange,
                "biplot needs at least 2 components");

  std::vector<BiplotRecord> records;
  const double s1 = std::sqrt(model.eigenvalues(0));
  const double s2 = std::sqrt(model.eigenvalues(1));
  for (Eigen::Index v = 0; v < p; ++v)
    records.push_back({"arrow", model.names[static_cast<std::size_t>(v)],
                       model.loadings(v, 0) * s1, model.loadings(v, 1) * s2});

  const ScoreSeries s_pc1 = scores(model, block, 1);
  const ScoreSeries s_pc2 = scores(model, block, 2);
  if (points == BiplotPoints::PerRow) {
    for (std::size_t i = 0; i < block.keys.size(); ++i)
      records.push_back({"point",
                         block.keys[i].country + ":" +
                             std::to_string(block.keys[i].year),
                         s_pc1.values(static_cast<Eigen::Index>(i)),
                         s_pc2.values(static_cast<Eigen::Index>(i))});
  } else {
    struct Acc {
      double x = 0.0;
      double y = 0.0;
      int n = 0;
    };
    std::map<std::string, Acc> by_country;
    for (std::size_t i = 0; i < block.keys.size(); ++i) {
      Acc& acc = by_country[block.keys[i].country];
      acc.x += s_pc1.values(static_cast<Eigen::Index>(i));
      acc.y += s_pc2.values(static_cast<Eigen::Index>(i));
      acc.n += 1;
    }
    for (const auto& [country, acc] : by_country)
      records.push_back({"point", country, acc.x / acc.n, acc.y / acc.n});
  }
  return records;
}

}  // namespace panelkit
