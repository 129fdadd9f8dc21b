#include <doctest.h>

#include <cmath>
#include <limits>

#include "panelkit/diagnostics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace panelkit;

namespace {

oracle::Vector column(const Eigen::MatrixXd& X, Eigen::Index j) {
  return oracle::Vector(X.col(j).begin(), X.col(j).end());
}

}  // namespace

TEST_CASE("correlation of a column with its scalar multiple is 1") {
  Eigen::MatrixXd X(5, 2);
  X.col(0) << 1, 2, 4, 7, 11;
  X.col(1) = 2.0 * X.col(0);
  const CorrelationMatrix corr = correlation_matrix(X, {"v", "v2"});
  CHECK(corr.R(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(corr.R(0, 0) == 1.0);
}

TEST_CASE("orthogonal zero-mean columns have correlation 0") {
  Eigen::MatrixXd X(4, 2);
  X.col(0) << 1, -1, 1, -1;
  X.col(1) << 1, 1, -1, -1;
  const CorrelationMatrix corr = correlation_matrix(X, {"a", "b"});
  CHECK(std::abs(corr.R(0, 1)) < 1e-15);
}

TEST_CASE("correlation matches the direct Pearson oracle") {
  const Eigen::MatrixXd X = fixtures::random_matrix(20, 3, 99);
  const CorrelationMatrix corr = correlation_matrix(X, {"a", "b", "c"});
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) {
      const double expect =
          i == j ? 1.0 : oracle::pearson(column(X, i), column(X, j));
      CHECK(std::abs(corr.R(i, j) - expect) < 1e-12);
    }
  // symmetry and unit diagonal
  CHECK((corr.R - corr.R.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("correlation matrix is positive semidefinite") {
  const Eigen::MatrixXd X = fixtures::random_matrix(30, 6, 123);
  const CorrelationMatrix corr = correlation_matrix(X, fixtures::numbered_names(6));
  oracle::Matrix R(6, oracle::Vector(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) R[i][j] = corr.R(i, j);
  const auto eig = oracle::jacobi_eigen(R);
  for (double v : eig.values) CHECK(v >= -1e-10);
}

TEST_CASE("correlation names zero-variance columns and requires n >= 3") {
  Eigen::MatrixXd X(5, 2);
  X.col(0).setConstant(3.0);
  X.col(1) << 1, 2, 3, 4, 5;
  try {
    correlation_matrix(X, {"flat", "ok"});
    FAIL("expected ZeroVariance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVariance);
    CHECK(std::string(e.what()).find("flat") != std::string::npos);
  }
  Eigen::MatrixXd tiny(2, 2);
  tiny << 1, 2, 3, 4;
  CHECK_THROWS_AS(correlation_matrix(tiny, {"a", "b"}), Error);
}

TEST_CASE("high_correlation_pairs honors the strict 0.70 boundary") {
  CorrelationMatrix corr;
  corr.names = {"a", "b"};
  corr.R = Eigen::MatrixXd::Identity(2, 2);
  corr.R(0, 1) = corr.R(1, 0) = 0.69;
  CHECK(high_correlation_pairs(corr, 0.70).empty());
  corr.R(0, 1) = corr.R(1, 0) = 0.70;  // inclusive at the cutoff itself
  CHECK(high_correlation_pairs(corr, 0.70).size() == 1);
}

TEST_CASE("high_correlation_pairs sorts by |r| descending") {
  CorrelationMatrix corr;
  corr.names = {"a", "b", "c"};
  corr.R = Eigen::MatrixXd::Identity(3, 3);
  corr.R(0, 1) = corr.R(1, 0) = 0.8;
  corr.R(0, 2) = corr.R(2, 0) = -0.9;
  corr.R(1, 2) = corr.R(2, 1) = 0.1;
  const auto pairs = high_correlation_pairs(corr, 0.70);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].r == doctest::Approx(-0.9));
  CHECK(pairs[0].name_a == "a");
  CHECK(pairs[0].name_b == "c");
  CHECK(pairs[1].r == doctest::Approx(0.8));
}

TEST_CASE("high_correlation_pairs agrees with an exhaustive scan") {
  const Eigen::MatrixXd X = fixtures::random_matrix(25, 6, 5);
  const auto names = fixtures::numbered_names(6);
  const CorrelationMatrix corr = correlation_matrix(X, names);
  const double cutoff = 0.15;
  const auto pairs = high_correlation_pairs(corr, cutoff);

  std::size_t expected = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (std::abs(corr.R(i, j)) >= cutoff) ++expected;
  CHECK(pairs.size() == expected);
  for (const auto& pair : pairs) {
    CHECK(std::abs(pair.r) >= cutoff);
    CHECK(pair.name_a != pair.name_b);
  }
  // a cutoff near zero returns every pair once
  CHECK(high_correlation_pairs(corr, 1e-12).size() == 15);
  CHECK_THROWS_AS(high_correlation_pairs(corr, 0.0), Error);
  CHECK_THROWS_AS(high_correlation_pairs(corr, 1.0), Error);
}

TEST_CASE("vif is 1 for mutually orthogonal zero-mean columns") {
  const Eigen::MatrixXd X = fixtures::hadamard8_block(4);
  const VifTable table = vif(X, fixtures::numbered_names(4), 5.0);
  for (const auto& entry : table.entries) {
    CHECK(entry.vif == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(entry.flagged);
  }
}

TEST_CASE("vif matches the two-predictor closed form") {
  const Eigen::MatrixXd H = fixtures::hadamard8_block(2);
  for (double r : {0.5, 0.9, 0.99}) {
    Eigen::MatrixXd X(8, 2);
    X.col(0) = H.col(0);
    X.col(1) = r * H.col(0) + std::sqrt(1.0 - r * r) * H.col(1);
    const VifTable table = vif(X, {"a", "b"}, 5.0);
    const double expect = 1.0 / (1.0 - r * r);
    CHECK(std::abs(table.entries[0].vif - expect) < 1e-10);
    CHECK(std::abs(table.entries[1].vif - expect) < 1e-10);
    // cross-check against the correlation matrix's off-diagonal
    const CorrelationMatrix corr = correlation_matrix(X, {"a", "b"});
    const double r_hat = corr.R(0, 1);
    CHECK(std::abs(table.entries[0].vif - 1.0 / (1.0 - r_hat * r_hat)) <
          1e-10);
  }
}

TEST_CASE("vif reports exact collinearity as an infinity sentinel") {
  Eigen::MatrixXd X(8, 3);
  X.col(0) = fixtures::hadamard8_block(2).col(0);
  X.col(1) = fixtures::hadamard8_block(2).col(1);
  X.col(2) = X.col(0) + X.col(1);
  const VifTable table = vif(X, {"a", "b", "c"}, 5.0);
  for (const auto& entry : table.entries) {
    CHECK(std::isinf(entry.vif));
    CHECK(entry.flagged);
  }
}

TEST_CASE("vif is invariant to positive affine rescaling of a column") {
  const Eigen::MatrixXd X = fixtures::random_matrix(40, 4, 314);
  const auto names = fixtures::numbered_names(4);
  const VifTable base = vif(X, names, 5.0);
  Eigen::MatrixXd Y = X;
  Y.col(2) = (7.5 * Y.col(2)).array() - 120.0;
  const VifTable scaled = vif(Y, names, 5.0);
  for (std::size_t j = 0; j < 4; ++j)
    CHECK(std::abs(base.entries[j].vif - scaled.entries[j].vif) < 1e-9);
}

TEST_CASE("vif rejects k < 2 and n <= k") {
  Eigen::MatrixXd one_col = fixtures::random_matrix(10, 1, 1);
  CHECK_THROWS_AS(vif(one_col, {"a"}, 5.0), Error);
  Eigen::MatrixXd square = fixtures::random_matrix(3, 3, 2);
  CHECK_THROWS_AS(vif(square, fixtures::numbered_names(3), 5.0), Error);
}
