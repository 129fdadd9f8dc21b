#include <doctest.h>

#include <cmath>
#include <sstream>

#include "panelkit/panel.hpp"
#include "panelkit/synthetic.hpp"
#include "support/fixtures.hpp"

using namespace panelkit;

namespace {

std::vector<VariableSpec> schema_of(const std::vector<std::string>& names) {
  std::vector<VariableSpec> schema;
  for (const auto& name : names) {
    VariableSpec v;
    v.name = name;
    schema.push_back(v);
  }
  return schema;
}

Panel load_from_string(const std::string& csv,
                       const std::vector<std::string>& names) {
  std::istringstream in(csv);
  return load_panel(in, schema_of(names), "country", "year");
}

}  // namespace

TEST_CASE("load_panel fills one row per record") {
  const Panel p = load_from_string(
      "country,year,GDP\n"
      "KEN,2015,1.5\n"
      "KEN,2016,1.6\n"
      "TZA,2015,2.5\n"
      "TZA,2016,2.6\n",
      {"GDP"});
  CHECK(p.row_count() == 4);
  CHECK(p.missing_count(0) == 0);
  CHECK(p.keys()[0].country == "KEN");
  CHECK(p.keys()[3].year == 2016);
  CHECK(*p.cell(2, 0) == 2.5);
}

TEST_CASE("load_panel rejects duplicate country-year keys") {
  try {
    load_from_string(
        "country,year,GDP\n"
        "KEN,2015,1\n"
        "KEN,2015,2\n",
        {"GDP"});
    FAIL("expected DuplicateKey");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateKey);
    CHECK(std::string(e.what()).find("KEN") != std::string::npos);
    CHECK(std::string(e.what()).find("2015") != std::string::npos);
  }
}

TEST_CASE("load_panel locates parse errors by row and column") {
  try {
    load_from_string(
        "country,year,CPI\n"
        "KEN,2015,1.0\n"
        "KEN,2016,abc\n",
        {"CPI"});
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    CHECK(std::string(e.what()).find("CPI") != std::string::npos);
    CHECK(std::string(e.what()).find("abc") != std::string::npos);
  }
}

TEST_CASE("load_panel rejects fractional years") {
  CHECK_THROWS_WITH_AS(load_from_string("country,year,GDP\nKEN,2015.5,1\n",
                                        {"GDP"}),
                       doctest::Contains("2015.5"), Error);
}

TEST_CASE("load_panel reports schema columns missing from the header") {
  try {
    load_from_string("country,year,GDP\nKEN,2015,1\n", {"GDP", "CPI"});
    FAIL("expected MissingColumn");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingColumn);
    CHECK(std::string(e.what()).find("CPI") != std::string::npos);
  }
}

TEST_CASE("empty cells and NA both mean missing; quoting round-trips") {
  const Panel p = load_from_string(
      "country,year,GDP,CPI\n"
      "\"Cote D'Ivoire, RCI\",2015,,3\n"
      "KEN,2015,NA,4\n",
      {"GDP", "CPI"});
  CHECK(p.row_count() == 2);
  CHECK(p.missing_count(0) == 2);
  CHECK(p.missing_count(1) == 0);
  CHECK(p.keys()[0].country == "Cote D'Ivoire, RCI");
}

TEST_CASE("extract_design applies listwise deletion") {
  const Panel p = load_from_string(
      "country,year,y,x\n"
      "A,2001,1,10\n"
      "A,2002,,11\n"
      "A,2003,3,12\n"
      "A,2004,4,13\n"
      "A,2005,5,14\n",
      {"y", "x"});
  const DesignMatrix d = extract_design(p, "y", {"x"});
  CHECK(d.y.size() == 4);
  CHECK(d.dropped_rows == 1);
  CHECK(d.keys.size() == 4);
  CHECK(d.keys[1].year == 2003);  // order-stable survivors
}

TEST_CASE("extract_design permits the intercept-only model") {
  const Panel p = load_from_string(
      "country,year,y\nA,2001,1\nA,2002,2\n", {"y"});
  const DesignMatrix d = extract_design(p, "y", {});
  CHECK(d.X.cols() == 0);
  CHECK(d.y.size() == 2);
}

TEST_CASE("extract_design on the full 10x15 panel gives n=150, k=15") {
  SyntheticSpec spec;
  spec.missing_cells = 0;
  const SyntheticPanel synth = make_synthetic_panel(spec);
  const DesignMatrix d =
      extract_design(synth.panel, synth.response, synth.regressors);
  CHECK(d.y.size() == 150);
  CHECK(d.X.cols() == 15);
  CHECK(d.dropped_rows == 0);
}

TEST_CASE("extract_design rejects unknown names and response overlap") {
  const Panel p = load_from_string(
      "country,year,y,x\nA,2001,1,2\nA,2002,2,3\n", {"y", "x"});
  CHECK_THROWS_AS(extract_design(p, "nope", {"x"}), Error);
  CHECK_THROWS_AS(extract_design(p, "y", {"y"}), Error);
}

TEST_CASE("standardize matches the arithmetic-sequence example") {
  Eigen::Vector3d v(1.0, 2.0, 3.0);
  const auto [z, params] = standardize(v, false);
  CHECK(z(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(z(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(z(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(params.mean == doctest::Approx(2.0));
  CHECK(params.sd == doctest::Approx(1.0));

  const auto [zf, pf] = standardize(v, true);
  CHECK(zf(0) == doctest::Approx(1.0));
  CHECK(zf(2) == doctest::Approx(-1.0));
  CHECK(pf.sign_flip);
}

TEST_CASE("standardize rejects constant and too-short input") {
  Eigen::Vector3d constant(5.0, 5.0, 5.0);
  CHECK_THROWS_AS(standardize(constant, false), Error);
  Eigen::VectorXd one(1);
  one << 1.0;
  CHECK_THROWS_AS(standardize(one, false), Error);
}

TEST_CASE("standardize: mean 0, sd 1, round-trip, affine invariance") {
  fixtures::Rng rng(17);
  Eigen::VectorXd v(40);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v(i) = 3.0 + 11.0 * rng.normal();

  const auto [z, params] = standardize(v, true);
  CHECK(std::abs(z.mean()) < 1e-12);
  const double sd =
      std::sqrt((z.array() - z.mean()).square().sum() / (z.size() - 1));
  CHECK(std::abs(sd - 1.0) < 1e-12);

  // un-standardize: undo the flip, then scale back
  Eigen::VectorXd back = (-z * params.sd).array() + params.mean;
  CHECK((back - v).cwiseAbs().maxCoeff() < 1e-12 * 11.0);

  // z-scores are invariant to positive affine maps
  const auto [z2, p2] = standardize((2.5 * v.array() + 7.0).matrix().eval(),
                                    true);
  CHECK((z - z2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("append_variable grows the registry and keeps gaps missing") {
  const Panel p = load_from_string(
      "country,year,y\nA,2001,1\nA,2002,2\nB,2001,3\n", {"y"});
  std::map<PanelKey, double> values;
  values[{"A", 2001}] = 10.0;
  values[{"B", 2001}] = 30.0;
  const Panel q = append_variable(p, "pc1", values);
  CHECK(q.variable_count() == 2);
  CHECK(*q.cell(0, 1) == 10.0);
  CHECK_FALSE(q.cell(1, 1).has_value());
  CHECK(*q.cell(2, 1) == 30.0);

  CHECK_THROWS_AS(append_variable(p, "y", values), Error);
}

TEST_CASE("panel CSV round-trip preserves keys, values and missing cells") {
  SyntheticSpec spec;
  const SyntheticPanel synth = make_synthetic_panel(spec);
  const std::string csv = panel_to_csv(synth.panel);
  std::istringstream in(csv);
  const Panel reloaded =
      load_panel(in, synth.panel.variables(), synth.panel.country_column(),
                 synth.panel.year_column());
  CHECK(reloaded.same_contents(synth.panel));
  // and the reloaded panel serializes to the same bytes
  CHECK(panel_to_csv(reloaded) == csv);
}
