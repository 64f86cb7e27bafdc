#include <gtest/gtest.h>

#include "steinhaus/constructions.hpp"
#include "steinhaus/distance.hpp"
#include "steinhaus/errors.hpp"
#include "steinhaus/json_io.hpp"
#include "steinhaus/measure.hpp"
#include "steinhaus/params.hpp"

using namespace steinhaus;

TEST(JsonIo, GridSetRoundTrip) {
  const GridSet e = building_block(4, Rational(3, 2), 2).with_placement(Dyadic::parse("1/2"), {Dyadic(3), Dyadic::parse("-1/4")});
  EXPECT_EQ(grid_set_from_json(to_json(e)), e);
}

TEST(JsonIo, MeasureRoundTrip) {
  const GridSet e(2, 2, {Cell{0, 0, 0}, Cell{1, 3, 0}});
  const CellMeasure mu(2, 2, e.cells(), {0.25, 0.75}, {1.0, 2.0}, 0.5);
  const CellMeasure back = cell_measure_from_json(to_json(mu));
  EXPECT_EQ(back.cells(), mu.cells());
  EXPECT_EQ(back.weights(), mu.weights());
  EXPECT_EQ(back.origin(), mu.origin());
  EXPECT_EQ(back.scale(), mu.scale());
}

TEST(JsonIo, IntervalsAndBundle) {
  const std::string s = to_json(distance_set(GridSet(2, 1, {Cell{0, 0, 0}})));
  EXPECT_NE(s.find("\"hi_sq\""), std::string::npos);
  const ParamBundle b = compute_parameters(2, 0.9, std::ldexp(1.0, -73), 5, 0.125);
  const ParamBundle c = param_bundle_from_json(to_json(b));
  EXPECT_EQ(c.T, b.T);
  EXPECT_DOUBLE_EQ(c.a, b.a);
  EXPECT_TRUE(c.feasible());
}

TEST(JsonIo, MalformedReportsPosition) {
  EXPECT_EQ(text_position("ab\ncd", 4), "line 2, column 2");
  try {
    grid_set_from_json("{\"dim\": 2,\n \"resolution\": ,}");
    FAIL() << "no exception";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(grid_set_from_json("{\"dim\": 2}"), ParameterError);
  EXPECT_THROW(grid_set_from_json("{\"dim\": 2, \"resolution\": 1, \"cells\": [[0, 5]]}"), ParameterError);
}
