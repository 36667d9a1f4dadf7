#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "deltaideal/serialization.hpp"
#include "support/oracles.hpp"

using namespace deltaideal;

TEST_CASE("tensor JSON formats") {
  SUBCASE("constant model") {
    nlohmann::json j = {{"n", 3}, {"model", "constant"}, {"c0", 0.25}};
    const CurvatureTensor R = tensor_from_json(j);
    CHECK(scalar_curvature(R) == doctest::Approx(0.75).epsilon(1e-14));
  }
  SUBCASE("component array round trip") {
    const CurvatureTensor R = oracles::random_tensor(3, 5);
    const CurvatureTensor back = tensor_from_json(tensor_to_json(R));
    for (std::size_t i = 0; i < R.components().size(); ++i) {
      CHECK(back.components()[i] == doctest::Approx(R.components()[i]).epsilon(1e-15));
    }
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(tensor_from_json({{"n", 3}, {"model", "warped"}}), ParseError);
    CHECK_THROWS_AS(tensor_from_json({{"n", 3}, {"components", {1, 2, 3}}}), ParseError);
  }
}

TEST_CASE("doubles round trip through JSON at full precision") {
  const double values[] = {5.000000000000001, 1.0 / 3.0, 9.375, 2e-17, -0.1};
  for (double v : values) {
    Json j;
    j["x"] = v;
    const auto parsed = nlohmann::json::parse(j.dump());
    CHECK(parsed.at("x").get<double>() == v);  // bit-exact
  }
}

TEST_CASE("partition JSON uses bare arrays") {
  CHECK(partition_to_json(Partition(5, {3, 2})).dump() == "[3,2]");
  CHECK(partition_to_json(Partition::empty(5)).dump() == "[]");
  const Partition p = partition_from_json(5, nlohmann::json::parse("[2,3]"));
  CHECK(p.parts() == std::vector<int>{3, 2});
  CHECK_THROWS_AS(partition_from_json(5, nlohmann::json::parse("{}")), ParseError);
}

TEST_CASE("delta result JSON carries the documented keys") {
  const CurvatureTensor R = constant_curvature_tensor(4, 1.0);
  const DeltaResult d = delta_invariant(R, Partition(4, {2}));
  const Json j = delta_result_to_json(d);
  CHECK(j.contains("value"));
  CHECK(j.contains("objective"));
  CHECK(j.contains("partition"));
  CHECK(j.contains("converged"));
  CHECK(j.contains("restarts_used"));
  CHECK_FALSE(j.contains("frame"));
  const Json verbose = delta_result_to_json(d, true);
  CHECK(verbose.at("frame").size() == 4);
}

TEST_CASE("report CSV emitters") {
  const ParametricImmersion cylinder = builtin_immersion("cylinder");
  const auto points = sample_chart(cylinder, 4, 2);
  const InequalityReport ineq = verify_inequality(cylinder, points);
  const std::string csv = inequality_report_to_csv(ineq);
  CHECK(csv.rfind("point_index,u0,u1,partition,delta,bound,slack\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(ineq.records.size()));

  const IdealityReport ideal = ideality_residual(cylinder, points);
  const std::string rcsv = ideality_report_to_csv(ideal);
  CHECK(rcsv.rfind("point_index,u0,u1,residual\n", 0) == 0);
}
