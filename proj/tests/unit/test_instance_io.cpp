#include "flp/instance.hpp"

#include <vector>

#include <doctest.h>

#include "flp/errors.hpp"
#include "flp/rng.hpp"

using namespace flp;

TEST_CASE("minimal one-location document") {
  const std::string doc = R"({"version":1,
    "metric":{"kind":"euclidean-2d","points":[[0.25,0.75]]},
    "facility_costs":[1.5],"clients":[2]})";
  const Instance inst = load_instance(doc);
  CHECK(inst.size() == 1);
  CHECK(inst.facility_costs()[0] == 1.5);
  CHECK(inst.clients()[0] == 2);
}

TEST_CASE("save/load round trip is the identity on canonical documents") {
  const Instance inst(build_metric({{0, 0}, {0.125, 0.5}, {1, 1}}),
                      {0.1, 0.2, 0.3}, {1, 0, 4});
  const std::string bytes = save_instance(inst);
  const Instance back = load_instance(bytes);
  CHECK(save_instance(back) == bytes);  // canonical fixed point
  CHECK(back.size() == 3);
}

TEST_CASE("round trip preserves doubles bit-exactly") {
  Rng rng(2024);
  std::vector<Point2> pts;
  std::vector<double> costs;
  std::vector<std::int64_t> clients;
  for (int i = 0; i < 25; ++i) {
    pts.push_back({rng.next_double() * 1e3, rng.next_double() * 1e-3});
    costs.push_back(rng.next_double() * 7.3);
    clients.push_back(static_cast<std::int64_t>(rng.next_u64() % 100));
  }
  const Instance inst(MetricSpace::from_points(pts), costs, clients);
  const Instance back = load_instance(save_instance(inst));
  for (int i = 0; i < inst.size(); ++i) {
    CHECK(back.metric().points()->at(i).x == pts[i].x);
    CHECK(back.metric().points()->at(i).y == pts[i].y);
    CHECK(back.facility_costs()[i] == costs[i]);
    CHECK(back.clients()[i] == clients[i]);
  }
}

TEST_CASE("matrix form loads and round trips") {
  const std::string doc = R"({"version":1,
    "metric":{"kind":"matrix","distances":[[0,1],[1,0]]},
    "facility_costs":[1,1],"clients":[1,1]})";
  const Instance inst = load_instance(doc);
  CHECK(inst.metric()(0, 1) == 1.0);
  const Instance back = load_instance(save_instance(inst));
  CHECK(back.metric()(0, 1) == 1.0);
  CHECK(back.metric().source() == MetricSpace::Source::kExplicit);
}

TEST_CASE("asymmetric matrices are rejected with the field named") {
  const std::string doc = R"({"version":1,
    "metric":{"kind":"matrix","distances":[[0,1],[2,0]]},
    "facility_costs":[1,1],"clients":[1,1]})";
  try {
    load_instance(doc);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("asymmetric") != std::string::npos);
  }
}

TEST_CASE("schema violations carry field diagnostics") {
  CHECK_THROWS_AS(load_instance("{not json"), InvalidArgument);
  CHECK_THROWS_AS(load_instance(R"({"version":2,"metric":{},
    "facility_costs":[],"clients":[]})"),
                  InvalidArgument);
  // negative cost
  try {
    load_instance(R"({"version":1,
      "metric":{"kind":"euclidean-2d","points":[[0,0]]},
      "facility_costs":[-1],"clients":[1]})");
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("facility_costs[0]") !=
          std::string::npos);
  }
  // negative clients
  try {
    load_instance(R"({"version":1,
      "metric":{"kind":"euclidean-2d","points":[[0,0]]},
      "facility_costs":[1],"clients":[-3]})");
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("clients[0]") != std::string::npos);
  }
  // length mismatch
  CHECK_THROWS_AS(load_instance(R"({"version":1,
    "metric":{"kind":"euclidean-2d","points":[[0,0],[1,1]]},
    "facility_costs":[1],"clients":[1,1]})"),
                  InvalidArgument);
  // non-integer clients
  CHECK_THROWS_AS(load_instance(R"({"version":1,
    "metric":{"kind":"euclidean-2d","points":[[0,0]]},
    "facility_costs":[1],"clients":[1.5]})"),
                  InvalidArgument);
}

TEST_CASE("b_avg helper") {
  const Instance inst(build_metric({{0, 0}, {1, 0}}), {1, 1}, {3, 5});
  CHECK(inst.total_clients() == 8);
  CHECK(inst.average_clients() == doctest::Approx(4.0));
}
