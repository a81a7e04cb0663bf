#include "flp/solution.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "flp/errors.hpp"

namespace flp {

using nlohmann::json;

bool Solution::is_open(int location) const {
  return std::any_of(facilities.begin(), facilities.end(),
                     [&](const OpenFacility& f) {
                       return f.location == location;
                     });
}

double Solution::capacity_of(int location) const {
  for (const OpenFacility& f : facilities) {
    if (f.location == location) return f.capacity;
  }
  throw InvalidArgument("capacity_of: location " + std::to_string(location) +
                        " is not an open facility");
}

std::string save_solution(const Solution& sol) {
  json caps = json::object();
  for (const OpenFacility& f : sol.facilities) {
    caps[std::to_string(f.location)] = f.capacity;
  }
  json trace = json::array();
  for (const FacilityTrace& t : sol.trace) {
    trace.push_back({{"facility", t.facility},
                     {"connected", t.connected},
                     {"noisy_load", t.noisy_load},
                     {"margin", t.margin},
                     {"clamped", t.clamped}});
  }
  json doc = {{"assignment", sol.assignment},
              {"capacities", std::move(caps)},
              {"trace", std::move(trace)}};
  return doc.dump();
}

Solution load_solution(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("solution document: ") + e.what());
  }
  Solution sol;
  if (!doc.contains("assignment") || !doc["assignment"].is_array()) {
    throw InvalidArgument("solution.assignment: array required");
  }
  sol.assignment = doc["assignment"].get<std::vector<int>>();
  if (!doc.contains("capacities") || !doc["capacities"].is_object()) {
    throw InvalidArgument("solution.capacities: object required");
  }
  for (const auto& [key, value] : doc["capacities"].items()) {
    try {
      sol.facilities.push_back({std::stoi(key), value.get<double>()});
    } catch (const std::exception&) {
      throw InvalidArgument("solution.capacities: bad facility key '" + key +
                            "'");
    }
  }
  std::sort(sol.facilities.begin(), sol.facilities.end(),
            [](const OpenFacility& a, const OpenFacility& b) {
              return a.location < b.location;
            });
  if (doc.contains("trace")) {
    for (const json& t : doc["trace"]) {
      sol.trace.push_back({t.at("facility").get<int>(),
                           t.at("connected").get<int>(),
                           t.at("noisy_load").get<double>(),
                           t.at("margin").get<double>(),
                           t.at("clamped").get<bool>()});
    }
  }
  return sol;
}

void save_solution_file(const Solution& sol, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write solution file: " + path);
  out << save_solution(sol);
  out.put('\n');
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace flp
