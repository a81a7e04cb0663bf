#include "flp/instance.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "flp/errors.hpp"

namespace flp {

using nlohmann::json;

Instance::Instance(MetricSpace metric, std::vector<double> facility_costs,
                   std::vector<std::int64_t> clients)
    : metric_(std::move(metric)),
      facility_costs_(std::move(facility_costs)),
      clients_(std::move(clients)) {
  const std::size_t n = static_cast<std::size_t>(metric_.size());
  if (facility_costs_.size() != n) {
    throw InvalidArgument("facility_costs: expected " + std::to_string(n) +
                          " entries, got " +
                          std::to_string(facility_costs_.size()));
  }
  if (clients_.size() != n) {
    throw InvalidArgument("clients: expected " + std::to_string(n) +
                          " entries, got " + std::to_string(clients_.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(facility_costs_[i]) || facility_costs_[i] < 0.0) {
      throw InvalidArgument("facility_costs[" + std::to_string(i) +
                            "]: must be finite and >= 0");
    }
    if (clients_[i] < 0) {
      throw InvalidArgument("clients[" + std::to_string(i) +
                            "]: must be >= 0");
    }
  }
}

std::int64_t Instance::total_clients() const {
  std::int64_t total = 0;
  for (auto b : clients_) total += b;
  return total;
}

double Instance::average_clients() const {
  return size() == 0 ? 0.0
                     : static_cast<double>(total_clients()) / size();
}

namespace {

json require_field(const json& doc, const char* key, const char* where) {
  if (!doc.contains(key)) {
    throw InvalidArgument(std::string(where) + ": missing field '" + key +
                          "'");
  }
  return doc.at(key);
}

MetricSpace parse_metric(const json& m) {
  const std::string kind = require_field(m, "kind", "metric");
  if (kind == "euclidean-2d") {
    const json pts = require_field(m, "points", "metric");
    if (!pts.is_array() || pts.empty()) {
      throw InvalidArgument("metric.points: non-empty array required");
    }
    std::vector<Point2> points;
    points.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const json& p = pts.at(i);
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
          !p[1].is_number()) {
        throw InvalidArgument("metric.points[" + std::to_string(i) +
                              "]: expected [x, y]");
      }
      points.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return MetricSpace::from_points(std::move(points));
  }
  if (kind == "matrix") {
    const json rows = require_field(m, "distances", "metric");
    if (!rows.is_array() || rows.empty()) {
      throw InvalidArgument("metric.distances: non-empty array required");
    }
    const std::size_t n = rows.size();
    std::vector<double> d;
    d.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      const json& row = rows.at(i);
      if (!row.is_array() || row.size() != n) {
        throw InvalidArgument("metric.distances[" + std::to_string(i) +
                              "]: expected " + std::to_string(n) + " entries");
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!row[j].is_number()) {
          throw InvalidArgument("metric.distances[" + std::to_string(i) +
                                "][" + std::to_string(j) + "]: not a number");
        }
        d.push_back(row[j].get<double>());
      }
    }
    return MetricSpace::from_matrix(n, std::move(d));
  }
  throw InvalidArgument("metric.kind: unknown kind '" + kind + "'");
}

}  // namespace

Instance load_instance(const std::string& bytes) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("instance document: ") + e.what());
  }
  if (!doc.is_object()) {
    throw InvalidArgument("instance document: expected an object");
  }
  const json version = require_field(doc, "version", "instance");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    throw InvalidArgument("version: expected 1");
  }
  MetricSpace metric = parse_metric(require_field(doc, "metric", "instance"));

  const json costs_j = require_field(doc, "facility_costs", "instance");
  const json clients_j = require_field(doc, "clients", "instance");
  if (!costs_j.is_array()) {
    throw InvalidArgument("facility_costs: expected an array");
  }
  if (!clients_j.is_array()) {
    throw InvalidArgument("clients: expected an array");
  }
  std::vector<double> costs;
  costs.reserve(costs_j.size());
  for (std::size_t i = 0; i < costs_j.size(); ++i) {
    if (!costs_j[i].is_number()) {
      throw InvalidArgument("facility_costs[" + std::to_string(i) +
                            "]: not a number");
    }
    costs.push_back(costs_j[i].get<double>());
  }
  std::vector<std::int64_t> clients;
  clients.reserve(clients_j.size());
  for (std::size_t i = 0; i < clients_j.size(); ++i) {
    if (!clients_j[i].is_number_integer()) {
      throw InvalidArgument("clients[" + std::to_string(i) +
                            "]: not an integer");
    }
    clients.push_back(clients_j[i].get<std::int64_t>());
  }
  return Instance(std::move(metric), std::move(costs), std::move(clients));
}

std::string save_instance(const Instance& inst) {
  json metric_j;
  if (inst.metric().points().has_value()) {
    json pts = json::array();
    for (const Point2& p : *inst.metric().points()) {
      pts.push_back(json::array({p.x, p.y}));
    }
    metric_j = {{"kind", "euclidean-2d"}, {"points", std::move(pts)}};
  } else {
    const int n = inst.size();
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back(inst.metric()(i, j));
      rows.push_back(std::move(row));
    }
    metric_j = {{"kind", "matrix"}, {"distances", std::move(rows)}};
  }
  json doc = {{"version", 1},
              {"metric", std::move(metric_j)},
              {"facility_costs", inst.facility_costs()},
              {"clients", inst.clients()}};
  return doc.dump();
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_instance(buf.str());
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write instance file: " + path);
  out << save_instance(inst);
  out.put('\n');
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace flp
