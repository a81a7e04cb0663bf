#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flp/metric.hpp"

namespace flp {

// An FL-Linear problem: locations with a metric, per-unit-capacity facility
// costs and integer client counts. Immutable after construction.
class Instance {
 public:
  Instance(MetricSpace metric, std::vector<double> facility_costs,
           std::vector<std::int64_t> clients);

  int size() const { return metric_.size(); }
  const MetricSpace& metric() const { return metric_; }
  const std::vector<double>& facility_costs() const { return facility_costs_; }
  const std::vector<std::int64_t>& clients() const { return clients_; }

  std::int64_t total_clients() const;
  double average_clients() const;  // b_avg

 private:
  MetricSpace metric_;
  std::vector<double> facility_costs_;
  std::vector<std::int64_t> clients_;
};

// JSON document round trip. save(load(x)) is the identity on canonical
// documents; all finite doubles survive bit-exactly.
Instance load_instance(const std::string& bytes);
std::string save_instance(const Instance& inst);

Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& inst, const std::string& path);

}  // namespace flp
