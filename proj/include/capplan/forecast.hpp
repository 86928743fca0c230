#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "capplan/topology.hpp"

namespace capplan {

struct DemandSample {
  double timestamp = 0.0;  // seconds
  double gbps = 0.0;
};

// Averaged volume samples per ordered node pair.
class DemandHistory {
 public:
  explicit DemandHistory(std::size_t node_count = 0) : n_(node_count) {}

  std::size_t node_count() const { return n_; }
  // Registers the pair without a sample.
  void declare(NodeIndex s, NodeIndex t);
  // Samples of a pair must arrive in strictly increasing time order.
  void add(NodeIndex s, NodeIndex t, double timestamp, double gbps);
  const std::map<std::pair<NodeIndex, NodeIndex>, std::vector<DemandSample>>& series() const {
    return series_;
  }

 private:
  std::size_t n_;
  std::map<std::pair<NodeIndex, NodeIndex>, std::vector<DemandSample>> series_;
};

inline constexpr double kSecondsPerDay = 86400.0;

// Daily maximum (largest sample in the 24 hours ending at the pair's last
// sample) times (1 + growth)^horizon. Throws ValidationError for a declared
// pair without samples or a pair whose sample interval is not uniform.
DemandMatrix forecast(const DemandHistory& history, double annual_growth_rate,
                      double horizon_years);

// CSV with header src,dst,timestamp,gbps. Timestamps are seconds or ISO 8601
// UTC (2024-01-31T12:00:00Z). A row with empty timestamp and gbps declares
// the pair. Throws ParseError naming the line.
DemandHistory parse_history_csv(std::istream& in, const Topology& topology);

// Seconds since 1970-01-01 UTC. Throws ValidationError.
double parse_timestamp(const std::string& text);

}  // namespace capplan
