#include "capplan/forecast.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "capplan/error.hpp"

namespace capplan {

void DemandHistory::declare(NodeIndex s, NodeIndex t) {
  if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= n_ ||
      static_cast<std::size_t>(t) >= n_) {
    throw ValidationError("history pair references an unknown node");
  }
  if (s == t) throw ValidationError("history contains a self-demand");
  series_[{s, t}];
}

void DemandHistory::add(NodeIndex s, NodeIndex t, double timestamp, double gbps) {
  declare(s, t);
  if (!(gbps >= 0.0)) throw ValidationError("sample volume must be non-negative");
  auto& samples = series_[{s, t}];
  if (!samples.empty() && !(timestamp > samples.back().timestamp)) {
    throw ValidationError("sample timestamps must be strictly increasing");
  }
  samples.push_back({timestamp, gbps});
}

DemandMatrix forecast(const DemandHistory& history, double annual_growth_rate,
                      double horizon_years) {
  if (!(annual_growth_rate >= 0.0)) throw ValidationError("growth rate must be >= 0");
  if (!(horizon_years >= 0.0)) throw ValidationError("horizon must be >= 0");
  const double growth = std::pow(1.0 + annual_growth_rate, horizon_years);
  DemandMatrix out(history.node_count());
  for (const auto& [pair, samples] : history.series()) {
    const std::string name = std::to_string(pair.first) + "->" + std::to_string(pair.second);
    if (samples.empty()) {
      throw ValidationError("no samples for pair " + name);
    }
    if (samples.size() > 2) {
      const double interval = samples[1].timestamp - samples[0].timestamp;
      for (std::size_t i = 2; i < samples.size(); ++i) {
        const double d = samples[i].timestamp - samples[i - 1].timestamp;
        if (std::abs(d - interval) > 1e-6 * std::max(1.0, interval)) {
          throw ValidationError("sample interval of pair " + name + " is not uniform");
        }
      }
    }
    const double end = samples.back().timestamp;
    double peak = 0.0;
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
      if (it->timestamp <= end - kSecondsPerDay) break;
      peak = std::max(peak, it->gbps);
    }
    out.set(pair.first, pair.second, peak * growth);
  }
  return out;
}

double parse_timestamp(const std::string& text) {
  std::size_t used = 0;
  try {
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  int y = 0, mo = 0, d = 0, h = 0, mi = 0;
  double sec = 0.0;
  char tail = 0;
  const int got = std::sscanf(text.c_str(), "%d-%d-%d%*[T ]%d:%d:%lf%c", &y, &mo, &d, &h, &mi,
                              &sec, &tail);
  if (got < 6 || (got == 7 && tail != 'Z')) {
    throw ValidationError("unrecognized timestamp '" + text + "'");
  }
  using namespace std::chrono;
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)},
                            day{static_cast<unsigned>(d)}};
  if (!date.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0.0 || sec >= 61.0) {
    throw ValidationError("invalid timestamp '" + text + "'");
  }
  const auto days = sys_days(date).time_since_epoch().count();
  return static_cast<double>(days) * kSecondsPerDay + h * 3600.0 + mi * 60.0 + sec;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

DemandHistory parse_history_csv(std::istream& in, const Topology& topology) {
  DemandHistory history(topology.node_count());
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_csv_line(line);
    if (!header) {
      if (fields != std::vector<std::string>{"src", "dst", "timestamp", "gbps"}) {
        throw ParseError(number, "expected header src,dst,timestamp,gbps");
      }
      header = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError(number, "expected 4 fields");
    try {
      const NodeIndex s = topology.node_index(fields[0]);
      const NodeIndex t = topology.node_index(fields[1]);
      if (fields[2].empty() && fields[3].empty()) {
        history.declare(s, t);
        continue;
      }
      std::size_t used = 0;
      const double gbps = std::stod(fields[3], &used);
      if (used != fields[3].size()) throw ValidationError("bad volume '" + fields[3] + "'");
      history.add(s, t, parse_timestamp(fields[2]), gbps);
    } catch (const ValidationError& e) {
      throw ParseError(number, e.what());
    } catch (const std::invalid_argument&) {
      throw ParseError(number, "bad volume '" + fields[3] + "'");
    } catch (const std::out_of_range&) {
      throw ParseError(number, "volume out of range");
    }
  }
  if (!header) throw ParseError(number, "empty history file");
  return history;
}

}  // namespace capplan
