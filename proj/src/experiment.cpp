#include "capplan/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "capplan/demands.hpp"
#include "capplan/error.hpp"
#include "capplan/forecast.hpp"
#include "capplan/graph_checks.hpp"
#include "capplan/sidecar.hpp"
#include "capplan/surge.hpp"

namespace capplan {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void check_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": '" + key + "' has the wrong type");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

ModelSpec parse_model(const json& m, const std::filesystem::path& base) {
  ModelSpec spec;
  if (m.is_string()) {
    spec.name = m.get<std::string>();
    spec.kind = parse_model_kind(spec.name);
    if (spec.kind == ModelKind::kStacked || spec.kind == ModelKind::kPartition) {
      throw ValidationError("model '" + spec.name + "' needs a sidecar file");
    }
    return spec;
  }
  if (!m.is_object()) throw ValidationError("models: entries must be strings or objects");
  check_keys(m, "models", {"name", "kind", "sidecar"});
  spec.kind = parse_model_kind(get<std::string>(m, "kind", "models"));
  spec.name = m.contains("name") ? get<std::string>(m, "name", "models") : to_string(spec.kind);
  if (spec.name.empty() || spec.name.find_first_of(",/\\ ") != std::string::npos) {
    throw ValidationError("model name '" + spec.name + "' must be non-empty without , / \\ or spaces");
  }
  if (m.contains("sidecar")) spec.sidecar = resolve(base, get<std::string>(m, "sidecar", "models"));
  const bool needs = spec.kind == ModelKind::kStacked || spec.kind == ModelKind::kPartition;
  if (needs && spec.sidecar.empty()) {
    throw ValidationError("model '" + spec.name + "' needs a sidecar file");
  }
  if (!needs && !spec.sidecar.empty()) {
    throw ValidationError("model '" + spec.name + "' takes no sidecar file");
  }
  return spec;
}

NodeIndex node_by_id(const Topology& topology, const std::string& id, const std::string& where) {
  try {
    return topology.node_index(id);
  } catch (const Error&) {
    throw ValidationError(where + ": unknown node '" + id + "'");
  }
}

// Maps the DEMANDS of a SNDlib file onto `topology` by node id.
DemandMatrix demands_from_network(const Network& source, const Topology& topology) {
  DemandMatrix out(topology.node_count());
  const Topology& st = source.topology;
  for (NodeIndex s = 0; s < static_cast<NodeIndex>(st.node_count()); ++s) {
    for (NodeIndex t = 0; t < static_cast<NodeIndex>(st.node_count()); ++t) {
      const double v = source.demands.at(s, t);
      if (v <= 0.0) continue;
      out.add(node_by_id(topology, st.node(s).id, "demand file"),
              node_by_id(topology, st.node(t).id, "demand file"), v);
    }
  }
  return out;
}

DemandMatrix forecast_from_history(const ExperimentConfig& config, const Topology& topology) {
  std::ifstream in(config.history_file);
  if (!in) throw IoError("cannot read '" + config.history_file.string() + "'");
  return forecast(parse_history_csv(in, topology), config.growth_rate, config.horizon_years);
}

SurgeSpec surge_spec(const ExperimentConfig& config, const Topology& topology) {
  SurgeSpec spec;
  for (const auto& [a, b] : config.surge_pairs) {
    spec.pairs.emplace_back(node_by_id(topology, a, "surge"), node_by_id(topology, b, "surge"));
  }
  spec.factors = config.surge_factors;
  validate_surge_spec(topology, spec);
  return spec;
}

int report(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return static_cast<int>(e.kind());
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return report(e, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
}

UpgradePlan dimension_model(const Experiment& exp, const RoutingModel& model) {
  const Topology& t = exp.network.topology;
  const auto initial = initial_capacities(t, exp.demands, model, exp.options);
  return greedy_dimension(t, exp.demands, model, exp.failures, initial, exp.options);
}

std::string format_percent(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.parent_path());
}

ExperimentConfig ExperimentConfig::parse(const std::string& json_text,
                                         const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  check_keys(doc, "config",
             {"topology", "demands", "target_max_load_gbps", "models", "ladder", "op_factor",
              "include_nominal", "surge", "output_dir", "jobs"});
  ExperimentConfig c;
  if (!doc.contains("topology")) throw ValidationError("config: 'topology' is required");
  c.topology = resolve(base_dir, get<std::string>(doc, "topology", "config"));

  if (doc.contains("demands")) {
    const json& d = doc["demands"];
    if (!d.is_object()) throw ValidationError("demands: must be an object");
    check_keys(d, "demands", {"source", "volume_gbps", "file", "growth_rate", "horizon_years"});
    const std::string source =
        d.contains("source") ? get<std::string>(d, "source", "demands") : "uniform";
    auto forbid = [&](std::initializer_list<const char*> keys) {
      for (const char* k : keys) {
        if (d.contains(k)) {
          throw ValidationError("demands: '" + std::string(k) + "' does not apply to source '" +
                                source + "'");
        }
      }
    };
    if (source == "uniform") {
      c.demand_source = DemandSource::kUniform;
      forbid({"file", "growth_rate", "horizon_years"});
      if (d.contains("volume_gbps")) c.uniform_volume = get<double>(d, "volume_gbps", "demands");
      if (!(c.uniform_volume > 0.0)) throw ValidationError("demands: volume_gbps must be positive");
    } else if (source == "sndlib") {
      c.demand_source = DemandSource::kSndlib;
      forbid({"volume_gbps", "growth_rate", "horizon_years"});
      if (d.contains("file")) c.demand_file = resolve(base_dir, get<std::string>(d, "file", "demands"));
    } else if (source == "history") {
      c.demand_source = DemandSource::kHistory;
      forbid({"volume_gbps"});
      if (!d.contains("file")) throw ValidationError("demands: source 'history' needs 'file'");
      c.history_file = resolve(base_dir, get<std::string>(d, "file", "demands"));
      if (d.contains("growth_rate")) c.growth_rate = get<double>(d, "growth_rate", "demands");
      if (d.contains("horizon_years")) c.horizon_years = get<double>(d, "horizon_years", "demands");
      if (!(c.growth_rate >= 0.0) || !(c.horizon_years >= 0.0)) {
        throw ValidationError("demands: growth_rate and horizon_years must be >= 0");
      }
    } else {
      throw ValidationError("demands: unknown source '" + source + "'");
    }
  }

  if (doc.contains("target_max_load_gbps")) {
    const json& v = doc["target_max_load_gbps"];
    if (v.is_null()) {
      c.target_max_load.reset();
    } else {
      c.target_max_load = get<double>(doc, "target_max_load_gbps", "config");
      if (!(*c.target_max_load > 0.0)) {
        throw ValidationError("config: target_max_load_gbps must be positive");
      }
    }
  }

  if (doc.contains("models")) {
    if (!doc["models"].is_array() || doc["models"].empty()) {
      throw ValidationError("models: must be a non-empty array");
    }
    c.models.clear();
    std::set<std::string> names;
    for (const json& m : doc["models"]) {
      c.models.push_back(parse_model(m, base_dir));
      if (!names.insert(c.models.back().name).second) {
        throw ValidationError("models: duplicate name '" + c.models.back().name + "'");
      }
    }
  }

  if (doc.contains("ladder")) {
    const json& l = doc["ladder"];
    if (!l.is_object()) throw ValidationError("ladder: must be an object");
    check_keys(l, "ladder", {"rungs_gbps", "extension_gbps"});
    if (l.contains("rungs_gbps")) c.ladder_rungs = get<std::vector<double>>(l, "rungs_gbps", "ladder");
    if (l.contains("extension_gbps")) c.ladder_extension = get<double>(l, "extension_gbps", "ladder");
    CapacityLadder check(c.ladder_rungs, c.ladder_extension);
  }
  if (doc.contains("op_factor")) {
    c.op_factor = get<double>(doc, "op_factor", "config");
    if (!(c.op_factor > 0.0)) throw ValidationError("config: op_factor must be positive");
  }
  if (doc.contains("include_nominal")) {
    c.include_nominal = get<bool>(doc, "include_nominal", "config");
  }

  if (doc.contains("surge")) {
    const json& s = doc["surge"];
    if (!s.is_object()) throw ValidationError("surge: must be an object");
    check_keys(s, "surge", {"pairs", "factors", "capacities", "detail"});
    if (s.contains("pairs")) {
      c.surge_pairs.clear();
      if (!s["pairs"].is_array()) throw ValidationError("surge: 'pairs' must be an array");
      for (const json& p : s["pairs"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
          throw ValidationError("surge: each pair must be [\"src\", \"dst\"]");
        }
        c.surge_pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    }
    if (s.contains("factors")) c.surge_factors = get<std::vector<double>>(s, "factors", "surge");
    if (s.contains("capacities")) {
      c.surge_capacities = resolve(base_dir, get<std::string>(s, "capacities", "surge"));
    }
    if (s.contains("detail")) c.surge_detail = get<bool>(s, "detail", "surge");
  }

  if (doc.contains("output_dir")) {
    c.output_dir = resolve(base_dir, get<std::string>(doc, "output_dir", "config"));
  } else {
    c.output_dir = base_dir / "out";
  }
  if (doc.contains("jobs")) {
    c.jobs = get<int>(doc, "jobs", "config");
    if (c.jobs < 1) throw ValidationError("config: jobs must be >= 1");
  }
  return c;
}

void select_models(ExperimentConfig& config, const std::vector<std::string>& names) {
  std::vector<ModelSpec> picked;
  std::set<std::string> seen;
  for (const std::string& name : names) {
    if (!seen.insert(name).second) continue;
    auto it = std::find_if(config.models.begin(), config.models.end(),
                           [&](const ModelSpec& m) { return m.name == name; });
    if (it != config.models.end()) {
      picked.push_back(*it);
    } else if (name == "ospf" || name == "sdn") {
      picked.push_back({name, parse_model_kind(name), {}});
    } else {
      throw ValidationError("model '" + name + "' is not defined in the config");
    }
  }
  if (picked.empty()) throw ValidationError("no model selected");
  config.models = std::move(picked);
}

Experiment Experiment::load(const ExperimentConfig& config) {
  Experiment e;
  e.network = load_sndlib(config.topology);
  const Topology& t = e.network.topology;
  switch (config.demand_source) {
    case DemandSource::kUniform:
      e.demands = uniform_demands(t, config.uniform_volume);
      break;
    case DemandSource::kSndlib:
      e.demands = config.demand_file.empty()
                      ? e.network.demands
                      : demands_from_network(load_sndlib(config.demand_file), t);
      break;
    case DemandSource::kHistory:
      e.demands = forecast_from_history(config, t);
      break;
  }
  if (e.demands.all_zero()) throw ValidationError("the demand matrix is all zero");
  if (config.target_max_load) e.demands = scale_demands(t, e.demands, *config.target_max_load);

  for (const ModelSpec& spec : config.models) {
    switch (spec.kind) {
      case ModelKind::kOspf: {
        RoutingModel m = RoutingModel::ospf();
        m.name = spec.name;
        e.models.push_back(std::move(m));
        break;
      }
      case ModelKind::kFullSdn: {
        RoutingModel m = RoutingModel::full_sdn();
        m.name = spec.name;
        e.models.push_back(std::move(m));
        break;
      }
      case ModelKind::kStacked:
        e.models.push_back(RoutingModel::stacked(load_sidecar(spec.sidecar, t).placement, spec.name));
        break;
      case ModelKind::kPartition: {
        Sidecar sc = load_sidecar(spec.sidecar, t);
        if (!sc.partition) {
          throw ValidationError("sidecar '" + spec.sidecar.string() + "' has no \"subdomains\"");
        }
        const PartitionReport r = validate_partition(t, *sc.partition);
        if (!r.ok()) {
          throw ValidationError("partition '" + spec.sidecar.string() + "' is invalid:\n" +
                                r.to_string());
        }
        e.models.push_back(RoutingModel::partitioned(*sc.partition, spec.name));
        break;
      }
    }
  }
  e.options.ladder = CapacityLadder(config.ladder_rungs, config.ladder_extension);
  e.options.op_factor = config.op_factor;
  e.options.jobs = config.jobs;
  e.failures = enumerate_single_link_failures(t, config.include_nominal);
  return e;
}

void OutputSet::add(const std::string& name, std::string content) {
  files_.emplace_back(name, std::move(content));
}

std::vector<std::filesystem::path> OutputSet::commit() {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create '" + dir_.string() + "': " + ec.message());
  std::vector<fs::path> staged;
  auto cleanup = [&](const std::vector<fs::path>& paths) {
    for (const fs::path& p : paths) fs::remove(p, ec);
  };
  for (const auto& [name, content] : files_) {
    const fs::path tmp = dir_ / (name + ".partial");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      staged.push_back(tmp);
      cleanup(staged);
      throw IoError("cannot write '" + tmp.string() + "'");
    }
    staged.push_back(tmp);
  }
  std::vector<fs::path> written;
  for (std::size_t i = 0; i < files_.size(); ++i) {
    const fs::path target = dir_ / files_[i].first;
    fs::rename(staged[i], target, ec);
    if (ec) {
      cleanup(written);
      cleanup(staged);
      throw IoError("cannot write '" + target.string() + "': " + ec.message());
    }
    written.push_back(target);
  }
  files_.clear();
  return written;
}

std::string dimension_summary_csv(const std::vector<UpgradePlan>& plans,
                                  const UpgradePlan& ospf_plan) {
  std::ostringstream out;
  out << "model,initial_total_gbps,final_total_gbps,percent_of_ospf\n";
  for (const UpgradePlan& p : plans) {
    out << p.model << ',' << format_number(p.initial_total()) << ','
        << format_number(p.final_total()) << ',' << format_percent(normalized_total(p, ospf_plan))
        << '\n';
  }
  return out.str();
}

int cmd_validate(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Network network = load_sndlib(config.topology);
    const Topology& t = network.topology;
    out << "topology " << config.topology.string() << ": " << t.node_count() << " nodes, "
        << t.link_count() << " links\n";
    int status = 0;
    const BridgeReport bridges = check_two_edge_connected(t);
    if (bridges.two_edge_connected) {
      out << "2-edge-connected: yes\n";
    } else {
      out << "2-edge-connected: no, bridges:";
      for (LinkIndex l : bridges.bridges) out << ' ' << t.link(l).id;
      out << '\n';
      status = static_cast<int>(ErrorKind::kValidation);
    }
    for (const ModelSpec& spec : config.models) {
      if (spec.sidecar.empty()) continue;
      const Sidecar sc = load_sidecar(spec.sidecar, t);
      if (spec.kind == ModelKind::kStacked) {
        out << "model " << spec.name << ": " << sc.placement.sdn_nodes.size() << " SDN nodes\n";
        continue;
      }
      if (!sc.partition) {
        out << "model " << spec.name << ": sidecar has no \"subdomains\"\n";
        status = static_cast<int>(ErrorKind::kValidation);
        continue;
      }
      const PartitionReport r = validate_partition(t, *sc.partition);
      if (r.ok()) {
        out << "model " << spec.name << ": partition ok, " << sc.partition->subdomain_count()
            << " sub-domains, " << sc.partition->borders.size() << " borders\n";
      } else {
        out << "model " << spec.name << ": partition invalid\n" << r.to_string();
        if (!r.to_string().empty() && r.to_string().back() != '\n') out << '\n';
        status = static_cast<int>(ErrorKind::kValidation);
      }
    }
    if (!config.surge_pairs.empty()) {
      try {
        surge_spec(config, t);
      } catch (const ValidationError& e) {
        out << "surge: " << e.what() << '\n';
        status = static_cast<int>(ErrorKind::kValidation);
      }
    }
    if (status == 0) {
      // Demand sources and model construction.
      Experiment::load(config);
      out << "ok\n";
    }
    return status;
  });
}

int cmd_dimension(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Experiment exp = Experiment::load(config);
    const Topology& t = exp.network.topology;
    std::vector<UpgradePlan> plans;
    std::optional<UpgradePlan> ospf_plan;
    for (const RoutingModel& model : exp.models) {
      plans.push_back(dimension_model(exp, model));
      if (model.kind == ModelKind::kOspf && !ospf_plan) ospf_plan = plans.back();
    }
    if (!ospf_plan) ospf_plan = dimension_model(exp, RoutingModel::ospf());

    OutputSet files(config.output_dir);
    for (const UpgradePlan& p : plans) {
      files.add("plan_" + p.model + ".json", plan_to_json(p, t));
      files.add("plan_" + p.model + ".csv", plan_to_csv(p, t));
    }
    const std::string summary = dimension_summary_csv(plans, *ospf_plan);
    files.add("dimension_summary.csv", summary);
    files.commit();
    out << summary;
    return 0;
  });
}

int cmd_surge(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Experiment exp = Experiment::load(config);
    const Topology& t = exp.network.topology;
    if (config.surge_pairs.empty()) throw ValidationError("surge: no pairs configured");
    const SurgeSpec spec = surge_spec(config, t);
    const std::vector<double> capacity =
        config.surge_capacities.empty()
            ? dimension_model(exp, RoutingModel::ospf()).final_capacities
            : capacities_from_plan_json(read_file(config.surge_capacities), t);
    const auto failures = enumerate_single_link_failures(t, false);

    std::string table, detail;
    bool first = true;
    for (const RoutingModel& model : exp.models) {
      const auto rows = surge_congestion(t, capacity, exp.demands, spec, model, failures,
                                         exp.options.op_factor, exp.options.jobs);
      table += surge_to_csv(model.name, rows, first);
      if (config.surge_detail) detail += surge_detail_to_csv(model.name, rows, t, failures, first);
      first = false;
    }
    OutputSet files(config.output_dir);
    files.add("surge.csv", table);
    if (config.surge_detail) files.add("surge_detail.csv", detail);
    files.commit();
    out << table;
    return 0;
  });
}

int cmd_forecast(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.demand_source != DemandSource::kHistory) {
      throw ValidationError("forecast needs demands with source 'history'");
    }
    const Network network = load_sndlib(config.topology);
    const Topology& t = network.topology;
    const DemandMatrix d = forecast_from_history(config, t);
    std::ostringstream csv;
    csv << "src,dst,gbps\n";
    std::vector<NodeIndex> by_rank(t.node_count());
    for (NodeIndex v = 0; v < static_cast<NodeIndex>(t.node_count()); ++v) {
      by_rank[t.node_rank(v)] = v;
    }
    for (NodeIndex s : by_rank) {
      for (NodeIndex x : by_rank) {
        if (d.at(s, x) > 0.0) {
          csv << t.node(s).id << ',' << t.node(x).id << ',' << format_number(d.at(s, x)) << '\n';
        }
      }
    }
    OutputSet files(config.output_dir);
    files.add("forecast_demands.csv", csv.str());
    files.commit();
    out << csv.str();
    return 0;
  });
}

}  // namespace capplan
