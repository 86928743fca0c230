#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "capplan/dimensioning.hpp"
#include "capplan/model.hpp"
#include "capplan/sndlib.hpp"

namespace capplan {

struct ModelSpec {
  std::string name;
  ModelKind kind = ModelKind::kOspf;
  std::filesystem::path sidecar;  // stacked and partition models
};

enum class DemandSource { kUniform, kSndlib, kHistory };

// One JSON document. Relative paths resolve against the config file's
// directory. Every field has a default except "topology".
struct ExperimentConfig {
  std::filesystem::path topology;
  DemandSource demand_source = DemandSource::kUniform;
  double uniform_volume = 1.0;
  std::filesystem::path demand_file;  // sndlib: defaults to the topology file
  std::filesystem::path history_file;
  double growth_rate = 0.0;
  double horizon_years = 0.0;
  std::optional<double> target_max_load = 40.0;

  std::vector<ModelSpec> models{{"ospf", ModelKind::kOspf, {}}, {"sdn", ModelKind::kFullSdn, {}}};
  std::vector<double> ladder_rungs{10.0, 40.0, 100.0};
  double ladder_extension = 100.0;
  double op_factor = 1.0;
  bool include_nominal = true;

  std::vector<std::pair<std::string, std::string>> surge_pairs{{"Madrid", "Stockholm"},
                                                               {"Athens", "Glasgow"}};
  std::vector<double> surge_factors{1, 2, 4, 8, 16, 32, 64};
  std::filesystem::path surge_capacities;  // plan JSON; empty: dimension OSPF first
  bool surge_detail = false;

  std::filesystem::path output_dir = "out";
  int jobs = 1;

  // Throws IoError / ValidationError.
  static ExperimentConfig load(const std::filesystem::path& path);
  static ExperimentConfig parse(const std::string& json_text,
                                const std::filesystem::path& base_dir);
};

// Keeps only the named models. Names not in the config that are plain
// kinds ("ospf", "sdn") are added. Throws ValidationError otherwise.
void select_models(ExperimentConfig& config, const std::vector<std::string>& names);

// Everything loaded and validated from a config.
struct Experiment {
  Network network;
  DemandMatrix demands;
  std::vector<RoutingModel> models;
  DimensioningOptions options;
  std::vector<FailureScenario> failures;  // dimensioning scenarios

  static Experiment load(const ExperimentConfig& config);
};

// Output files are written only after the command succeeds; on a write
// failure the files already written are removed.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {}
  void add(const std::string& name, std::string content);
  std::vector<std::filesystem::path> commit();

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

// Each returns a process exit code: 0 success, 1 I/O error, 2 validation
// failure, 3 infeasible instance. Reports go to `out`, errors to `err`.
int cmd_validate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_dimension(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_surge(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_forecast(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

// model,initial_total_gbps,final_total_gbps,percent_of_ospf
std::string dimension_summary_csv(const std::vector<UpgradePlan>& plans,
                                  const UpgradePlan& ospf_plan);

}  // namespace capplan
