#include <CLI11.hpp>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "capplan/error.hpp"
#include "capplan/experiment.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link capacity dimensioning for fault-tolerant IP backbones under OSPF, "
               "full SDN, stacked hybrid SDN/OSPF and SDN Partitioning"};
  app.require_subcommand(1);

  std::string config_path;
  std::string models;
  std::string out_dir;
  int jobs = 0;
  bool detail = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sub->add_option("--model", models, "Comma-separated model names from the config");
    sub->add_option("--out", out_dir, "Output directory (overrides the config)");
    sub->add_option("--jobs", jobs, "Worker threads (overrides the config)")
        ->check(CLI::PositiveNumber);
  };
  CLI::App* validate = app.add_subcommand("validate", "Check topology, sidecars and config");
  CLI::App* dimension = app.add_subcommand("dimension", "Greedy capacity plan per model");
  CLI::App* surge = app.add_subcommand("surge", "Congestion under surging demands");
  CLI::App* forecast = app.add_subcommand("forecast", "Demand forecast from history");
  for (CLI::App* sub : {validate, dimension, surge, forecast}) add_common(sub);
  surge->add_flag("--detail", detail, "Also write the per-scenario table");

  CLI11_PARSE(app, argc, argv);

  capplan::ExperimentConfig config;
  try {
    config = capplan::ExperimentConfig::load(config_path);
    if (!models.empty()) capplan::select_models(config, split_list(models));
  } catch (const capplan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  }
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (jobs > 0) config.jobs = jobs;
  if (detail) config.surge_detail = true;

  if (validate->parsed()) return capplan::cmd_validate(config, std::cout, std::cerr);
  if (dimension->parsed()) return capplan::cmd_dimension(config, std::cout, std::cerr);
  if (surge->parsed()) return capplan::cmd_surge(config, std::cout, std::cerr);
  return capplan::cmd_forecast(config, std::cout, std::cerr);
}
