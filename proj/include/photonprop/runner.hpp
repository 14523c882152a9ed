#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "photonprop/observables.hpp"
#include "photonprop/scenario.hpp"
#include "photonprop/time_series.hpp"

namespace photonprop {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// tau column followed by re_/im_/abs_<method> per trace; all traces must
/// share one grid.
std::string trace_csv(const std::vector<TimeSeries>& traces);

std::string scan_csv(const ThicknessScan& scan);

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Writes one CSV per requested output plus `<name>.manifest.json` into
/// out_dir (created if missing). `cfg` is embedded in the manifest.
RunResult run_scenario(const Scenario& s, const ConfigMap& cfg, const std::filesystem::path& out_dir);

/// EIT parameters and the derived ratios as pretty-printed JSON.
std::string eit_params_json(const Scenario& s);

}  // namespace photonprop
