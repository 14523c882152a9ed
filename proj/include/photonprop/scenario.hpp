#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "photonprop/media.hpp"
#include "photonprop/observables.hpp"
#include "photonprop/propagate.hpp"
#include "photonprop/waveforms.hpp"

namespace photonprop {

enum class OutputKind { TimeTrace, ThicknessScan, EitParams, AreasAndEnergies, PhiPlus };

std::string_view to_string(OutputKind k);
OutputKind parse_output_kind(std::string_view name);

/// Flat key -> value view of a config file. Keys look like `source.delta_ph`.
using ConfigMap = std::map<std::string, std::string>;

/// `key = value` lines with `#` comments. Throws ConfigError.
ConfigMap parse_key_value(std::string_view text);

/// JSON object; nested objects are flattened with '.', arrays become
/// comma-separated lists. Throws ConfigError.
ConfigMap parse_json_config(std::string_view text);

/// JSON when the first non-blank character is '{', key-value otherwise.
ConfigMap parse_config_text(std::string_view text);
ConfigMap load_config(const std::filesystem::path& path);

/// Applies a `key=value` override. Throws ConfigError on malformed input.
void apply_override(ConfigMap& cfg, std::string_view assignment);

/// Serializes back to key-value text (sorted keys).
std::string to_config_text(const ConfigMap& cfg);

struct ScanSpec {
  ScanKind kind = ScanKind::Broad;
  std::vector<double> thickness;
};

struct Scenario {
  std::string name;
  std::string reference_rate;
  PhotonWaveform source;
  std::optional<AbsorberSpec> medium;
  std::optional<TimeGrid> grid;
  std::vector<Provenance> methods;
  std::vector<OutputKind> outputs;
  AnalyticOptions analytic;
  NumericOptions numeric;
  std::optional<ScanSpec> scan;
  std::vector<double> phi_ratios;

  bool wants(OutputKind k) const;
};

/// Throws ConfigError for unknown/missing keys or unparsable values and
/// ValidityError when a value violates a model precondition.
Scenario build_scenario(const ConfigMap& cfg);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
};

/// Collects every violated precondition without running anything.
/// Throws ConfigError for parse-level problems.
ValidationReport validate(const ConfigMap& cfg);

/// Names accepted by figure_preset.
const std::vector<std::string>& preset_names();

/// One config per output panel. Throws ConfigError listing valid names.
std::vector<ConfigMap> figure_preset(std::string_view name);

}  // namespace photonprop
