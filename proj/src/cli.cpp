#include "photonprop/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photonprop/errors.hpp"
#include "photonprop/runner.hpp"
#include "photonprop/scenario.hpp"

#ifndef PHOTONPROP_VERSION
#define PHOTONPROP_VERSION "0.0.0"
#endif

namespace photonprop {

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

std::filesystem::path out_dir_or_default(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("PHOTONPROP_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "photonprop_out";
}

ConfigMap with_overrides(ConfigMap cfg, const std::vector<std::string>& sets) {
  for (const auto& s : sets) apply_override(cfg, s);
  return cfg;
}

void print_report(const ValidationReport& rep) {
  for (const auto& e : rep.errors) std::cerr << "error: " << e << "\n";
  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
}

// Validates, then runs. Returns the exit code.
int run_config(const ConfigMap& cfg, const std::filesystem::path& out) {
  const ValidationReport rep = validate(cfg);
  print_report(rep);
  if (!rep.ok()) return kExitValidation;
  const Scenario s = build_scenario(cfg);
  const RunResult res = run_scenario(s, cfg, out);
  for (const auto& w : res.warnings) std::cerr << "warning: " << s.name << ": " << w << "\n";
  for (const auto& f : res.files) std::cout << f.string() << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Single-photon propagation through resonant and EIT absorbers"};
  app.set_version_flag("--version", PHOTONPROP_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  std::string preset;
  std::vector<std::string> sets;
  bool print_config = false;

  auto* run = app.add_subcommand("run", "Run a scenario config (key = value or JSON)");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("--out", out_flag, "Output directory (default: $PHOTONPROP_OUT_DIR or ./photonprop_out)");
  run->add_option("--set", sets, "Override a config key, key=value");

  auto* figure = app.add_subcommand("figure", "Reproduce a figure preset");
  figure->add_option("preset", preset, "Preset name or 'all'")->required();
  figure->add_option("--out", out_flag, "Output directory (default: $PHOTONPROP_OUT_DIR or ./photonprop_out)");
  figure->add_option("--set", sets, "Override a config key in every panel, key=value");
  figure->add_flag("--print-config", print_config, "Print the preset configs instead of running them");

  auto* eit = app.add_subcommand("eit-params", "Print EIT window parameters of a config as JSON");
  eit->add_option("config", config_path, "Scenario config file")->required();
  eit->add_option("--set", sets, "Override a config key, key=value");

  auto* val = app.add_subcommand("validate", "Check a config without running it");
  val->add_option("config", config_path, "Scenario config file")->required();
  val->add_option("--set", sets, "Override a config key, key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return run_config(with_overrides(load_config(config_path), sets), out_dir_or_default(out_flag));

    if (*figure) {
      std::vector<std::string> names;
      if (preset == "all") {
        names = preset_names();
      } else {
        names.push_back(preset);
      }
      std::vector<ConfigMap> panels;
      for (const auto& n : names) {
        for (auto& c : figure_preset(n)) panels.push_back(with_overrides(std::move(c), sets));
      }
      if (print_config) {
        for (std::size_t i = 0; i < panels.size(); ++i) {
          if (i) std::cout << "\n";
          std::cout << to_config_text(panels[i]);
        }
        return 0;
      }
      const auto out = out_dir_or_default(out_flag);
      for (const auto& c : panels) {
        if (const int rc = run_config(c, out); rc != 0) return rc;
      }
      return 0;
    }

    if (*eit) {
      const Scenario s = build_scenario(with_overrides(load_config(config_path), sets));
      std::cout << eit_params_json(s);
      return 0;
    }

    if (*val) {
      const ValidationReport rep = validate(with_overrides(load_config(config_path), sets));
      print_report(rep);
      return rep.ok() ? 0 : kExitValidation;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ValidityError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitConfig;
}

}  // namespace photonprop
