#include "photonprop/runner.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "photonprop/errors.hpp"
#include "photonprop/propagate.hpp"

#ifndef PHOTONPROP_VERSION
#define PHOTONPROP_VERSION "0.0.0"
#endif

namespace photonprop {

namespace {

using nlohmann::ordered_json;

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + p.string() + "'");
  out << content;
  if (!out) throw ConfigError("write failed for '" + p.string() + "'");
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

ordered_json eit_block(const EitParams& p, double delta_ph) {
  ordered_json j;
  j["t_eit"] = p.t_eit;
  j["t_d"] = p.t_d;
  j["delta_eff"] = p.delta_eff;
  j["delta_eit"] = p.delta_eit;
  j["delta_eff_over_delta_ph"] = p.delta_eff / delta_ph;
  j["t_d_over_lifetime"] = p.t_d * 2.0 * delta_ph;
  return j;
}

ordered_json medium_block(const std::optional<AbsorberSpec>& m) {
  if (!m) return nullptr;
  ordered_json j;
  j["kind"] = std::string(m->kind_name());
  j["linewidth"] = m->linewidth();
  if (const EitLine* l = m->eit_line()) {
    j["gamma_m"] = l->gamma_m;
    j["omega"] = l->omega;
  }
  j["thickness"] = m->thickness();
  j["optical_depth"] = m->optical_depth();
  return j;
}

std::optional<EitParams> try_eit(const std::optional<AbsorberSpec>& m) {
  if (!m || !m->eit_line()) return std::nullopt;
  try {
    return eit_params(*m);
  } catch (const ValidityError&) {
    return std::nullopt;
  }
}

// Closed-form area and energy references for the scenario, where one exists.
ordered_json closed_forms(const Scenario& s) {
  ordered_json j = ordered_json::object();
  const PhotonWaveform& w = s.source;
  const double d = w.delta_ph();
  const double u0 = 0.5 / d;
  j["free_space_energy"] = free_space_energy(w);
  if (!s.medium) return j;
  const AbsorberSpec& m = *s.medium;
  const std::string kind(m.kind_name());
  auto part = [&](const EnergySplit& e) {
    switch (w.kind()) {
      case WaveformKind::SymmetricPart:
        return e.symmetric;
      case WaveformKind::AntisymmetricPart:
        return e.antisymmetric;
      default:
        return e.total();
    }
  };
  if (kind == "matched" && w.kind() != WaveformKind::Gaussian && std::abs(m.linewidth() - d) <= 1e-12 * d) {
    j["energy"] = part(u_matched(m.thickness())) * u0;
  } else if (kind == "broad" && w.kind() != WaveformKind::Gaussian && m.linewidth() > d) {
    j["energy"] = part(u_broad(d, m.linewidth(), m.thickness())) * u0;
  } else if (kind == "broad" && w.kind() == WaveformKind::Gaussian) {
    const double f = (d / m.linewidth()) * (d / m.linewidth());
    if (f * m.thickness() < 1.0) j["energy_gaussian_approx"] = u_gaussian(d, m.linewidth(), m.thickness());
  } else if (const auto p = try_eit(s.medium); p && w.kind() == WaveformKind::ExponentialCausal) {
    j["adiabatic_area"] = std::exp(-p->t_eit) / d;
    j["adiabatic_energy"] = u_eit_adiabatic(d, *p);
  }
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string trace_csv(const std::vector<TimeSeries>& traces) {
  if (traces.empty()) throw ValidityError("trace_csv needs at least one trace");
  const TimeGrid& g = traces.front().grid;
  std::vector<std::string> cells{"tau"};
  for (const auto& t : traces) {
    if (!(t.grid == g)) throw ValidityError("trace_csv: traces use different grids");
    const std::string m(to_string(t.provenance));
    cells.push_back("re_" + m);
    cells.push_back("im_" + m);
    cells.push_back("abs_" + m);
  }
  std::string out;
  append_row(out, cells);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cells.assign(1, format_double(g.at(i)));
    for (const auto& t : traces) {
      const auto v = t.amplitude[i];
      cells.push_back(format_double(v.real()));
      cells.push_back(format_double(v.imag()));
      cells.push_back(format_double(std::abs(v)));
    }
    append_row(out, cells);
  }
  return out;
}

std::string scan_csv(const ThicknessScan& scan) {
  std::string out;
  append_row(out, {"thickness", "u_s", "u_a", "u_total", "beer"});
  for (const auto& r : scan.rows) {
    append_row(out, {format_double(r.thickness), format_double(r.u_s), format_double(r.u_a), format_double(r.u_total),
                     format_double(r.beer)});
  }
  return out;
}

std::string eit_params_json(const Scenario& s) {
  if (!s.medium || !s.medium->eit_line()) throw ValidityError("eit-params requires an eit medium");
  return eit_block(eit_params(*s.medium), s.source.delta_ph()).dump(2) + "\n";
}

RunResult run_scenario(const Scenario& s, const ConfigMap& cfg, const std::filesystem::path& out_dir) {
  RunResult res;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  ordered_json manifest;
  manifest["tool"] = "photonprop";
  manifest["version"] = PHOTONPROP_VERSION;
  manifest["scenario"] = s.name;
  manifest["reference_rate"] = s.reference_rate;
  manifest["config"] = cfg;
  manifest["source"] = {{"kind", std::string(to_string(s.source.kind()))},
                        {"delta_ph", s.source.delta_ph()},
                        {"correlation_time", s.source.correlation_time()},
                        {"lifetime", s.source.lifetime()}};
  manifest["medium"] = medium_block(s.medium);
  if (s.grid) {
    manifest["grid"] = {{"t_start", s.grid->t_start()},
                        {"t_end", s.grid->t_end()},
                        {"n_points", s.grid->size()},
                        {"spacing", s.grid->spacing()}};
  } else {
    manifest["grid"] = nullptr;
  }
  ordered_json methods = ordered_json::array();
  for (auto m : s.methods) methods.push_back(std::string(to_string(m)));
  manifest["methods"] = methods;
  ordered_json outputs = ordered_json::array();
  for (auto o : s.outputs) outputs.push_back(std::string(to_string(o)));
  manifest["outputs"] = outputs;

  ordered_json derived = ordered_json::object();
  const auto eit = try_eit(s.medium);
  if (eit) derived["eit"] = eit_block(*eit, s.source.delta_ph());
  manifest["derived"] = derived;
  manifest["closed_forms"] = closed_forms(s);

  auto emit = [&](const std::string& suffix, const std::string& content) {
    const auto path = out_dir / (s.name + suffix);
    write_file(path, content);
    res.files.push_back(path);
  };

  std::vector<TimeSeries> traces;
  ordered_json diagnostics = ordered_json::object();
  if (s.wants(OutputKind::TimeTrace) || s.wants(OutputKind::AreasAndEnergies)) {
    for (auto m : s.methods) {
      traces.push_back(propagate(m, s.source, s.medium, *s.grid, s.numeric, s.analytic));
      if (const auto& d = traces.back().diagnostics) {
        diagnostics[std::string(to_string(m))] = {{"fft_size", d->fft_size},
                                                  {"window", d->window},
                                                  {"period", d->period},
                                                  {"refinements", d->refinements},
                                                  {"drift", d->drift},
                                                  {"asymptotic_order", d->asymptotic_order}};
      }
    }
  }
  manifest["diagnostics"] = diagnostics;

  ordered_json files = ordered_json::array();
  for (auto o : s.outputs) {
    switch (o) {
      case OutputKind::TimeTrace:
        emit(".csv", trace_csv(traces));
        break;
      case OutputKind::ThicknessScan: {
        const double width = s.medium ? s.medium->linewidth() : s.source.delta_ph();
        emit("_scan.csv", scan_csv(thickness_scan(s.scan->kind, s.source.delta_ph(), width, s.scan->thickness)));
        break;
      }
      case OutputKind::EitParams: {
        if (!eit) throw ValidityError("eit_params output requires a valid eit medium");
        std::string out;
        append_row(out, {"t_eit", "t_d", "delta_eff", "delta_eit", "delta_eff_over_delta_ph", "t_d_over_lifetime"});
        const double d = s.source.delta_ph();
        append_row(out, {format_double(eit->t_eit), format_double(eit->t_d), format_double(eit->delta_eff),
                         format_double(eit->delta_eit), format_double(eit->delta_eff / d),
                         format_double(eit->t_d * 2.0 * d)});
        emit("_eit_params.csv", out);
        break;
      }
      case OutputKind::AreasAndEnergies: {
        std::string out;
        append_row(out, {"method", "pulse_area", "integrated_intensity", "truncated"});
        std::string cut;
        for (const auto& t : traces) {
          const auto area = pulse_area(t);
          const auto energy = integrated_intensity(t);
          const bool truncated = area.truncated || energy.truncated;
          if (truncated) cut += (cut.empty() ? "" : ", ") + std::string(to_string(t.provenance));
          append_row(out, {std::string(to_string(t.provenance)), format_double(area.value),
                           format_double(energy.value), truncated ? "true" : "false"});
        }
        if (!cut.empty()) {
          res.warnings.push_back("grid edges exceed 1e-6, areas/energies are truncated for: " + cut);
        }
        emit("_areas.csv", out);
        break;
      }
      case OutputKind::PhiPlus: {
        if (!eit) throw ValidityError("phi_plus output requires a valid eit medium");
        std::string out;
        std::vector<std::string> cells{"tau"};
        for (double r : s.phi_ratios) cells.push_back("phi_plus_" + format_double(r));
        append_row(out, cells);
        for (std::size_t i = 0; i < s.grid->size(); ++i) {
          const double tau = s.grid->at(i);
          cells.assign(1, format_double(tau));
          for (double r : s.phi_ratios) cells.push_back(format_double(phi_plus(r, eit->delta_eff * (tau - eit->t_d))));
          append_row(out, cells);
        }
        emit("_phi_plus.csv", out);
        break;
      }
    }
  }
  for (const auto& f : res.files) files.push_back(f.filename().string());
  manifest["files"] = files;
  manifest["warnings"] = res.warnings;
  const auto mpath = out_dir / (s.name + ".manifest.json");
  write_file(mpath, manifest.dump(2) + "\n");
  res.files.push_back(mpath);
  return res;
}

}  // namespace photonprop
