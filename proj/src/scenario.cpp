#include "photonprop/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "photonprop/errors.hpp"

namespace photonprop {

namespace {

constexpr std::array<std::pair<OutputKind, std::string_view>, 5> kOutputNames{{
    {OutputKind::TimeTrace, "time_trace"},
    {OutputKind::ThicknessScan, "thickness_scan"},
    {OutputKind::EitParams, "eit_params"},
    {OutputKind::AreasAndEnergies, "areas_and_energies"},
    {OutputKind::PhiPlus, "phi_plus"},
}};

const std::set<std::string, std::less<>> kKnownKeys{
    "name",          "reference_rate",       "source.kind",          "source.delta_ph",
    "medium.kind",   "medium.linewidth",     "medium.gamma_m",       "medium.omega",
    "medium.thickness", "grid.t_start",      "grid.t_end",           "grid.n_points",
    "methods",       "outputs",              "eit.simplified",       "scan.kind",
    "scan.thickness", "phi.ratios",          "numeric.window_factor", "numeric.min_samples",
    "numeric.asymptotic_order", "numeric.tolerance", "numeric.max_refinements",
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (true) {
    const auto pos = s.find(',');
    const auto item = trim(s.substr(0, pos));
    if (!item.empty()) out.emplace_back(item);
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long long parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("'" + std::string(key) + "': expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + std::string(key) + "': expected true or false, got '" + std::string(text) + "'");
}

class Reader {
 public:
  explicit Reader(const ConfigMap& cfg) : cfg_(cfg) {}

  bool has(const std::string& key) const { return cfg_.count(key) != 0; }

  const std::string& str(const std::string& key) const {
    const auto it = cfg_.find(key);
    if (it == cfg_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  }
  std::string str_or(const std::string& key, std::string fallback) const {
    return has(key) ? str(key) : std::move(fallback);
  }
  double num(const std::string& key) const { return parse_double(key, str(key)); }
  double num_or(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }
  long long integer_or(const std::string& key, long long fallback) const {
    return has(key) ? parse_int(key, str(key)) : fallback;
  }

 private:
  const ConfigMap& cfg_;
};

std::vector<double> parse_thickness_list(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text.find(':') != std::string_view::npos) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    if (b == std::string_view::npos) {
      throw ConfigError("'" + std::string(key) + "': range must be start:stop:count");
    }
    const double start = parse_double(key, text.substr(0, a));
    const double stop = parse_double(key, text.substr(a + 1, b - a - 1));
    const long long count = parse_int(key, text.substr(b + 1));
    if (count < 1) throw ConfigError("'" + std::string(key) + "': count must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
      out.push_back(count == 1 ? start
                               : start + static_cast<double>(i) * (stop - start) / static_cast<double>(count - 1));
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(key, item));
  return out;
}

bool same_rate(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); }

void flatten(const nlohmann::json& j, const std::string& prefix, ConfigMap& out) {
  auto scalar = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw ConfigError("unsupported JSON value " + v.dump());
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (prefix.empty()) throw ConfigError("JSON config must be an object");
  if (j.is_array()) {
    std::string joined;
    for (const auto& v : j) {
      if (!joined.empty()) joined += ",";
      joined += scalar(v);
    }
    out[prefix] = joined;
    return;
  }
  if (j.is_null()) return;
  out[prefix] = scalar(j);
}

}  // namespace

std::string_view to_string(OutputKind k) {
  for (const auto& [kind, name] : kOutputNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

OutputKind parse_output_kind(std::string_view name) {
  for (const auto& [kind, n] : kOutputNames) {
    if (n == name) return kind;
  }
  throw ConfigError("unknown output '" + std::string(name) +
                    "' (expected time_trace, thickness_scan, eit_params, areas_and_energies or phi_plus)");
}

ConfigMap parse_key_value(std::string_view text) {
  ConfigMap out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (out.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigMap parse_json_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  ConfigMap out;
  flatten(j, "", out);
  return out;
}

ConfigMap parse_config_text(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json_config(text);
  return parse_key_value(text);
}

ConfigMap load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(ConfigMap& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override must be key=value, got '" + std::string(assignment) + "'");
  const std::string key(trim(assignment.substr(0, eq)));
  if (key.empty()) throw ConfigError("override has an empty key");
  cfg[key] = std::string(trim(assignment.substr(eq + 1)));
}

std::string to_config_text(const ConfigMap& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg) out += k + " = " + v + "\n";
  return out;
}

bool Scenario::wants(OutputKind k) const {
  return std::find(outputs.begin(), outputs.end(), k) != outputs.end();
}

Scenario build_scenario(const ConfigMap& cfg) {
  for (const auto& [k, v] : cfg) {
    if (!kKnownKeys.count(k)) throw ConfigError("unknown key '" + k + "'");
  }
  const Reader r(cfg);
  const std::string name = r.str("name");
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("'name' must be a non-empty file stem, got '" + name + "'");
  }

  PhotonWaveform source(parse_waveform_kind(r.str("source.kind")), r.num("source.delta_ph"));

  std::optional<AbsorberSpec> medium;
  const std::string mk = r.str_or("medium.kind", "none");
  if (mk == "matched") {
    medium = AbsorberSpec::matched(r.num("medium.linewidth"), r.num("medium.thickness"));
  } else if (mk == "broad") {
    medium = AbsorberSpec::broad(r.num("medium.linewidth"), r.num("medium.thickness"));
  } else if (mk == "eit") {
    medium = AbsorberSpec::eit(r.num("medium.linewidth"), r.num("medium.gamma_m"), r.num("medium.omega"),
                               r.num("medium.thickness"));
  } else if (mk == "fe57-siderite") {
    medium = fe57_siderite(r.num_or("medium.omega", 20.0), r.num_or("medium.thickness", 30.0));
  } else if (mk != "none") {
    throw ConfigError("unknown medium.kind '" + mk + "' (expected none, matched, broad, eit or fe57-siderite)");
  }

  std::vector<OutputKind> outputs;
  for (const auto& o : split_list(r.str_or("outputs", "time_trace"))) outputs.push_back(parse_output_kind(o));
  if (outputs.empty()) throw ConfigError("'outputs' is empty");

  std::vector<Provenance> methods;
  for (const auto& m : split_list(r.str_or("methods", ""))) methods.push_back(parse_provenance(m));

  std::optional<TimeGrid> grid;
  const bool needs_grid = std::any_of(outputs.begin(), outputs.end(), [](OutputKind k) {
    return k == OutputKind::TimeTrace || k == OutputKind::AreasAndEnergies || k == OutputKind::PhiPlus;
  });
  if (needs_grid || r.has("grid.t_start") || r.has("grid.t_end") || r.has("grid.n_points")) {
    const long long n = parse_int("grid.n_points", r.str("grid.n_points"));
    if (n < 2) throw ValidityError("time grid needs at least 2 points, got " + std::to_string(n));
    grid.emplace(r.num("grid.t_start"), r.num("grid.t_end"), static_cast<std::size_t>(n));
  }

  Scenario s{name, r.str_or("reference_rate", "gamma_ref"), source, medium, grid, methods, outputs, {}, {}, {}, {}};
  if (r.has("eit.simplified")) s.analytic.eit_simplified = parse_bool("eit.simplified", r.str("eit.simplified"));

  s.numeric.window_factor = r.num_or("numeric.window_factor", s.numeric.window_factor);
  s.numeric.tolerance = r.num_or("numeric.tolerance", s.numeric.tolerance);
  const long long min_samples = r.integer_or("numeric.min_samples", static_cast<long long>(s.numeric.min_samples));
  const long long order = r.integer_or("numeric.asymptotic_order", s.numeric.asymptotic_order);
  const long long refinements = r.integer_or("numeric.max_refinements", s.numeric.max_refinements);
  if (min_samples < 2 || order < 0 || order > 12 || refinements < 1 || refinements > 6 ||
      !(s.numeric.window_factor > 0.0) || !(s.numeric.tolerance > 0.0)) {
    throw ValidityError(
        "numeric options out of range (min_samples >= 2, 0 <= asymptotic_order <= 12, 1 <= max_refinements <= 6, "
        "window_factor > 0, tolerance > 0)");
  }
  s.numeric.min_samples = static_cast<std::size_t>(min_samples);
  s.numeric.asymptotic_order = static_cast<int>(order);
  s.numeric.max_refinements = static_cast<int>(refinements);

  if (s.wants(OutputKind::ThicknessScan) || r.has("scan.thickness")) {
    ScanSpec scan;
    const std::string default_kind = medium && medium->kind_name() == "matched" ? "matched" : "broad";
    scan.kind = parse_scan_kind(r.str_or("scan.kind", default_kind));
    scan.thickness = parse_thickness_list("scan.thickness", r.str("scan.thickness"));
    s.scan = scan;
  }
  if (r.has("phi.ratios")) {
    for (const auto& v : split_list(r.str("phi.ratios"))) s.phi_ratios.push_back(parse_double("phi.ratios", v));
  }
  return s;
}

ValidationReport validate(const ConfigMap& cfg) {
  ValidationReport rep;
  std::optional<Scenario> maybe;
  try {
    maybe.emplace(build_scenario(cfg));
  } catch (const ValidityError& e) {
    rep.errors.emplace_back(e.what());
    return rep;
  }
  const Scenario& s = *maybe;
  const auto& m = s.medium;

  const std::string mk = m ? std::string(m->kind_name()) : "none";
  auto unused = [&](const char* key) {
    if (cfg.count(key)) rep.warnings.push_back(std::string(key) + " is ignored for medium.kind " + mk);
  };
  if (mk != "eit" && !(cfg.count("medium.kind") && cfg.at("medium.kind") == "fe57-siderite")) {
    unused("medium.gamma_m");
    unused("medium.omega");
  }

  if ((s.wants(OutputKind::TimeTrace) || s.wants(OutputKind::AreasAndEnergies)) && s.methods.empty()) {
    rep.errors.emplace_back("'methods' must list at least one method for time_trace or areas_and_energies");
  }
  for (const auto method : s.methods) {
    if (auto e = method_precondition(method, s.source, m)) rep.errors.push_back(*e);
  }

  const bool eit_ok = m && m->eit_line() && [&] {
    try {
      (void)eit_params(*m);
      return true;
    } catch (const ValidityError&) {
      return false;
    }
  }();
  if (s.wants(OutputKind::EitParams) || s.wants(OutputKind::PhiPlus)) {
    if (!m || !m->eit_line()) {
      rep.errors.emplace_back("eit_params and phi_plus outputs require an eit medium");
    } else if (!eit_ok) {
      try {
        (void)eit_params(*m);
      } catch (const ValidityError& e) {
        const std::string msg = e.what();
        if (std::find(rep.errors.begin(), rep.errors.end(), msg) == rep.errors.end()) rep.errors.push_back(msg);
      }
    }
  }
  if (s.wants(OutputKind::PhiPlus)) {
    if (s.phi_ratios.empty()) rep.errors.emplace_back("phi_plus output requires phi.ratios");
    for (double v : s.phi_ratios) {
      if (!(v >= 0.0) || !std::isfinite(v)) rep.errors.push_back("phi.ratios entries must be >= 0");
    }
  }
  if (s.scan) {
    const auto& t = s.scan->thickness;
    if (t.empty()) rep.errors.emplace_back("scan.thickness is empty");
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!(t[i] >= 0.0)) rep.errors.emplace_back("scan.thickness values must be >= 0");
      if (i > 0 && !(t[i] > t[i - 1])) {
        rep.errors.emplace_back("scan.thickness values must be strictly increasing");
        break;
      }
    }
    if (s.scan->kind == ScanKind::Broad) {
      if (!m || m->kind_name() != "broad") {
        rep.errors.emplace_back("broad thickness scan requires a broad medium");
      } else if (!(m->linewidth() > s.source.delta_ph())) {
        rep.errors.emplace_back("broad thickness scan requires Gamma > delta_ph");
      }
    } else if (m && !same_rate(m->linewidth(), s.source.delta_ph())) {
      rep.errors.emplace_back("matched thickness scan requires gamma = delta_ph");
    }
  }

  if (s.grid && eit_ok) {
    const EitParams p = eit_params(*m);
    if (s.grid->t_end() < p.t_d) {
      rep.warnings.push_back("grid ends at t_end=" + std::to_string(s.grid->t_end()) +
                             " before the expected delay t_d=" + std::to_string(p.t_d));
    }
  }
  if (s.grid && std::find(s.methods.begin(), s.methods.end(), Provenance::Numeric) != s.methods.end() &&
      !s.grid->zero_index() && s.grid->t_start() < 0.0 && s.grid->t_end() > 0.0) {
    rep.warnings.emplace_back("tau = 0 does not fall on a grid sample; the jump is not resolved");
  }
  return rep;
}

namespace {

ConfigMap base(const std::string& name, const std::string& reference) {
  return {{"name", name}, {"reference_rate", reference}};
}

void set_grid(ConfigMap& c, const char* t0, const char* t1, const char* n) {
  c["grid.t_start"] = t0;
  c["grid.t_end"] = t1;
  c["grid.n_points"] = n;
}

void set_fig6_medium(ConfigMap& c) {
  c["medium.kind"] = "eit";
  c["medium.linewidth"] = "10";
  c["medium.gamma_m"] = "1";
  c["medium.omega"] = "20";
  c["medium.thickness"] = "30";
}

ConfigMap fig2(const char* panel, const char* kind) {
  ConfigMap c = base(std::string("fig2") + panel, "gamma (= delta_ph)");
  c["source.kind"] = kind;
  c["source.delta_ph"] = "1";
  c["medium.kind"] = "matched";
  c["medium.linewidth"] = "1";
  c["medium.thickness"] = "10";
  set_grid(c, "-1", "5", "601");
  c["methods"] = "free_space,numeric,analytic_parts";
  c["outputs"] = "time_trace,areas_and_energies";
  return c;
}

ConfigMap fig3a(const char* suffix, const char* kind, const char* methods) {
  ConfigMap c = base(std::string("fig3a_") + suffix, "delta_ph");
  c["source.kind"] = kind;
  c["source.delta_ph"] = "1";
  c["medium.kind"] = "broad";
  c["medium.linewidth"] = "10";
  c["medium.thickness"] = "10";
  set_grid(c, "-0.2", "2", "2201");
  c["methods"] = methods;
  c["outputs"] = "time_trace,areas_and_energies";
  return c;
}

ConfigMap fig3b() {
  ConfigMap c = base("fig3b", "delta_ph");
  c["source.kind"] = "exponential";
  c["source.delta_ph"] = "1";
  c["medium.kind"] = "broad";
  c["medium.linewidth"] = "10";
  c["medium.thickness"] = "10";
  c["outputs"] = "thickness_scan";
  c["scan.kind"] = "broad";
  c["scan.thickness"] = "0:10:101";
  return c;
}

ConfigMap fig5() {
  ConfigMap c = base("fig5", "gamma_m");
  c["source.kind"] = "exponential";
  c["source.delta_ph"] = "1";
  set_fig6_medium(c);
  set_grid(c, "-1", "3", "801");
  c["outputs"] = "phi_plus,eit_params";
  c["phi.ratios"] = "0.1,0";
  return c;
}

ConfigMap fig6(const char* panel, const char* delta) {
  ConfigMap c = base(std::string("fig6") + panel, "gamma_m");
  c["source.kind"] = "exponential";
  c["source.delta_ph"] = delta;
  set_fig6_medium(c);
  set_grid(c, "-1", "6", "1401");
  c["methods"] = "free_space,numeric,total_eit,adiabatic_eit,eit_delay_only";
  c["outputs"] = "time_trace,eit_params,areas_and_energies";
  return c;
}

ConfigMap fig7(const char* panel, const char* kind) {
  ConfigMap c = base(std::string("fig7") + panel, "gamma_m");
  c["source.kind"] = kind;
  c["source.delta_ph"] = "1";
  set_fig6_medium(c);
  set_grid(c, "-1", "6", "1401");
  c["methods"] = "free_space,numeric,total_eit,adiabatic_eit";
  c["outputs"] = "time_trace,eit_params";
  return c;
}

ConfigMap fe57() {
  ConfigMap c = base("fe57", "gamma_m");
  c["source.kind"] = "exponential";
  c["source.delta_ph"] = "1";
  c["medium.kind"] = "fe57-siderite";
  c["medium.omega"] = "20";
  c["medium.thickness"] = "30";
  set_grid(c, "-1", "6", "1401");
  c["methods"] = "free_space,numeric,total_eit,adiabatic_eit";
  c["outputs"] = "time_trace,eit_params,areas_and_energies";
  return c;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig3a", "fig3b", "fig5", "fig6a", "fig6b", "fig7", "fe57"};
  return names;
}

std::vector<ConfigMap> figure_preset(std::string_view name) {
  if (name == "fig2") return {fig2("a", "symmetric"), fig2("b", "antisymmetric")};
  if (name == "fig3a") {
    return {fig3a("total", "exponential", "free_space,numeric,analytic_parts,broad_approx"),
            fig3a("antisymmetric", "antisymmetric", "free_space,numeric,analytic_parts")};
  }
  if (name == "fig3b") return {fig3b()};
  if (name == "fig5") return {fig5()};
  if (name == "fig6a") return {fig6("a", "1")};
  if (name == "fig6b") return {fig6("b", "10")};
  if (name == "fig7") return {fig7("a", "symmetric"), fig7("b", "antisymmetric")};
  if (name == "fe57") return {fe57()};
  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown preset '" + std::string(name) + "' (valid: " + valid + ")");
}

}  // namespace photonprop
