#include "chargeflow/run_config.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include "chargeflow/errors.hpp"

namespace chargeflow::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_object(const json& v, const std::string& where) {
  if (!v.is_object()) fail(where + " must be an object");
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (key == a) known = true;
    if (!known) fail("unknown key \"" + key + "\" in " + where);
  }
}

double get_number(const json& obj, const std::string& where, const char* key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key + " must be a number");
  return v.get<double>();
}

std::size_t get_count(const json& obj, const std::string& where,
                      const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) fail(where + "." + key + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::string get_string(const json& obj, const std::string& where,
                       const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key + " must be a string");
  return v.get<std::string>();
}

void require_positive(double v, const std::string& name) {
  if (!(v > 0.0)) fail(name + " must be positive");
}

void require_power_of_two(std::size_t n, const std::string& name) {
  if (n < 8 || !std::has_single_bit(n))
    fail(name + " must be a power of two and at least 8");
}

json defaults() {
  RunConfig d;
  json j = {
      {"scenario", ""},
      {"case", "A"},
      {"packet", {{"x_g", d.packet.x_g}, {"p_g", d.packet.p_g}, {"sigma_p", d.packet.sigma_p}}},
      {"p0", d.p0},
      {"out", ""},
      {"threads", 0u},
      {"map", {{"lo", d.map.lo}, {"hi", d.map.hi}, {"points", d.map.points}}},
      {"scan",
       {{"x1", d.scan.x1},
        {"x2", d.scan.x2},
        {"xg_lo", d.scan.xg_lo},
        {"xg_hi", d.scan.xg_hi},
        {"xg_points", d.scan.xg_points},
        {"p0_lo", nullptr},
        {"p0_hi", nullptr},
        {"p0_points", d.scan.p0_points}}},
      {"laser",
       {{"wavelength_nm", d.laser.wavelength_nm},
        {"region_nm", d.laser.region_nm},
        {"cycles", d.laser.cycles},
        {"p0", d.laser.p0},
        {"x_center", d.laser.x_center},
        {"f0_values", json::array()},
        {"f0_lo", d.laser.f0_lo},
        {"f0_hi", d.laser.f0_hi},
        {"points", d.laser.points},
        {"grid_n", d.laser.grid_n},
        {"length_factor", d.laser.length_factor},
        {"dt", d.laser.dt},
        {"convergence", d.laser.convergence}}},
      {"verify",
       {{"checks", d.verify.checks},
        {"x1", d.verify.x1},
        {"x2", d.verify.x2},
        {"coefficient", d.verify.coefficient},
        {"tolerance_analytic", d.verify.tolerance_analytic},
        {"tolerance_triangle", d.verify.tolerance_triangle},
        {"fine_n", d.verify.fine_n},
        {"fine_length", d.verify.fine_length},
        {"oracle_n", d.verify.oracle_n},
        {"oracle_length", d.verify.oracle_length},
        {"t_max", d.verify.t_max},
        {"t_final", d.verify.t_final},
        {"residual_threshold", d.verify.residual_threshold}}},
  };
  return j;
}

void validate_schema(const json& doc) {
  require_object(doc, "config");
  reject_unknown(doc, "config",
                 {"scenario", "case", "packet", "p0", "out", "threads", "map",
                  "scan", "laser", "verify"});
  if (doc.contains("packet")) {
    require_object(doc.at("packet"), "packet");
    reject_unknown(doc.at("packet"), "packet", {"x_g", "p_g", "sigma_p"});
  }
  if (doc.contains("map")) {
    require_object(doc.at("map"), "map");
    reject_unknown(doc.at("map"), "map", {"lo", "hi", "points"});
  }
  if (doc.contains("scan")) {
    require_object(doc.at("scan"), "scan");
    reject_unknown(doc.at("scan"), "scan",
                   {"x1", "x2", "xg_lo", "xg_hi", "xg_points", "p0_lo",
                    "p0_hi", "p0_points"});
  }
  if (doc.contains("laser")) {
    require_object(doc.at("laser"), "laser");
    reject_unknown(doc.at("laser"), "laser",
                   {"wavelength_nm", "region_nm", "cycles", "p0", "x_center",
                    "f0_values", "f0_lo", "f0_hi", "points", "grid_n",
                    "length_factor", "dt", "convergence"});
  }
  if (doc.contains("verify")) {
    require_object(doc.at("verify"), "verify");
    reject_unknown(doc.at("verify"), "verify",
                   {"checks", "x1", "x2", "coefficient", "tolerance_analytic",
                    "tolerance_triangle", "fine_n", "fine_length", "oracle_n",
                    "oracle_length", "t_max", "t_final", "residual_threshold"});
  }
}

}  // namespace

json case_preset(char label) {
  double x_g, p_g;
  switch (label) {
    case 'A': x_g = 0.25; p_g = 5.0; break;
    case 'B': x_g = 5.0; p_g = 5.0; break;
    case 'C': x_g = 0.25; p_g = 0.25; break;
    case 'D': x_g = 5.0; p_g = 0.25; break;
    default: fail(std::string("unknown case \"") + label + "\"; use A, B, C, or D");
  }
  return {{"case", std::string(1, label)},
          {"packet", {{"x_g", x_g}, {"p_g", p_g}}}};
}

RunConfig parse_config(const json& doc) {
  validate_schema(doc);
  RunConfig cfg;

  cfg.scenario = get_string(doc, "config", "scenario", "");
  static const std::set<std::string> scenarios{"gauss-map", "gauss-scan",
                                              "laser-sweep", "verify"};
  if (scenarios.count(cfg.scenario) == 0)
    fail("scenario must be one of gauss-map, gauss-scan, laser-sweep, verify");

  std::string case_str = get_string(doc, "config", "case", "A");
  if (case_str.size() != 1) fail("case must be a single letter A-D");
  cfg.case_label = case_str[0];
  case_preset(cfg.case_label);  // validates the label

  const json empty = json::object();
  const json& packet = doc.contains("packet") ? doc.at("packet") : empty;
  cfg.packet.x_g = get_number(packet, "packet", "x_g", cfg.packet.x_g);
  cfg.packet.p_g = get_number(packet, "packet", "p_g", cfg.packet.p_g);
  cfg.packet.sigma_p = get_number(packet, "packet", "sigma_p", cfg.packet.sigma_p);
  require_positive(cfg.packet.sigma_p, "packet.sigma_p");

  cfg.p0 = get_number(doc, "config", "p0", cfg.p0);
  if (cfg.p0 == 0.0) fail("p0 must be nonzero");
  cfg.out = get_string(doc, "config", "out", "");
  cfg.threads = static_cast<unsigned>(get_count(doc, "config", "threads", 0));

  const json& map = doc.contains("map") ? doc.at("map") : empty;
  cfg.map.lo = get_number(map, "map", "lo", cfg.map.lo);
  cfg.map.hi = get_number(map, "map", "hi", cfg.map.hi);
  cfg.map.points = get_count(map, "map", "points", cfg.map.points);
  if (!(cfg.map.hi > cfg.map.lo)) fail("map.hi must exceed map.lo");
  if (cfg.map.points < 2) fail("map.points must be at least 2");

  const json& scan = doc.contains("scan") ? doc.at("scan") : empty;
  cfg.scan.x1 = get_number(scan, "scan", "x1", cfg.scan.x1);
  cfg.scan.x2 = get_number(scan, "scan", "x2", cfg.scan.x2);
  cfg.scan.xg_lo = get_number(scan, "scan", "xg_lo", cfg.scan.xg_lo);
  cfg.scan.xg_hi = get_number(scan, "scan", "xg_hi", cfg.scan.xg_hi);
  cfg.scan.xg_points = get_count(scan, "scan", "xg_points", cfg.scan.xg_points);
  cfg.scan.p0_points = get_count(scan, "scan", "p0_points", cfg.scan.p0_points);
  bool lo_null = !scan.contains("p0_lo") || scan.at("p0_lo").is_null();
  bool hi_null = !scan.contains("p0_hi") || scan.at("p0_hi").is_null();
  cfg.scan.p0_lo = lo_null ? cfg.packet.p_g - 6.0 * cfg.packet.sigma_p
                           : get_number(scan, "scan", "p0_lo", 0.0);
  cfg.scan.p0_hi = hi_null ? cfg.packet.p_g + 6.0 * cfg.packet.sigma_p
                           : get_number(scan, "scan", "p0_hi", 0.0);
  if (!(cfg.scan.xg_hi > cfg.scan.xg_lo)) fail("scan.xg_hi must exceed scan.xg_lo");
  if (!(cfg.scan.p0_hi > cfg.scan.p0_lo)) fail("scan.p0_hi must exceed scan.p0_lo");
  // A p0 range straddling zero only matters when the scan actually runs;
  // other scenarios may carry a default range that does (p_g near zero).
  if (cfg.scenario == "gauss-scan" && cfg.scan.p0_lo <= 0.0 &&
      cfg.scan.p0_hi >= 0.0)
    fail("scan p0 range must not contain zero");
  if (cfg.scan.xg_points < 2 || cfg.scan.p0_points < 2)
    fail("scan point counts must be at least 2");
  if (cfg.scan.x1 == cfg.scan.x2) fail("scan probes must differ");

  const json& laser = doc.contains("laser") ? doc.at("laser") : empty;
  cfg.laser.wavelength_nm = get_number(laser, "laser", "wavelength_nm", cfg.laser.wavelength_nm);
  cfg.laser.region_nm = get_number(laser, "laser", "region_nm", cfg.laser.region_nm);
  cfg.laser.cycles = get_number(laser, "laser", "cycles", cfg.laser.cycles);
  cfg.laser.p0 = get_number(laser, "laser", "p0", cfg.laser.p0);
  cfg.laser.x_center = get_number(laser, "laser", "x_center", cfg.laser.x_center);
  if (laser.contains("f0_values")) {
    const json& arr = laser.at("f0_values");
    if (!arr.is_array()) fail("laser.f0_values must be an array of numbers");
    for (const json& v : arr) {
      if (!v.is_number()) fail("laser.f0_values must be an array of numbers");
      double f = v.get<double>();
      if (f < 0.0) fail("laser.f0_values must be nonnegative");
      cfg.laser.f0_values.push_back(f);
    }
  }
  cfg.laser.f0_lo = get_number(laser, "laser", "f0_lo", cfg.laser.f0_lo);
  cfg.laser.f0_hi = get_number(laser, "laser", "f0_hi", cfg.laser.f0_hi);
  cfg.laser.points = get_count(laser, "laser", "points", cfg.laser.points);
  cfg.laser.grid_n = get_count(laser, "laser", "grid_n", cfg.laser.grid_n);
  cfg.laser.length_factor = get_number(laser, "laser", "length_factor", cfg.laser.length_factor);
  cfg.laser.dt = get_number(laser, "laser", "dt", cfg.laser.dt);
  cfg.laser.convergence = get_number(laser, "laser", "convergence", cfg.laser.convergence);
  require_positive(cfg.laser.wavelength_nm, "laser.wavelength_nm");
  require_positive(cfg.laser.region_nm, "laser.region_nm");
  require_positive(cfg.laser.cycles, "laser.cycles");
  if (cfg.laser.p0 == 0.0) fail("laser.p0 must be nonzero");
  if (cfg.laser.f0_values.empty()) {
    require_positive(cfg.laser.f0_lo, "laser.f0_lo");
    if (!(cfg.laser.f0_hi > cfg.laser.f0_lo)) fail("laser.f0_hi must exceed laser.f0_lo");
    if (cfg.laser.points < 2) fail("laser.points must be at least 2");
  }
  require_power_of_two(cfg.laser.grid_n, "laser.grid_n");
  if (!(cfg.laser.length_factor >= 2.0))
    fail("laser.length_factor must be at least 2 so the pulse region fits");
  require_positive(cfg.laser.dt, "laser.dt");
  require_positive(cfg.laser.convergence, "laser.convergence");

  const json& verify = doc.contains("verify") ? doc.at("verify") : empty;
  if (verify.contains("checks")) {
    const json& arr = verify.at("checks");
    if (!arr.is_array()) fail("verify.checks must be an array of strings");
    cfg.verify.checks.clear();
    for (const json& v : arr) {
      if (!v.is_string()) fail("verify.checks must be an array of strings");
      std::string name = v.get<std::string>();
      if (name != "analytic" && name != "triangle")
        fail("unknown verify check \"" + name + "\"; use analytic or triangle");
      cfg.verify.checks.push_back(name);
    }
  }
  cfg.verify.x1 = get_number(verify, "verify", "x1", cfg.verify.x1);
  cfg.verify.x2 = get_number(verify, "verify", "x2", cfg.verify.x2);
  cfg.verify.coefficient = get_number(verify, "verify", "coefficient", cfg.verify.coefficient);
  cfg.verify.tolerance_analytic =
      get_number(verify, "verify", "tolerance_analytic", cfg.verify.tolerance_analytic);
  cfg.verify.tolerance_triangle =
      get_number(verify, "verify", "tolerance_triangle", cfg.verify.tolerance_triangle);
  cfg.verify.fine_n = get_count(verify, "verify", "fine_n", cfg.verify.fine_n);
  cfg.verify.fine_length = get_number(verify, "verify", "fine_length", cfg.verify.fine_length);
  cfg.verify.oracle_n = get_count(verify, "verify", "oracle_n", cfg.verify.oracle_n);
  cfg.verify.oracle_length =
      get_number(verify, "verify", "oracle_length", cfg.verify.oracle_length);
  cfg.verify.t_max = get_number(verify, "verify", "t_max", cfg.verify.t_max);
  cfg.verify.t_final = get_number(verify, "verify", "t_final", cfg.verify.t_final);
  cfg.verify.residual_threshold = get_number(verify, "verify", "residual_threshold",
                                             cfg.verify.residual_threshold);
  if (cfg.verify.x1 == cfg.verify.x2) fail("verify probes must differ");
  require_positive(cfg.verify.tolerance_analytic, "verify.tolerance_analytic");
  require_positive(cfg.verify.tolerance_triangle, "verify.tolerance_triangle");
  require_power_of_two(cfg.verify.fine_n, "verify.fine_n");
  require_power_of_two(cfg.verify.oracle_n, "verify.oracle_n");
  require_positive(cfg.verify.fine_length, "verify.fine_length");
  require_positive(cfg.verify.oracle_length, "verify.oracle_length");
  require_positive(cfg.verify.t_max, "verify.t_max");
  require_positive(cfg.verify.t_final, "verify.t_final");
  require_positive(cfg.verify.residual_threshold, "verify.residual_threshold");

  cfg.resolved = doc;
  cfg.resolved["scan"]["p0_lo"] = cfg.scan.p0_lo;
  cfg.resolved["scan"]["p0_hi"] = cfg.scan.p0_hi;
  return cfg;
}

RunConfig load_config(const std::string& scenario, const std::string& path,
                      const std::string& case_flag,
                      const std::vector<std::string>& overrides) {
  json doc = defaults();

  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file " + path);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::exception& e) {
      fail("config file " + path + " is not valid JSON: " + e.what());
    }
    validate_schema(file);
    if (file.contains("case")) {
      std::string c = get_string(file, "config", "case", "A");
      if (c.size() != 1) fail("case must be a single letter A-D");
      doc.merge_patch(case_preset(c[0]));
    }
    doc.merge_patch(file);
  }

  if (!case_flag.empty()) {
    if (case_flag.size() != 1) fail("case must be a single letter A-D");
    doc.merge_patch(case_preset(case_flag[0]));
  }

  for (const std::string& ov : overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0)
      fail("override \"" + ov + "\" must look like key.path=value");
    std::string key = ov.substr(0, eq);
    std::string value = ov.substr(eq + 1);
    std::string pointer = "/";
    for (char c : key) pointer += (c == '.') ? '/' : c;
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::exception&) {
      parsed = value;  // plain strings need no quoting
    }
    try {
      doc[json::json_pointer(pointer)] = parsed;
    } catch (const json::exception& e) {
      fail("cannot apply override \"" + ov + "\": " + e.what());
    }
  }

  doc["scenario"] = scenario;
  return parse_config(doc);
}

}  // namespace chargeflow::cli
