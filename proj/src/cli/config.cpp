/*
   Copyright 2026 The shk Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "shk/cli/config.hpp"

#include "shk/common.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace shk::cli {

namespace {

using Json = nlohmann::ordered_json;
using Sections = std::map<std::string, std::map<std::string, std::string>>;

const std::vector<std::pair<ExperimentKind, std::string>> kKinds{
    {ExperimentKind::pulse, "pulse"},
    {ExperimentKind::karney, "karney"},
    {ExperimentKind::lorentz_scan, "lorentz-scan"},
    {ExperimentKind::lorentz_micro, "lorentz-micro"},
    {ExperimentKind::two_particle, "two-particle"},
    {ExperimentKind::witness, "witness"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string number_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Sections read_ini(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  Sections out;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("key '" + section + "' outside any section");
    }
    auto& keys = out[section];
    for (const auto& [key, value] : body) {
      if (!value.empty()) throw ConfigError("nested key under [" + section + "] " + key);
      keys[key] = trim(value.data());
    }
  }
  return out;
}

std::string scalar_text(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return number_text(v.get<double>());
  throw ConfigError(where + ": expected a scalar value");
}

Sections read_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("JSON config must be an object of sections");
  Sections out;
  for (const auto& [section, body] : doc.items()) {
    if (!body.is_object()) throw ConfigError("JSON section '" + section + "' is not an object");
    auto& keys = out[section];
    for (const auto& [key, value] : body.items()) {
      const std::string where = section + "." + key;
      if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ", ";
          joined += scalar_text(item, where);
        }
        keys[key] = joined;
      } else {
        keys[key] = scalar_text(value, where);
      }
    }
  }
  return out;
}

// Typed access to one section; remembers which keys were read so the rest
// can be reported as unknown.
class Reader {
 public:
  Reader(Sections& all, std::string section) : section_(std::move(section)) {
    auto it = all.find(section_);
    if (it != all.end()) {
      keys_ = it->second;
      all.erase(it);
    }
  }

  void finish() const {
    for (const auto& [key, value] : keys_) {
      if (!used_.count(key)) throw ConfigError("unknown key " + where(key));
    }
  }

  double number(const std::string& key, double fallback, double lo, double hi,
                bool open_lo = false) {
    const auto text = take(key);
    if (!text) return fallback;
    const double x = parse_double(*text, key);
    if (!(open_lo ? x > lo : x >= lo) || !(x <= hi)) {
      throw ConfigError(where(key) + " = " + *text + " outside " + (open_lo ? "(" : "[") +
                        number_text(lo) + ", " + number_text(hi) + "]");
    }
    return x;
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback, std::uint64_t lo,
                      std::uint64_t hi) {
    const auto text = take(key);
    if (!text) return fallback;
    std::uint64_t x = 0;
    const char* end = text->data() + text->size();
    const auto res = std::from_chars(text->data(), end, x);
    if (res.ec != std::errc() || res.ptr != end) {
      throw ConfigError(where(key) + ": '" + *text + "' is not a non-negative integer");
    }
    if (x < lo || x > hi) {
      throw ConfigError(where(key) + " = " + *text + " outside [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    return x;
  }

  bool flag(const std::string& key, bool fallback) {
    const auto text = take(key);
    if (!text) return fallback;
    if (*text == "true" || *text == "1" || *text == "yes") return true;
    if (*text == "false" || *text == "0" || *text == "no") return false;
    throw ConfigError(where(key) + ": '" + *text + "' is not a boolean");
  }

  std::string word(const std::string& key, const std::string& fallback,
                   const std::vector<std::string>& allowed = {}) {
    const auto text = take(key);
    if (!text) return fallback;
    if (text->empty()) throw ConfigError(where(key) + " is empty");
    if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), *text) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError(where(key) + ": '" + *text + "' is not one of " + list);
    }
    return *text;
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) {
    const auto text = take(key);
    if (!text) return fallback;
    std::vector<double> out;
    std::stringstream in(*text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(trim(item), key));
    if (out.empty()) throw ConfigError(where(key) + " is empty");
    return out;
  }

  std::string where(const std::string& key) const { return "[" + section_ + "] " + key; }

 private:
  std::optional<std::string> take(const std::string& key) {
    used_.insert(key);
    auto it = keys_.find(key);
    if (it == keys_.end()) return std::nullopt;
    return it->second;
  }

  double parse_double(const std::string& text, const std::string& key) const {
    double x = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end || !std::isfinite(x)) {
      throw ConfigError(where(key) + ": '" + text + "' is not a finite number");
    }
    return x;
  }

  std::string section_;
  std::map<std::string, std::string> keys_;
  std::set<std::string> used_;
};

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBig = std::numeric_limits<double>::max();

void read_lorentz(Reader& r, lorentz::LorentzParams& p) {
  p.plasma_parameter = r.number("plasma_parameter", p.plasma_parameter, 1.0, 1e12, true);
  p.tau = r.number("tau", p.tau, 0.0, 1e6, true);
  p.delta_reg = r.number("delta_reg", p.delta_reg, 0.0, 1.0, true);
  if (p.delta_reg >= 1.0) throw ConfigError(r.where("delta_reg") + " must be below 1");
  p.charge_to_mass = r.number("charge_to_mass", p.charge_to_mass, -kBig, kBig);
  if (p.charge_to_mass == 0.0) throw ConfigError(r.where("charge_to_mass") + " must be nonzero");
  p.ion_charge = r.number("ion_charge", p.ion_charge, 0.0, kBig);
}

ExperimentConfig build(Sections sections) {
  ExperimentConfig c;
  {
    Reader r(sections, "experiment");
    std::vector<std::string> names;
    for (const auto& [k, n] : kKinds) names.push_back(n);
    const std::string kind = r.word("kind", "", names);
    if (kind.empty()) throw ConfigError("[experiment] kind is required");
    for (const auto& [k, n] : kKinds) {
      if (n == kind) c.kind = k;
    }
    c.seed = r.count("seed", c.seed, 0, std::numeric_limits<std::uint64_t>::max());
    c.workers = static_cast<int>(r.count("workers", 0, 1, 1024));
    c.output = r.word("output", c.output);
    c.particles = r.count("particles", c.particles, 2, 100000000);
    c.duration = r.number("duration", c.duration, 0.0, 1e9);
    c.dt = r.number("dt", c.dt, 0.0, 1e9);
    c.records = static_cast<int>(r.count("records", c.records, 2, 100000));
    c.check = r.flag("check", c.check);
    c.sigmas = r.number("sigmas", c.sigmas, 0.0, 100.0, true);
    r.finish();
  }
  {
    Reader r(sections, "pulse");
    c.pulse.phi0 = r.number("phi0", c.pulse.phi0, -kBig, kBig);
    c.pulse.charge_to_mass = r.number("charge_to_mass", c.pulse.charge_to_mass, -kBig, kBig);
    c.pulse.tau = r.number("tau", c.pulse.tau, 0.0, 1e6, true);
    const std::string window = r.word("window", "impulse", {"impulse", "uniform"});
    c.pulse.window = window == "uniform" ? models::PulseWindow::uniform
                                         : models::PulseWindow::impulse;
    c.micro_intervals = r.count("micro_intervals", c.micro_intervals, 0, 100000000);
    r.finish();
  }
  {
    Reader r(sections, "karney");
    auto& k = c.karney;
    k.epsilon = r.number("epsilon", k.epsilon, 0.0, 10.0);
    k.nu = r.number("nu", k.nu, 0.5, 100.0);
    k.series_cutoff = static_cast<int>(r.count("series_cutoff", k.series_cutoff, 1, 1000));
    k.action_min = r.number("action_min", k.action_min, 0.0, kInf, true);
    k.action_max = r.number("action_max", k.action_max, k.action_min, kInf, true);
    c.karney_action = r.number("action", c.karney_action, k.action_min, k.action_max);
    r.finish();
  }
  {
    Reader r(sections, "lorentz-scan");
    c.scan_lambdas = r.numbers("lambdas", c.scan_lambdas);
    for (std::size_t i = 0; i < c.scan_lambdas.size(); ++i) {
      if (!(c.scan_lambdas[i] > 10.0)) throw ConfigError(r.where("lambdas") + " must exceed 10");
      if (i > 0 && !(c.scan_lambdas[i] > c.scan_lambdas[i - 1])) {
        throw ConfigError(r.where("lambdas") + " must be increasing");
      }
    }
    c.scan_speed = r.number("speed", c.scan_speed, 0.0, 1e3, true);
    c.scan_delta_reg = r.number("delta_reg", c.scan_delta_reg, 0.0, 1.0, true);
    if (c.scan_delta_reg >= 1.0) throw ConfigError(r.where("delta_reg") + " must be below 1");
    c.scan_ratio_limit = r.number("ratio_limit", c.scan_ratio_limit, 0.0, kBig, true);
    r.finish();
  }
  {
    Reader r(sections, "lorentz-micro");
    read_lorentz(r, c.micro);
    c.micro_speed = r.number("speed", c.micro_speed, 0.0, 1e3, true);
    c.micro_jumps = r.count("intervals", c.micro_jumps, 100, 100000000);
    c.micro_box = r.number("box", c.micro_box, 0.0, 1e4);
    c.micro_dt = r.number("dt", c.micro_dt, 0.0, 1e3);
    c.micro_lazy = r.flag("lazy_field", c.micro_lazy);
    r.finish();
  }
  {
    Reader r(sections, "two-particle");
    c.separation = r.number("separation", c.separation, -1e6, 1e6);
    r.finish();
  }
  {
    Reader r(sections, "witness");
    read_lorentz(r, c.witness);
    c.witness_samples = r.count("samples", c.witness_samples, 1, 1000000);
    c.witness_tolerance = r.number("tolerance", c.witness_tolerance, 0.0, kBig, true);
    r.finish();
  }
  if (!sections.empty()) throw ConfigError("unknown section [" + sections.begin()->first + "]");
  return c;
}

Json lorentz_json(const lorentz::LorentzParams& p) {
  Json j;
  j["plasma_parameter"] = p.plasma_parameter;
  j["tau"] = p.tau;
  j["delta_reg"] = p.delta_reg;
  j["charge_to_mass"] = p.charge_to_mass;
  j["ion_charge"] = p.ion_charge;
  return j;
}

}  // namespace

std::string kind_name(ExperimentKind kind) {
  for (const auto& [k, n] : kKinds) {
    if (k == kind) return n;
  }
  throw DomainError("unknown experiment kind");
}

ExperimentConfig parse_config(const std::string& text) {
  const std::string body = trim(text);
  return build(!body.empty() && body.front() == '{' ? read_json(body) : read_ini(text));
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string config_echo(const ExperimentConfig& c) {
  // Output directory and worker count do not change results and are left
  // out, so reports from different locations compare byte for byte.
  Json doc;
  Json& e = doc["experiment"];
  e["kind"] = kind_name(c.kind);
  e["seed"] = c.seed;
  e["particles"] = c.particles;
  e["duration"] = c.duration;
  e["dt"] = c.dt;
  e["records"] = c.records;
  e["check"] = c.check;
  e["sigmas"] = c.sigmas;
  const bool pulse_like =
      c.kind == ExperimentKind::pulse || c.kind == ExperimentKind::two_particle;
  if (pulse_like) {
    Json& p = doc["pulse"];
    p["phi0"] = c.pulse.phi0;
    p["charge_to_mass"] = c.pulse.charge_to_mass;
    p["tau"] = c.pulse.tau;
    p["window"] = c.pulse.window == models::PulseWindow::uniform ? "uniform" : "impulse";
    p["micro_intervals"] = c.micro_intervals;
  }
  switch (c.kind) {
    case ExperimentKind::karney: {
      Json& k = doc["karney"];
      k["epsilon"] = c.karney.epsilon;
      k["nu"] = c.karney.nu;
      k["series_cutoff"] = c.karney.series_cutoff;
      k["action_min"] = c.karney.action_min;
      k["action_max"] = c.karney.action_max;
      k["action"] = c.karney_action;
      break;
    }
    case ExperimentKind::lorentz_scan: {
      Json& s = doc["lorentz-scan"];
      s["lambdas"] = c.scan_lambdas;
      s["speed"] = c.scan_speed;
      s["delta_reg"] = c.scan_delta_reg;
      s["ratio_limit"] = c.scan_ratio_limit;
      break;
    }
    case ExperimentKind::lorentz_micro: {
      Json m = lorentz_json(c.micro);
      m["speed"] = c.micro_speed;
      m["intervals"] = c.micro_jumps;
      m["box"] = c.micro_box;
      m["dt"] = c.micro_dt;
      m["lazy_field"] = c.micro_lazy;
      doc["lorentz-micro"] = m;
      break;
    }
    case ExperimentKind::two_particle:
      doc["two-particle"]["separation"] = c.separation;
      break;
    case ExperimentKind::witness: {
      Json w = lorentz_json(c.witness);
      w["samples"] = c.witness_samples;
      w["tolerance"] = c.witness_tolerance;
      doc["witness"] = w;
      break;
    }
    default:
      break;
  }
  return doc.dump(2);
}

}  // namespace shk::cli
