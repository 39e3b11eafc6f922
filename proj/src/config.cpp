// Copyright 2026 The oscnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oscnet/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oscnet/analysis.hpp"

namespace oscnet {

namespace {

using json = nlohmann::json;

// Object reader that remembers which keys were consumed.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail("", "must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }
  const json& at(const std::string& key) {
    if (!has(key)) fail(key, "is required");
    return j_.at(key);
  }
  std::string sub(const std::string& key) const { return path_ + "." + key; }

  double number(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_number()) fail(key, "must be a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }
  std::optional<double> maybe_number(const std::string& key) {
    return has(key) ? std::optional<double>(number(key)) : std::nullopt;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer()) fail(key, "must be an integer");
    return v.get<std::int64_t>();
  }
  std::uint64_t unsigned_integer(const std::string& key) {
    const auto& v = at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      fail(key, "must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) fail(key, "must be a boolean");
    return v.get<bool>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_string()) fail(key, "must be a string");
    return v.get<std::string>();
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (seen_.count(item.key()) == 0) {
        throw ConfigError("unknown key '" + path_ + "." + item.key() + "'");
      }
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("'" + (key.empty() ? path_ : sub(key)) + "' " + what);
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

cplx parse_complex(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError("'" + path + "' must be a number or [re, im]");
}

CVec parse_cvec(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ConfigError("'" + path + "' must be a non-empty array");
  CVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = parse_complex(v[i], path + "[" + std::to_string(i) + "]");
  }
  return out;
}

Vec parse_vec(const json& v, const std::string& path) {
  if (v.is_number()) return Vec::Constant(1, v.get<double>());
  if (!v.is_array() || v.empty()) throw ConfigError("'" + path + "' must be a number or array");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError("'" + path + "' must contain numbers");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

Mat parse_matrix(const json& v, const std::string& path, int n) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    throw ConfigError("'" + path + "' must be an " + std::to_string(n) + "x" + std::to_string(n) + " array");
  }
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec row = parse_vec(v[static_cast<std::size_t>(i)], path);
    if (row.size() != n) throw ConfigError("'" + path + "' rows must have length " + std::to_string(n));
    m.row(i) = row.transpose();
  }
  return m;
}

NetworkConfig parse_network(const json& j) {
  Section s(j, "network");
  NetworkConfig nc;
  nc.probe = static_cast<int>(s.integer("probe", 0));
  try {
    if (s.has("chain")) {
      Section c(s.at("chain"), "network.chain");
      const auto n = c.integer("N", 0);
      nc.chain = ChainSpec(static_cast<int>(n), c.number("omega"), c.number("J"));
      c.finish();
      nc.spec = nc.chain->network();
      if (s.has("omega") || s.has("J") || s.has("K")) {
        throw ConfigError("'network' takes either 'chain' or explicit matrices, not both");
      }
    } else {
      const Vec omega = parse_vec(s.at("omega"), s.sub("omega"));
      const int n = static_cast<int>(omega.size());
      const Mat J = s.has("J") ? parse_matrix(s.at("J"), s.sub("J"), n) : Mat::Zero(n, n);
      const Mat K = s.has("K") ? parse_matrix(s.at("K"), s.sub("K"), n) : Mat::Zero(n, n);
      nc.spec = NetworkSpec(omega, J, K);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("network: ") + e.what());
  }
  s.finish();
  if (nc.probe < 0 || nc.probe >= nc.spec.modes()) throw ConfigError("'network.probe' out of range");
  return nc;
}

GridConfig parse_grid(const json& j, int modes) {
  Section s(j, "protocol.grid");
  GridConfig g;
  g.type = s.string("type", "star");
  if (g.type == "star") {
    g.spacing = s.number("spacing", 0.1);
    g.rings = static_cast<int>(s.integer("rings", 3));
    g.angles = static_cast<int>(s.integer("angles", 8));
    g.pairs = s.boolean("pairs", true);
    if (!(g.spacing > 0.0) || g.rings < 1 || g.angles < 1) {
      throw ConfigError("'protocol.grid' must be non-empty with positive spacing");
    }
  } else if (g.type == "line") {
    g.mode = static_cast<int>(s.integer("mode", 0));
    g.from = parse_complex(s.at("from"), s.sub("from"));
    g.to = parse_complex(s.at("to"), s.sub("to"));
    g.count = static_cast<int>(s.integer("count", 9));
    if (g.count < 1) throw ConfigError("'protocol.grid.count' must be positive");
    if (g.mode < 0 || g.mode >= modes) throw ConfigError("'protocol.grid.mode' out of range");
  } else {
    throw ConfigError("'protocol.grid.type' must be 'star' or 'line'");
  }
  s.finish();
  return g;
}

ProtocolConfig parse_protocol(const json& j, int modes) {
  Section s(j, "protocol");
  ProtocolConfig p;
  p.t = s.maybe_number("t");
  p.t_factor = s.number("t_factor", 2.0);
  const std::string basis = s.string("basis", "local");
  try {
    p.basis = parse_basis(basis);
  } catch (const Error&) {
    throw ConfigError("'protocol.basis' must be 'local' or 'normal'");
  }
  if (s.has("points")) {
    const auto& pts = s.at("points");
    if (!pts.is_array()) throw ConfigError("'protocol.points' must be an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const CVec v = parse_cvec(pts[i], "protocol.points[" + std::to_string(i) + "]");
      if (v.size() != modes) throw ConfigError("'protocol.points' entries need one value per mode");
      p.points.push_back(v);
    }
  }
  if (s.has("grid")) p.grid = parse_grid(s.at("grid"), modes);
  p.samples_per_period = static_cast<int>(s.integer("samples_per_period", 20));
  p.max_cond = s.number("max_cond", 1e8);
  s.finish();
  if (p.points.empty() && !p.grid) throw ConfigError("'protocol' needs 'points' or a 'grid'");
  if (p.t && !(*p.t > 0.0)) throw ConfigError("'protocol.t' must be positive");
  if (!(p.t_factor >= 1.0)) throw ConfigError("'protocol.t_factor' must be at least 1");
  if (p.samples_per_period < 2) throw ConfigError("'protocol.samples_per_period' must be >= 2");
  return p;
}

DecoherenceConfig parse_decoherence(const json& j, int modes) {
  Section s(j, "decoherence");
  DecoherenceConfig d;
  d.kappa = s.has("kappa") ? parse_vec(s.at("kappa"), s.sub("kappa")) : Vec::Zero(1);
  if (d.kappa.size() != 1 && d.kappa.size() != modes) {
    throw ConfigError("'decoherence.kappa' needs 1 or N entries");
  }
  d.T = s.maybe_number("T");
  if (s.has("Nbar")) {
    d.Nbar = parse_vec(s.at("Nbar"), s.sub("Nbar"));
    if (d.Nbar.size() != 1 && d.Nbar.size() != modes) {
      throw ConfigError("'decoherence.Nbar' needs 1 or N entries");
    }
    if (d.T) throw ConfigError("'decoherence' takes either 'T' or 'Nbar'");
  }
  d.Gamma1 = s.number("Gamma1", 0.0);
  d.Gamma2 = s.number("Gamma2", 0.0);
  d.Nq = s.number("Nq", 0.0);
  s.finish();
  return d;
}

NoiseConfig parse_noise(const json& j) {
  Section s(j, "noise");
  NoiseConfig n;
  n.epsilon = s.number("epsilon");
  if (!(n.epsilon >= 0.0)) throw ConfigError("'noise.epsilon' must be non-negative");
  n.realizations = s.has("realizations") ? s.unsigned_integer("realizations") : 10000;
  n.dt = s.number("dt", 0.0);
  if (s.has("times")) {
    const Vec t = parse_vec(s.at("times"), s.sub("times"));
    n.times.assign(t.data(), t.data() + t.size());
  }
  s.finish();
  return n;
}

StateParams parse_state(const json& j) {
  Section s(j, "state");
  StateParams p;
  p.name = s.string("name", "vacuum");
  if (s.has("alpha")) p.alpha = parse_cvec(s.at("alpha"), s.sub("alpha"));
  if (s.has("nbar")) p.nbar = parse_vec(s.at("nbar"), s.sub("nbar"));
  p.T = s.number("T", 0.0);
  p.mode = static_cast<int>(s.integer("mode", 0));
  p.mode2 = static_cast<int>(s.integer("mode2", 1));
  p.r = s.number("r", 0.0);
  p.phi = s.number("phi", 0.0);
  p.truncation = static_cast<int>(s.integer("truncation", 40));
  s.finish();
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), p.name) == names.end()) {
    throw ConfigError("'state.name' must be one of the catalog states, got '" + p.name + "'");
  }
  return p;
}

SweepsConfig parse_sweeps(const json& j, int modes) {
  Section s(j, "sweeps");
  SweepsConfig sw;
  if (s.has("det")) {
    Section d(s.at("det"), "sweeps.det");
    sw.det = DetSweep{d.number("t_min", 1.0), d.number("t_max", 700.0), d.number("step", 1.0)};
    d.finish();
    if (!(sw.det->step > 0.0) || !(sw.det->t_max >= sw.det->t_min) || !(sw.det->t_min > 0.0)) {
      throw ConfigError("'sweeps.det' needs 0 < t_min <= t_max and step > 0");
    }
  }
  if (s.has("pulse")) {
    Section d(s.at("pulse"), "sweeps.pulse");
    PulseSweep p;
    p.t = d.maybe_number("t");
    p.target = parse_cvec(d.at("target"), d.sub("target"));
    try {
      p.basis = parse_basis(d.string("basis", "normal"));
    } catch (const Error&) {
      throw ConfigError("'sweeps.pulse.basis' must be 'local' or 'normal'");
    }
    d.finish();
    if (p.target.size() != modes) throw ConfigError("'sweeps.pulse.target' needs one value per mode");
    sw.pulse = p;
  }
  if (s.has("damping")) {
    Section d(s.at("damping"), "sweeps.damping");
    DampingSweep p;
    p.t = d.maybe_number("t");
    p.eta = parse_cvec(d.at("eta"), d.sub("eta"));
    p.mode = static_cast<int>(d.integer("mode", 0));
    p.re_from = d.number("re_from", 0.0);
    p.re_to = d.number("re_to", 3.0);
    p.count = static_cast<int>(d.integer("count", 31));
    d.finish();
    if (p.eta.size() != modes) throw ConfigError("'sweeps.damping.eta' needs one value per mode");
    if (p.mode < 0 || p.mode >= modes || p.count < 1) throw ConfigError("'sweeps.damping' is malformed");
    sw.damping = p;
  }
  if (s.has("resolution")) {
    Section d(s.at("resolution"), "sweeps.resolution");
    ResolutionSweep p{d.number("epsilon", 1e-5), d.number("t_min", 10.0), d.number("t_max", 1000.0),
                      static_cast<int>(d.integer("count", 100))};
    d.finish();
    if (!(p.t_min > 0.0) || !(p.t_max >= p.t_min) || p.count < 1 || !(p.epsilon >= 0.0)) {
      throw ConfigError("'sweeps.resolution' is malformed");
    }
    sw.resolution = p;
  }
  s.finish();
  return sw;
}

ExperimentConfig from_json(const json& doc) {
  Section top(doc, "config");
  ExperimentConfig c;
  c.network = parse_network(top.at("network"));
  const int n = c.modes();
  c.protocol = parse_protocol(top.at("protocol"), n);
  if (top.has("decoherence")) c.decoherence = parse_decoherence(top.at("decoherence"), n);
  if (top.has("noise")) c.noise = parse_noise(top.at("noise"));
  c.state = top.has("state") ? parse_state(top.at("state")) : StateParams{};
  c.shots = top.has("shots") ? top.unsigned_integer("shots") : 0;
  if (top.has("seed")) c.seed = top.unsigned_integer("seed");
  c.output = top.string("output", "out");
  c.workers = static_cast<int>(top.integer("workers", 1));
  if (top.has("sweeps")) c.sweeps = parse_sweeps(top.at("sweeps"), n);
  top.finish();
  if (c.workers < 1) throw ConfigError("'config.workers' must be positive");
  if ((c.shots > 0 || (c.noise && c.noise->realizations > 0)) && !c.seed) {
    throw ConfigError("'config.seed' is required when shots or noise realizations are requested");
  }
  c.canonical = doc.dump(2);
  return c;
}

ExperimentConfig reparse(const json& doc) { return from_json(doc); }

}  // namespace

DecoherenceSpec DecoherenceConfig::resolve(const NormalModeDecomposition& decomp) const {
  const int n = decomp.modes();
  DecoherenceSpec d = DecoherenceSpec::none(n);
  d.kappa = kappa.size() == 1 ? Vec::Constant(n, kappa[0]) : kappa;
  if (T) {
    for (int k = 0; k < n; ++k) d.Nbar[k] = thermal_occupation(decomp.nu[k], *T);
  } else if (Nbar.size() > 0) {
    d.Nbar = Nbar.size() == 1 ? Vec::Constant(n, Nbar[0]) : Nbar;
  }
  d.Gamma1 = Gamma1;
  d.Gamma2 = Gamma2;
  d.Nq = Nq;
  d.validate();
  return d;
}

const std::string& default_config_json() {
  static const std::string text = R"({
  "network": {"chain": {"N": 2, "omega": 1.0, "J": 0.2}},
  "protocol": {
    "basis": "local",
    "t_factor": 2.0,
    "grid": {"type": "star", "spacing": 0.1, "rings": 3, "angles": 8, "pairs": true}
  },
  "state": {"name": "vacuum"},
  "shots": 10000,
  "seed": 20240517,
  "output": "out/default",
  "workers": 1
}
)";
  return text;
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ChainSpec parse_chain_flag(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, c, extra;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',') ||
      std::getline(ss, extra, ',')) {
    throw ConfigError("--chain expects N,omega,J");
  }
  int n = 0;
  double omega = 0.0;
  double J = 0.0;
  try {
    std::size_t used = 0;
    n = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    omega = std::stod(b);
    J = std::stod(c);
  } catch (const std::exception&) {
    throw ConfigError("--chain expects N,omega,J with numeric values, got '" + text + "'");
  }
  return ChainSpec(n, omega, J);
}

namespace {

template <typename F>
void edit(ExperimentConfig& config, F&& f) {
  json doc = json::parse(config.canonical);
  f(doc);
  config = reparse(doc);
}

}  // namespace

void set_chain(ExperimentConfig& config, const ChainSpec& chain) {
  edit(config, [&](json& doc) {
    const int old_modes = config.modes();
    json net = json::object();
    if (doc["network"].contains("probe")) net["probe"] = doc["network"]["probe"];
    net["chain"] = {{"N", chain.N}, {"omega", chain.omega}, {"J", chain.J}};
    doc["network"] = net;
    if (old_modes != chain.N) {
      // Explicit points and per-mode targets cannot follow a change of size.
      doc["protocol"].erase("points");
      if (!doc["protocol"].contains("grid")) doc["protocol"]["grid"] = {{"type", "star"}};
      doc.erase("sweeps");
      if (doc.contains("decoherence")) {
        for (const char* key : {"kappa", "Nbar"}) {
          auto& d = doc["decoherence"];
          if (d.contains(key) && d[key].is_array()) d[key] = d[key][0];
        }
      }
    }
  });
}

void set_seed(ExperimentConfig& config, std::uint64_t seed) {
  edit(config, [&](json& doc) { doc["seed"] = seed; });
}

void set_exact(ExperimentConfig& config) {
  edit(config, [&](json& doc) { doc["shots"] = 0; });
}

void set_output(ExperimentConfig& config, const std::string& dir) {
  edit(config, [&](json& doc) { doc["output"] = dir; });
}

void set_samples_per_period(ExperimentConfig& config, int spp) {
  edit(config, [&](json& doc) { doc["protocol"]["samples_per_period"] = spp; });
}

std::vector<CVec> protocol_points(const ExperimentConfig& config) {
  std::vector<CVec> pts = config.protocol.points;
  if (config.protocol.grid) {
    const auto& g = *config.protocol.grid;
    const int n = config.modes();
    if (g.type == "star") {
      const auto star = star_grid(n, g.spacing, g.rings, g.angles, g.pairs);
      pts.insert(pts.end(), star.begin(), star.end());
    } else {
      for (int i = 0; i < g.count; ++i) {
        const double u = g.count == 1 ? 0.0 : static_cast<double>(i) / (g.count - 1);
        CVec p = CVec::Zero(n);
        p[g.mode] = g.from + u * (g.to - g.from);
        pts.push_back(p);
      }
    }
  }
  return pts;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace oscnet
