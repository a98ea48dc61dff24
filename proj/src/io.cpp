#include "corot2d/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace corot2d {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Located {
  std::string value;
  int line = 0;  // 0 for command-line overrides
};

[[noreturn]] void fail(const std::string& key, const Located& v, const std::string& why) {
  std::ostringstream os;
  if (v.line > 0)
    os << "line " << v.line << ": ";
  else
    os << "override ";
  os << key << " = '" << v.value << "': " << why;
  throw ConfigError(os.str());
}

double to_double(const std::string& key, const Located& v) {
  const char* s = v.value.c_str();
  char* end = nullptr;
  const double x = std::strtod(s, &end);
  if (end == s || *end != '\0' || !std::isfinite(x)) fail(key, v, "expected a finite number");
  return x;
}

int to_int(const std::string& key, const Located& v) {
  int x = 0;
  const auto* b = v.value.data();
  const auto r = std::from_chars(b, b + v.value.size(), x);
  if (r.ec != std::errc() || r.ptr != b + v.value.size()) fail(key, v, "expected an integer");
  return x;
}

std::uint64_t to_u64(const std::string& key, const Located& v) {
  std::uint64_t x = 0;
  const auto* b = v.value.data();
  const auto r = std::from_chars(b, b + v.value.size(), x);
  if (r.ec != std::errc() || r.ptr != b + v.value.size()) fail(key, v, "expected an unsigned 64-bit integer");
  return x;
}

bool to_bool(const std::string& key, const Located& v) {
  if (v.value == "true" || v.value == "1" || v.value == "yes" || v.value == "on") return true;
  if (v.value == "false" || v.value == "0" || v.value == "no" || v.value == "off") return false;
  fail(key, v, "expected true or false");
}

using Setter = std::function<void(ConfigFile&, const std::string&, const Located&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"n", [](ConfigFile& c, auto& k, auto& v) { c.sim.n1 = c.sim.n2 = to_int(k, v); }},
      {"n1", [](ConfigFile& c, auto& k, auto& v) { c.sim.n1 = to_int(k, v); }},
      {"n2", [](ConfigFile& c, auto& k, auto& v) { c.sim.n2 = to_int(k, v); }},
      {"l1", [](ConfigFile& c, auto& k, auto& v) { c.sim.l1 = to_double(k, v); }},
      {"l2", [](ConfigFile& c, auto& k, auto& v) { c.sim.l2 = to_double(k, v); }},
      {"regime", [](ConfigFile&, auto&, auto&) {}},  // resolved together with epsilon
      {"epsilon", [](ConfigFile&, auto&, auto&) {}},
      {"dt", [](ConfigFile& c, auto& k, auto& v) { c.sim.dt = to_double(k, v); }},
      {"t_final", [](ConfigFile& c, auto& k, auto& v) { c.sim.t_final = to_double(k, v); }},
      {"cfl_safety", [](ConfigFile& c, auto& k, auto& v) { c.sim.cfl_safety = to_double(k, v); }},
      {"cfl", [](ConfigFile& c, auto& k, auto& v) { c.sim.use_cfl = to_bool(k, v); }},
      {"dealias", [](ConfigFile& c, auto& k, auto& v) { c.sim.dealias = to_bool(k, v); }},
      {"diag_every", [](ConfigFile& c, auto& k, auto& v) { c.sim.diag_every = to_int(k, v); }},
      {"forcing", [](ConfigFile& c, auto& k, auto& v) { c.sim.forcing = to_bool(k, v); }},
      {"seed", [](ConfigFile& c, auto& k, auto& v) { c.sim.seed = to_u64(k, v); }},
      {"explicit_diffusion", [](ConfigFile& c, auto& k, auto& v) { c.sim.explicit_diffusion = to_bool(k, v); }},
      {"freeze_velocity", [](ConfigFile& c, auto& k, auto& v) { c.sim.freeze_velocity = to_bool(k, v); }},
      {"snapshot_every", [](ConfigFile& c, auto& k, auto& v) { c.sim.snapshot_every = to_int(k, v); }},
      {"blowup_limit", [](ConfigFile& c, auto& k, auto& v) { c.sim.blowup_limit = to_double(k, v); }},
      {"init",
       [](ConfigFile& c, auto& k, auto& v) {
         try {
           c.sim.init.kind = parse_init_kind(v.value);
         } catch (const ConfigError& e) {
           fail(k, v, e.what());
         }
       }},
      {"init_decay", [](ConfigFile& c, auto& k, auto& v) { c.sim.init.spectrum.decay = to_double(k, v); }},
      {"init_kmax", [](ConfigFile& c, auto& k, auto& v) { c.sim.init.spectrum.kmax = to_double(k, v); }},
      {"init_v_l2", [](ConfigFile& c, auto& k, auto& v) { c.sim.init.v_l2 = to_double(k, v); }},
      {"init_s_l2", [](ConfigFile& c, auto& k, auto& v) { c.sim.init.s_l2 = to_double(k, v); }},
      {"init_trace_free", [](ConfigFile& c, auto& k, auto& v) { c.sim.init.trace_free = to_bool(k, v); }},
      {"mms_family",
       [](ConfigFile& c, auto& k, auto& v) {
         if (v.value == "trig")
           c.mms_family = MmsFamily::Trigonometric;
         else if (v.value == "smooth")
           c.mms_family = MmsFamily::Smooth;
         else
           fail(k, v, "expected trig or smooth");
       }},
      {"mms_amp_v", [](ConfigFile& c, auto& k, auto& v) { c.mms.amp_v = to_double(k, v); }},
      {"mms_amp_s", [](ConfigFile& c, auto& k, auto& v) { c.mms.amp_s = to_double(k, v); }},
      {"mms_omega", [](ConfigFile& c, auto& k, auto& v) { c.mms.omega = to_double(k, v); }},
  };
  return table;
}

}  // namespace

ConfigFile parse_config_file(const std::string& text, const std::map<std::string, std::string>& overrides,
                             const std::map<std::string, std::string>& defaults) {
  std::map<std::string, Located> values;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": missing key");
    if (value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": missing value for '" + key + "'");
    if (!setters().count(key)) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (values.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "' (first on line " +
                        std::to_string(values[key].line) + ")");
    values[key] = {value, lineno};
  }
  for (const auto& [k, v] : overrides) {
    if (!setters().count(k)) throw ConfigError("unknown override key '" + k + "'");
    values[k] = {v, 0};
  }
  for (const auto& [k, v] : defaults) {
    if (!setters().count(k)) throw ConfigError("unknown default key '" + k + "'");
    // A grid given as n1/n2 also satisfies a default for n.
    if (k == "n" && (values.count("n1") || values.count("n2"))) continue;
    if (k == "epsilon") continue;
    if (!values.count(k)) values[k] = {v, 0};
  }
  if (auto it = defaults.find("epsilon"); it != defaults.end() && !values.count("epsilon")) {
    if (!values.count("regime") || values["regime"].value != "none") values["epsilon"] = {it->second, 0};
  }

  ConfigFile cfg;
  // Apply n before n1/n2 so the specific keys win.
  if (auto it = values.find("n"); it != values.end()) setters().at("n")(cfg, "n", it->second);
  for (const auto& [k, v] : values)
    if (k != "n") setters().at(k)(cfg, k, v);

  const bool has_n = values.count("n") || (values.count("n1") && values.count("n2"));
  if (!has_n) throw ConfigError("missing required key 'n' (or both 'n1' and 'n2')");
  if (!values.count("regime")) throw ConfigError("missing required key 'regime'");
  const Located& rv = values["regime"];
  double eps = 0.0;
  if (rv.value != "none") {
    if (!values.count("epsilon")) throw ConfigError("regime '" + rv.value + "' requires 'epsilon'");
    eps = to_double("epsilon", values["epsilon"]);
  } else if (values.count("epsilon")) {
    eps = to_double("epsilon", values["epsilon"]);
    if (eps != 0.0) fail("epsilon", values["epsilon"], "regime 'none' takes epsilon = 0");
  }
  try {
    cfg.sim.reg = parse_regime(rv.value, eps);
    cfg.sim.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

SimConfig parse_config(const std::string& text) { return parse_config_file(text).sim; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> config_echo(const ConfigFile& c) {
  const SimConfig& s = c.sim;
  auto b = [](bool x) { return std::string(x ? "true" : "false"); };
  return {
      {"n1", std::to_string(s.n1)},
      {"n2", std::to_string(s.n2)},
      {"l1", fmt(s.l1)},
      {"l2", fmt(s.l2)},
      {"regime", s.reg.name()},
      {"epsilon", fmt(s.reg.eps)},
      {"dt", fmt(s.dt)},
      {"t_final", fmt(s.t_final)},
      {"cfl_safety", fmt(s.cfl_safety)},
      {"cfl", b(s.use_cfl)},
      {"dealias", b(s.dealias)},
      {"diag_every", std::to_string(s.diag_every)},
      {"forcing", b(s.forcing)},
      {"seed", std::to_string(s.seed)},
      {"explicit_diffusion", b(s.explicit_diffusion)},
      {"freeze_velocity", b(s.freeze_velocity)},
      {"snapshot_every", std::to_string(s.snapshot_every)},
      {"blowup_limit", fmt(s.blowup_limit)},
      {"init", to_string(s.init.kind)},
      {"init_decay", fmt(s.init.spectrum.decay)},
      {"init_kmax", fmt(s.init.spectrum.kmax)},
      {"init_v_l2", fmt(s.init.v_l2)},
      {"init_s_l2", fmt(s.init.s_l2)},
      {"init_trace_free", b(s.init.trace_free)},
      {"mms_family", to_string(c.mms_family)},
      {"mms_amp_v", fmt(c.mms.amp_v)},
      {"mms_amp_s", fmt(c.mms.amp_s)},
      {"mms_omega", fmt(c.mms.omega)},
  };
}

const std::vector<std::string>& diag_columns() {
  static const std::vector<std::string> cols = {
      "step",        "t",           "v_l2sq",       "s_l2sq",      "grad_v_l2sq",        "grad_s_l2sq",
      "lap_s_l2sq",  "s_linf",      "energy",       "energy_i",    "energy_ii_residual", "dissipation_integral",
      "xi_integral", "x",           "y_e",          "appendix_b",  "d3v_l2",             "d3s_l2",
      "mean_s11",    "mean_s12",    "mean_s22",     "max_abs_trace"};
  return cols;
}

std::vector<double> diag_values(const DiagRecord& r) {
  return {static_cast<double>(r.step),
          r.t,
          r.v_l2sq,
          r.s_l2sq,
          r.grad_v_l2sq,
          r.grad_s_l2sq,
          r.lap_s_l2sq,
          r.s_linf,
          r.energy,
          r.energy_i,
          r.energy_ii_residual,
          r.dissipation_integral,
          r.xi_integral,
          r.x,
          r.y_e,
          r.appendix_b,
          r.d3v_l2,
          r.d3s_l2,
          r.mean_s11,
          r.mean_s12,
          r.mean_s22,
          r.max_abs_trace};
}

std::string diag_csv(const Trajectory& tr) {
  std::string out = "# corot2d " + std::string(kVersion) + " stepper=" + tr.stepper + " regime=" + tr.reg.name() +
                    " epsilon=" + fmt(tr.reg.eps) + "\n";
  const auto& cols = diag_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += '\n';
  for (const auto& r : tr.rows) {
    const auto v = diag_values(r);
    out += std::to_string(r.step);
    for (std::size_t i = 1; i < v.size(); ++i) out += "," + fmt(v[i]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

void write_diag_csv(const Trajectory& tr, const std::string& path) { write_text_file(path, diag_csv(tr)); }

namespace {

std::uint64_t to_le(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::little) return x;
  std::uint64_t y = 0;
  for (int i = 0; i < 8; ++i) y |= ((x >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return y;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& s) {
  if (s.samples.size() != static_cast<std::size_t>(s.n1) * s.n2)
    throw DimensionError("write_snapshot: sample count does not match " + std::to_string(s.n1) + "x" +
                         std::to_string(s.n2));
  if (s.name.empty() || s.name.find_first_of(" \t\n") != std::string::npos)
    throw std::invalid_argument("write_snapshot: field name must be a single non-empty token");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  const std::string header = "RES2D v1 " + std::to_string(s.n1) + " " + std::to_string(s.n2) + " " + fmt(s.l1) +
                             " " + fmt(s.l2) + " " + fmt(s.t) + " " + s.name + "\n";
  f.write(header.data(), static_cast<std::streamsize>(header.size()));
  std::vector<std::uint64_t> raw(s.samples.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = to_le(std::bit_cast<std::uint64_t>(s.samples[i]));
  f.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 8));
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

void write_snapshot(const std::string& path, const ScalarField& f, double t, const std::string& name) {
  const PeriodicGrid& g = f.grid();
  write_snapshot(path, Snapshot{g.n1(), g.n2(), g.l1(), g.l2(), t, name, f.physical()});
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string header;
  if (!std::getline(f, header)) throw std::runtime_error("'" + path + "': missing RES2D header");
  std::istringstream hs(header);
  std::string magic, version;
  Snapshot s;
  std::string l1, l2, t;
  hs >> magic >> version >> s.n1 >> s.n2 >> l1 >> l2 >> t >> s.name;
  if (!hs || magic != "RES2D" || version != "v1")
    throw std::runtime_error("'" + path + "': header mismatch, expected 'RES2D v1 N1 N2 L1 L2 t name'");
  std::string rest;
  if (hs >> rest) throw std::runtime_error("'" + path + "': trailing tokens in header");
  if (s.n1 <= 0 || s.n2 <= 0) throw std::runtime_error("'" + path + "': bad dimensions in header");
  s.l1 = std::strtod(l1.c_str(), nullptr);
  s.l2 = std::strtod(l2.c_str(), nullptr);
  s.t = std::strtod(t.c_str(), nullptr);
  const std::size_t n = static_cast<std::size_t>(s.n1) * s.n2;
  std::vector<std::uint64_t> raw(n);
  f.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * 8));
  if (static_cast<std::size_t>(f.gcount()) != n * 8)
    throw std::runtime_error("'" + path + "': truncated data, expected " + std::to_string(n) + " doubles");
  if (f.peek() != std::char_traits<char>::eof()) throw std::runtime_error("'" + path + "': trailing bytes after data");
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.samples[i] = std::bit_cast<double>(to_le(raw[i]));
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["version"] = m.version;
  j["stepper"] = m.stepper;
  j["seed"] = m.seed;
  j["config"] = m.config;
  j["start_time"] = m.start_time;
  j["end_time"] = m.end_time;
  j["status"] = m.status;
  if (m.status == "blow-up") j["blowup_time"] = m.blowup_time;
  if (!m.message.empty()) j["message"] = m.message;
  j["outputs"] = m.outputs;
  write_text_file(path, j.dump(2) + "\n");
}

std::string mms_csv(const std::vector<MmsRow>& rows) {
  std::string out = "ladder,family,n,dt,err_v,err_s,ratio_v,ratio_s,order_v,order_s,status\n";
  for (const auto& r : rows) {
    out += r.ladder + "," + to_string(r.family) + "," + std::to_string(r.n) + "," + fmt(r.dt) + "," +
           fmt(r.err_v) + "," + fmt(r.err_s) + "," + fmt(r.ratio_v) + "," + fmt(r.ratio_s) + "," +
           fmt(r.order_v) + "," + fmt(r.order_s) + "," + r.status + "\n";
  }
  return out;
}

std::string galerkin_csv(const std::vector<GalerkinRow>& rows) {
  std::string out = "n_coarse,n_fine,sup_dv,sup_ds,sup_dv_full,sup_ds_full,status\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n_coarse) + "," + std::to_string(r.n_fine) + "," + fmt(r.sup_dv) + "," +
           fmt(r.sup_ds) + "," + fmt(r.sup_dv_full) + "," + fmt(r.sup_ds_full) + "," + r.status + "\n";
  }
  return out;
}

}  // namespace corot2d
