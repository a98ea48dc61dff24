#pragma once

#include <map>
#include <string>
#include <vector>

#include "corot2d/analysis.hpp"
#include "corot2d/manufactured.hpp"

namespace corot2d {

inline constexpr const char* kVersion = "0.1.0";

/// Everything a config file can set: the simulation itself plus the
/// manufactured-solution parameters used when forcing is on.
struct ConfigFile {
  SimConfig sim;
  MmsFamily mms_family = MmsFamily::Trigonometric;
  MmsProfile mms;
};

/// `key = value` lines, `#` starts a comment. `overrides` are applied after
/// the text as if they were extra lines (later wins); `defaults` fill keys that
/// neither sets. Grid (`n`, or `n1` and `n2`) and `regime` are required;
/// `epsilon` when the regime is not none.
ConfigFile parse_config_file(const std::string& text, const std::map<std::string, std::string>& overrides = {},
                             const std::map<std::string, std::string>& defaults = {});
SimConfig parse_config(const std::string& text);
std::string read_text_file(const std::string& path);

/// Canonical `key = value` listing, enough to reproduce the run.
std::map<std::string, std::string> config_echo(const ConfigFile& cfg);

/// Column names of the diagnostic CSV, in order.
const std::vector<std::string>& diag_columns();
std::vector<double> diag_values(const DiagRecord& r);
/// One comment line (version, stepper, regime) then the header, then a row
/// per record with 17 significant digits.
std::string diag_csv(const Trajectory& tr);
void write_diag_csv(const Trajectory& tr, const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct Snapshot {
  int n1 = 0, n2 = 0;
  double l1 = 0.0, l2 = 0.0, t = 0.0;
  std::string name;
  std::vector<double> samples;  ///< row-major, x fastest
};

/// RES2D v1: one header line, then N1*N2 little-endian doubles.
void write_snapshot(const std::string& path, const Snapshot& s);
void write_snapshot(const std::string& path, const ScalarField& f, double t, const std::string& name);
Snapshot read_snapshot(const std::string& path);

struct RunManifest {
  std::map<std::string, std::string> config;
  std::string command;
  std::string stepper;
  std::string version = kVersion;
  std::uint64_t seed = 0;
  std::string start_time, end_time;
  std::string status;  ///< completed, blow-up or error
  double blowup_time = 0.0;
  std::string message;
  std::vector<std::string> outputs;
};

std::string utc_timestamp();
void write_manifest(const std::string& path, const RunManifest& m);

std::string mms_csv(const std::vector<MmsRow>& rows);
std::string galerkin_csv(const std::vector<GalerkinRow>& rows);

}  // namespace corot2d
