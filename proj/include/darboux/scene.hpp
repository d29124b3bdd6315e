#pragma once

#include <darboux/verify.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace darboux {

struct GridSpec {
  double s0 = 0.0;
  double s1 = 1.0;
  int n = kDefaultSamples;

  Grid grid() const { return Grid(s0, s1, n); }
  /// "s0:s1:n"; bounds may be constant expressions such as 8*pi.
  static GridSpec parse(const std::string& text);
};

struct SceneConfig {
  std::string name;
  std::string description;
  CurveSource source;
  GridSpec grid;
  std::vector<Family> families;
  FamilyConstants constants;
  std::vector<std::string> formats{"csv", "obj", "json"};
  double rel_tol = kDefaultRelTol;
};

/// Parses a scene document (JSON text); config errors name the offending key.
SceneConfig parseScene(const std::string& json_text);
SceneConfig builtinScene(const std::string& name);
/// "name: description", sorted by name.
std::vector<std::string> listBuiltins();
/// A built-in name, or a path to a JSON scene file.
SceneConfig loadScene(const std::string& name_or_path);

/// Built-in scenes plus synthetic curvature streams, for sweeps and tests.
std::vector<Fixture> fixtureSuite();

enum class Stage { validate, frames, classify, construct, verify };

struct RunOptions {
  Stage last = Stage::verify;
  bool report_only = false;
  bool export_frames = true;  // frames.csv when csv is among the formats
  std::string out_dir;        // empty: keep payloads in memory only
  std::optional<std::vector<std::string>> formats;  // overrides the scene's formats
  Exec exec = Exec::parallel;
};

struct ExportRecord {
  std::string format;  // csv, obj-polyline, json-report
  std::string path;    // file name relative to out_dir
  std::string payload;
};

struct RunResult {
  int exit_code = 0;
  std::string report;  // JSON document
  std::string error;   // "stage: kind: message" when a stage failed
  std::vector<ExportRecord> exports;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int math = 2;
inline constexpr int verification = 3;
}  // namespace exit_code

int exitCodeFor(ErrorKind kind);

RunResult runScene(const SceneConfig& config, const RunOptions& options = {});

/// Shortest round-trip decimal form, locale independent.
std::string formatNumber(double x);

std::string framesCsv(std::span<const DarbouxSample> samples);
std::string associatedCsv(const AssociatedCurve& a);
std::string polylineObj(const std::string& name, std::span<const Vec3> points);

/// Readers for the exported layouts.
std::vector<Vec3> readObjPolyline(const std::string& text);
std::vector<Vec3> readAssociatedCsv(const std::string& text);

}  // namespace darboux
