#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/denoise.hpp"
#include "core/odometry.hpp"
#include "core/pose.hpp"
#include "core/severity_profile.hpp"
#include "core/types.hpp"

namespace lcorrupt {

enum class DatasetKind { synthetic, kitti };
enum class SubjectKind { odometry, external };
enum class DefenseKind { none, denoise, export_augmentation };
enum class MetricsMode { consecutive, kitti_segments };

// Full description of one sweep: dataset, corruption grid, subject system,
// optional defense, metric mode, and outputs. Loadable from a flat INI file;
// render() prints every effective value, defaults included.
struct ExperimentConfig {
  DatasetKind dataset = DatasetKind::synthetic;
  std::string scene = "corridor";
  int frames = 50;
  std::uint64_t scene_seed = 0;
  std::string kitti_dir;    // directory of .bin scans
  std::string kitti_poses;  // ground-truth pose file

  std::vector<CorruptionKind> corruptions;
  std::vector<int> severities = {1, 2, 3, 4, 5};
  std::vector<std::uint64_t> seeds = {1};
  bool baseline_only = false;
  std::string profile_file;  // empty = built-in defaults
  int threads = 1;           // <= 0 = hardware concurrency

  SubjectKind subject = SubjectKind::odometry;
  OdometryConfig odometry;
  std::string external_poses;

  DefenseKind defense = DefenseKind::none;
  BilateralParams denoise;
  std::string augment_dir;  // defense = export_augmentation

  MetricsMode metrics = MetricsMode::consecutive;
  std::vector<double> segment_lengths;  // empty = standard 100..800 m

  std::string output_csv;
  std::string output_json;
  std::string output_plot;

  SeverityProfile profile = SeverityProfile::defaults();

  // Parses the INI text; unknown sections or keys are config errors. When
  // defense = denoise and no severities are given, the severity subset
  // defaults to {1, 3, 5}.
  static ExperimentConfig from_ini_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  std::string render() const;
  void validate() const;
};

// One sweep cell result. Baseline rows use kind "clean" and severity 0.
// rpe_rot_deg is in degrees; all metrics are NaN when not applicable or when
// the row failed.
struct ExperimentRow {
  std::string kind;
  int severity = 0;
  std::uint64_t seed = 0;
  double rpe_trans_m = 0.0;
  double rpe_rot_deg = 0.0;
  double drift_percent = 0.0;
  int flagged = 0;
  double wall_s = 0.0;
  bool failed = false;
  std::string note;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::string config_hash;  // hash of the rendered effective config
  std::string version;

  // Fixed header kind,severity,seed,rpe_trans_m,rpe_rot_deg,drift_percent,
  // flagged,wall_s. NaN fields are written as "nan".
  std::string to_csv() const;
  std::string to_json() const;
  static ExperimentReport from_json_text(const std::string& text);

  // One whitespace-separated table per kind: severity vs mean metric across
  // seeds (failed rows excluded from means).
  std::string to_plot_data() const;

  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;
  void write_plot_data(const std::string& path) const;
};

// Runs the sweep: one baseline row per seed (clean frames) plus one row per
// (kind, severity, seed) cell, rows sorted with baselines first, then by
// kind ordinal, severity, seed. Cells run in parallel across cfg.threads
// workers; per-frame corruption seeds make the result schedule-independent.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct AugmentationEntry {
  std::int64_t frame_id = 0;
  std::string kind;
  int severity = 1;
  std::uint64_t seed = 0;
  std::string path;
  std::uint64_t point_count = 0;
};

struct AugmentationManifest {
  std::string manifest_path;
  std::vector<AugmentationEntry> entries;
};

// Writes corrupted copies of every frame under out_dir/<kind>/<frame>.bin
// (frame numbering preserved) and a manifest.json listing every output.
AugmentationManifest export_augmentation(const std::vector<PointCloud>& frames,
                                         const std::vector<CorruptionKind>& kinds, int severity,
                                         std::uint64_t seed, const SeverityProfile& profile,
                                         const std::string& out_dir);

// Loaded dataset: frames plus ground truth, shared by experiment and CLI.
struct Dataset {
  std::vector<PointCloud> frames;
  Trajectory ground_truth;
};

Dataset load_dataset(const ExperimentConfig& cfg);

}  // namespace lcorrupt
