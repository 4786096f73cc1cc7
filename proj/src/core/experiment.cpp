#include "core/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "core/corruption.hpp"
#include "core/error.hpp"
#include "core/evaluation.hpp"
#include "core/ini.hpp"
#include "core/kitti_io.hpp"
#include "core/rng.hpp"
#include "core/synthetic.hpp"
#include "core/version.hpp"

namespace lcorrupt {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double json_number(const json& v) {
  if (v.is_null()) return kNaN;
  return v.get<double>();
}

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

std::string fnv1a_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- config parsing -------------------------------------------------------

const char* dataset_name(DatasetKind k) { return k == DatasetKind::synthetic ? "synthetic" : "kitti"; }
const char* subject_name(SubjectKind k) { return k == SubjectKind::odometry ? "odometry" : "external"; }

const char* defense_name(DefenseKind k) {
  switch (k) {
    case DefenseKind::none: return "none";
    case DefenseKind::denoise: return "denoise";
    case DefenseKind::export_augmentation: return "export_augmentation";
  }
  return "none";
}

const char* metrics_name(MetricsMode m) {
  return m == MetricsMode::consecutive ? "consecutive" : "kitti_segments";
}

[[noreturn]] void bad_value(const std::string& section, const std::string& key,
                            const std::string& value) {
  throw config_error("experiment config: bad value '" + value + "' for [" + section + "] " + key);
}

struct KeyReader {
  explicit KeyReader(const IniSection* s) : section(s) {}

  const IniSection* section = nullptr;
  std::set<std::string> seen;

  const std::string* get(const std::string& key) {
    if (!section) return nullptr;
    seen.insert(key);
    return section->find(key);
  }

  void check_unknown() const {
    if (!section) return;
    for (const auto& [key, value] : section->entries) {
      if (!seen.count(key)) {
        throw config_error("experiment config: unknown key '" + key + "' in section [" +
                           section->name + "]");
      }
    }
  }
};

std::vector<CorruptionKind> parse_kinds(const std::string& value) {
  std::vector<CorruptionKind> kinds;
  for (const std::string& token : split_tokens(value)) {
    if (token == "all") {
      for (CorruptionKind k : all_kinds()) kinds.push_back(k);
      continue;
    }
    kinds.push_back(kind_from_name(token));
  }
  return kinds;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_ini_text(const std::string& text) {
  const IniDocument doc = IniDocument::parse(text);
  for (const IniSection& s : doc.sections) {
    static const std::set<std::string> known = {"",        "dataset", "sweep",  "subject",
                                                "defense", "metrics", "output"};
    if (!known.count(s.name)) {
      throw config_error("experiment config: unknown section [" + s.name + "]");
    }
    if (s.name.empty() && !s.entries.empty()) {
      throw config_error("experiment config: keys before the first section");
    }
  }

  ExperimentConfig cfg;
  bool severities_given = false;

  KeyReader dataset{doc.find("dataset")};
  if (const auto* v = dataset.get("type")) {
    if (*v == "synthetic") cfg.dataset = DatasetKind::synthetic;
    else if (*v == "kitti") cfg.dataset = DatasetKind::kitti;
    else bad_value("dataset", "type", *v);
  }
  if (const auto* v = dataset.get("scene")) cfg.scene = *v;
  if (const auto* v = dataset.get("frames")) cfg.frames = static_cast<int>(parse_int(*v));
  if (const auto* v = dataset.get("scene_seed")) {
    cfg.scene_seed = static_cast<std::uint64_t>(parse_int(*v));
  }
  if (const auto* v = dataset.get("dir")) cfg.kitti_dir = *v;
  if (const auto* v = dataset.get("poses")) cfg.kitti_poses = *v;
  dataset.check_unknown();

  KeyReader sweep{doc.find("sweep")};
  if (const auto* v = sweep.get("corruptions")) cfg.corruptions = parse_kinds(*v);
  if (const auto* v = sweep.get("severities")) {
    severities_given = true;
    cfg.severities.clear();
    for (const std::string& token : split_tokens(*v)) {
      cfg.severities.push_back(static_cast<int>(parse_int(token)));
    }
  }
  if (const auto* v = sweep.get("seeds")) {
    cfg.seeds.clear();
    for (const std::string& token : split_tokens(*v)) {
      cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int(token)));
    }
  }
  if (const auto* v = sweep.get("baseline_only")) cfg.baseline_only = parse_bool(*v);
  if (const auto* v = sweep.get("profile")) cfg.profile_file = *v;
  if (const auto* v = sweep.get("threads")) cfg.threads = static_cast<int>(parse_int(*v));
  sweep.check_unknown();

  KeyReader subject{doc.find("subject")};
  if (const auto* v = subject.get("type")) {
    if (*v == "odometry") cfg.subject = SubjectKind::odometry;
    else if (*v == "external") cfg.subject = SubjectKind::external;
    else bad_value("subject", "type", *v);
  }
  if (const auto* v = subject.get("external_poses")) cfg.external_poses = *v;
  if (const auto* v = subject.get("voxel_size")) cfg.odometry.voxel_size = parse_double(*v);
  if (const auto* v = subject.get("max_corr_dist")) cfg.odometry.max_corr_dist = parse_double(*v);
  if (const auto* v = subject.get("max_iterations")) {
    cfg.odometry.max_iterations = static_cast<int>(parse_int(*v));
  }
  if (const auto* v = subject.get("convergence_eps")) {
    cfg.odometry.convergence_eps = parse_double(*v);
  }
  if (const auto* v = subject.get("robust_delta")) cfg.odometry.robust_delta = parse_double(*v);
  if (const auto* v = subject.get("use_constant_velocity")) {
    cfg.odometry.use_constant_velocity = parse_bool(*v);
  }
  subject.check_unknown();

  KeyReader defense{doc.find("defense")};
  if (const auto* v = defense.get("type")) {
    if (*v == "none") cfg.defense = DefenseKind::none;
    else if (*v == "denoise") cfg.defense = DefenseKind::denoise;
    else if (*v == "export_augmentation") cfg.defense = DefenseKind::export_augmentation;
    else bad_value("defense", "type", *v);
  }
  if (const auto* v = defense.get("radius")) cfg.denoise.radius = parse_double(*v);
  if (const auto* v = defense.get("sigma_d")) cfg.denoise.sigma_d = parse_double(*v);
  if (const auto* v = defense.get("sigma_n")) cfg.denoise.sigma_n = parse_double(*v);
  if (const auto* v = defense.get("iterations")) {
    cfg.denoise.iterations = static_cast<int>(parse_int(*v));
  }
  if (const auto* v = defense.get("normal_k")) cfg.denoise.normal_k = static_cast<int>(parse_int(*v));
  if (const auto* v = defense.get("out_dir")) cfg.augment_dir = *v;
  defense.check_unknown();

  KeyReader metrics{doc.find("metrics")};
  if (const auto* v = metrics.get("mode")) {
    if (*v == "consecutive") cfg.metrics = MetricsMode::consecutive;
    else if (*v == "kitti_segments") cfg.metrics = MetricsMode::kitti_segments;
    else bad_value("metrics", "mode", *v);
  }
  if (const auto* v = metrics.get("lengths")) {
    cfg.segment_lengths.clear();
    for (const std::string& token : split_tokens(*v)) {
      cfg.segment_lengths.push_back(parse_double(token));
    }
  }
  metrics.check_unknown();

  KeyReader output{doc.find("output")};
  if (const auto* v = output.get("csv")) cfg.output_csv = *v;
  if (const auto* v = output.get("json")) cfg.output_json = *v;
  if (const auto* v = output.get("plot")) cfg.output_plot = *v;
  output.check_unknown();

  if (cfg.defense == DefenseKind::denoise && !severities_given) cfg.severities = {1, 3, 5};
  if (!cfg.profile_file.empty()) cfg.profile = SeverityProfile::load(cfg.profile_file);

  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open experiment config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return from_ini_text(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void ExperimentConfig::validate() const {
  if (corruptions.empty() && !baseline_only) {
    throw config_error("experiment config: empty corruption list without baseline_only");
  }
  for (const int s : severities) {
    if (s < 1 || s > kSeverityLevels) {
      throw config_error("experiment config: severity " + std::to_string(s) +
                         " outside 1.." + std::to_string(kSeverityLevels));
    }
  }
  if (severities.empty()) throw config_error("experiment config: empty severity list");
  if (seeds.empty()) throw config_error("experiment config: empty seed list");
  if (dataset == DatasetKind::synthetic && frames < 2) {
    throw config_error("experiment config: synthetic dataset needs frames >= 2");
  }
  if (dataset == DatasetKind::kitti && kitti_dir.empty()) {
    throw config_error("experiment config: kitti dataset needs dir");
  }
  if (dataset == DatasetKind::kitti && kitti_poses.empty()) {
    throw config_error("experiment config: kitti dataset needs poses");
  }
  if (subject == SubjectKind::external && external_poses.empty()) {
    throw config_error("experiment config: external subject needs external_poses");
  }
  if (defense == DefenseKind::export_augmentation && augment_dir.empty()) {
    throw config_error("experiment config: export_augmentation defense needs out_dir");
  }
  for (const double l : segment_lengths) {
    if (!(l > 0)) throw config_error("experiment config: segment lengths must be > 0");
  }
  odometry.validate();
  denoise.validate();
  profile.validate();
}

std::string ExperimentConfig::render() const {
  std::ostringstream out;
  out << "[dataset]\n";
  out << "type = " << dataset_name(dataset) << "\n";
  if (dataset == DatasetKind::synthetic) {
    out << "scene = " << scene << "\n";
    out << "frames = " << frames << "\n";
    out << "scene_seed = " << scene_seed << "\n";
  } else {
    out << "dir = " << kitti_dir << "\n";
    out << "poses = " << kitti_poses << "\n";
  }
  out << "\n[sweep]\n";
  out << "corruptions =";
  for (std::size_t i = 0; i < corruptions.size(); ++i) {
    out << (i ? ", " : " ") << kind_name(corruptions[i]);
  }
  out << "\n";
  out << "severities =";
  for (std::size_t i = 0; i < severities.size(); ++i) out << (i ? ", " : " ") << severities[i];
  out << "\n";
  out << "seeds =";
  for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? ", " : " ") << seeds[i];
  out << "\n";
  out << "baseline_only = " << (baseline_only ? "true" : "false") << "\n";
  out << "profile = " << profile_file << "\n";
  out << "threads = " << threads << "\n";
  out << "\n[subject]\n";
  out << "type = " << subject_name(subject) << "\n";
  if (subject == SubjectKind::external) out << "external_poses = " << external_poses << "\n";
  out << "voxel_size = " << format_double(odometry.voxel_size) << "\n";
  out << "max_corr_dist = " << format_double(odometry.max_corr_dist) << "\n";
  out << "max_iterations = " << odometry.max_iterations << "\n";
  out << "convergence_eps = " << format_double(odometry.convergence_eps) << "\n";
  out << "robust_delta = " << format_double(odometry.robust_delta) << "\n";
  out << "use_constant_velocity = " << (odometry.use_constant_velocity ? "true" : "false") << "\n";
  out << "\n[defense]\n";
  out << "type = " << defense_name(defense) << "\n";
  if (defense == DefenseKind::denoise) {
    out << "radius = " << format_double(denoise.radius) << "\n";
    out << "sigma_d = " << format_double(denoise.sigma_d) << "\n";
    out << "sigma_n = " << format_double(denoise.sigma_n) << "\n";
    out << "iterations = " << denoise.iterations << "\n";
    out << "normal_k = " << denoise.normal_k << "\n";
  }
  if (defense == DefenseKind::export_augmentation) out << "out_dir = " << augment_dir << "\n";
  out << "\n[metrics]\n";
  out << "mode = " << metrics_name(metrics) << "\n";
  out << "lengths =";
  const std::vector<double> lengths =
      segment_lengths.empty() ? default_drift_lengths() : segment_lengths;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    out << (i ? ", " : " ") << format_double(lengths[i]);
  }
  out << "\n";
  out << "\n[output]\n";
  out << "csv = " << output_csv << "\n";
  out << "json = " << output_json << "\n";
  out << "plot = " << output_plot << "\n";
  return out.str();
}

// --- report serialization --------------------------------------------------

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << "kind,severity,seed,rpe_trans_m,rpe_rot_deg,drift_percent,flagged,wall_s\n";
  for (const ExperimentRow& r : rows) {
    out << r.kind << ',' << r.severity << ',' << r.seed << ',' << format_double(r.rpe_trans_m)
        << ',' << format_double(r.rpe_rot_deg) << ',' << format_double(r.drift_percent) << ','
        << r.flagged << ',' << format_double(r.wall_s) << "\n";
  }
  return out.str();
}

std::string ExperimentReport::to_json() const {
  json doc;
  doc["metadata"] = {{"config_hash", config_hash}, {"version", version}};
  doc["rows"] = json::array();
  for (const ExperimentRow& r : rows) {
    doc["rows"].push_back({{"kind", r.kind},
                           {"severity", r.severity},
                           {"seed", r.seed},
                           {"rpe_trans_m", number_or_null(r.rpe_trans_m)},
                           {"rpe_rot_deg", number_or_null(r.rpe_rot_deg)},
                           {"drift_percent", number_or_null(r.drift_percent)},
                           {"flagged", r.flagged},
                           {"wall_s", number_or_null(r.wall_s)},
                           {"failed", r.failed},
                           {"note", r.note}});
  }
  return doc.dump(2) + "\n";
}

ExperimentReport ExperimentReport::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw io_error(std::string("report JSON parse error: ") + e.what());
  }
  ExperimentReport report;
  try {
    report.config_hash = doc.at("metadata").at("config_hash").get<std::string>();
    report.version = doc.at("metadata").at("version").get<std::string>();
    for (const json& r : doc.at("rows")) {
      ExperimentRow row;
      row.kind = r.at("kind").get<std::string>();
      row.severity = r.at("severity").get<int>();
      row.seed = r.at("seed").get<std::uint64_t>();
      row.rpe_trans_m = json_number(r.at("rpe_trans_m"));
      row.rpe_rot_deg = json_number(r.at("rpe_rot_deg"));
      row.drift_percent = json_number(r.at("drift_percent"));
      row.flagged = r.at("flagged").get<int>();
      row.wall_s = json_number(r.at("wall_s"));
      row.failed = r.at("failed").get<bool>();
      row.note = r.at("note").get<std::string>();
      report.rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw io_error(std::string("report JSON has unexpected shape: ") + e.what());
  }
  return report;
}

std::string ExperimentReport::to_plot_data() const {
  // Preserve first-appearance order of kinds (baselines come first).
  std::vector<std::string> kinds;
  for (const ExperimentRow& r : rows) {
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end()) kinds.push_back(r.kind);
  }

  std::ostringstream out;
  bool first = true;
  for (const std::string& kind : kinds) {
    if (!first) out << "\n";
    first = false;
    out << "# corruption: " << kind << "\n";
    out << "# severity rpe_trans_m rpe_rot_deg drift_percent\n";
    std::set<int> severities;
    for (const ExperimentRow& r : rows) {
      if (r.kind == kind) severities.insert(r.severity);
    }
    for (const int severity : severities) {
      double trans = 0, rot = 0, drift = 0;
      int n = 0, n_drift = 0;
      for (const ExperimentRow& r : rows) {
        if (r.kind != kind || r.severity != severity || r.failed) continue;
        trans += r.rpe_trans_m;
        rot += r.rpe_rot_deg;
        ++n;
        if (!std::isnan(r.drift_percent)) {
          drift += r.drift_percent;
          ++n_drift;
        }
      }
      out << severity << ' ' << format_double(n ? trans / n : kNaN) << ' '
          << format_double(n ? rot / n : kNaN) << ' '
          << format_double(n_drift ? drift / n_drift : kNaN) << "\n";
    }
  }
  return out.str();
}

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace

void ExperimentReport::write_csv(const std::string& path) const {
  write_text_file(path, to_csv());
}
void ExperimentReport::write_json(const std::string& path) const {
  write_text_file(path, to_json());
}
void ExperimentReport::write_plot_data(const std::string& path) const {
  write_text_file(path, to_plot_data());
}

// --- dataset loading --------------------------------------------------------

Dataset load_dataset(const ExperimentConfig& cfg) {
  Dataset data;
  if (cfg.dataset == DatasetKind::synthetic) {
    const auto frames = generate_synthetic_sequence(cfg.scene, cfg.frames, cfg.scene_seed);
    data.ground_truth = ground_truth(frames);
    data.frames = clouds_of(frames);
    return data;
  }
  const std::vector<std::string> files = list_kitti_frames(cfg.kitti_dir);
  data.frames.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    PointCloud cloud = read_kitti_bin(files[i]);
    cloud.frame_id = static_cast<std::int64_t>(i);
    data.frames.push_back(std::move(cloud));
  }
  data.ground_truth = read_kitti_poses(cfg.kitti_poses);
  if (data.ground_truth.size() != data.frames.size()) {
    throw invalid_argument_error("kitti dataset: " + std::to_string(data.frames.size()) +
                                 " scans but " + std::to_string(data.ground_truth.size()) +
                                 " ground-truth poses");
  }
  return data;
}

// --- sweep -------------------------------------------------------------------

namespace {

struct Cell {
  bool baseline = false;
  CorruptionKind kind = CorruptionKind::rain;
  int severity = 0;
  std::uint64_t seed = 0;
};

struct Metrics {
  double rpe_trans_m = kNaN;
  double rpe_rot_deg = kNaN;
  double drift_percent = kNaN;
  int flagged = 0;
};

Trajectory subject_trajectory(const ExperimentConfig& cfg, const std::vector<PointCloud>& frames,
                              const Trajectory& external, int* flagged) {
  if (cfg.subject == SubjectKind::external) {
    *flagged = 0;
    return external;
  }
  OdometryResult result = run_odometry(frames, cfg.odometry);
  *flagged = static_cast<int>(result.flagged_frames.size());
  return result.trajectory;
}

Metrics evaluate_subject(const ExperimentConfig& cfg, const std::vector<PointCloud>& frames,
                         const Dataset& data, const Trajectory& external) {
  Metrics m;
  const Trajectory est = subject_trajectory(cfg, frames, external, &m.flagged);
  const RpeReport report = rpe(est, data.ground_truth, consecutive_pairs(data.ground_truth));
  m.rpe_trans_m = report.rpe_trans;
  m.rpe_rot_deg = report.rpe_rot * 180.0 / std::numbers::pi;
  if (cfg.metrics == MetricsMode::kitti_segments) {
    const std::vector<double> lengths =
        cfg.segment_lengths.empty() ? default_drift_lengths() : cfg.segment_lengths;
    m.drift_percent = kitti_drift(est, data.ground_truth, lengths);
  }
  return m;
}

std::vector<PointCloud> corrupt_frames(const std::vector<PointCloud>& frames, const Cell& cell,
                                       const ExperimentConfig& cfg) {
  std::vector<PointCloud> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::int64_t frame_id =
        frames[i].frame_id >= 0 ? frames[i].frame_id : static_cast<std::int64_t>(i);
    CorruptionSpec spec;
    spec.kind = cell.kind;
    spec.severity = cell.severity;
    spec.seed = derive_frame_seed(cell.seed, static_cast<std::uint64_t>(frame_id),
                                  static_cast<std::uint64_t>(cell.kind));
    out.push_back(corrupt(frames[i], spec, cfg.profile));
  }
  return out;
}

std::vector<PointCloud> denoise_frames(const std::vector<PointCloud>& frames,
                                       const BilateralParams& params) {
  std::vector<PointCloud> out;
  out.reserve(frames.size());
  for (const PointCloud& f : frames) out.push_back(bilateral_filter(f, params));
  return out;
}

ExperimentRow run_cell(const Cell& cell, const ExperimentConfig& cfg, const Dataset& data,
                       const Trajectory& external) {
  ExperimentRow row;
  row.kind = cell.baseline ? "clean" : kind_name(cell.kind);
  row.severity = cell.severity;
  row.seed = cell.seed;
  row.rpe_trans_m = kNaN;
  row.rpe_rot_deg = kNaN;
  row.drift_percent = kNaN;

  const auto start = std::chrono::steady_clock::now();
  try {
    if (cfg.defense == DefenseKind::export_augmentation) {
      if (cell.baseline) {
        const Metrics m = evaluate_subject(cfg, data.frames, data, external);
        row.rpe_trans_m = m.rpe_trans_m;
        row.rpe_rot_deg = m.rpe_rot_deg;
        row.drift_percent = m.drift_percent;
        row.flagged = m.flagged;
      } else {
        const std::string out_dir = cfg.augment_dir + "/sev" + std::to_string(cell.severity) +
                                    "/seed" + std::to_string(cell.seed);
        const AugmentationManifest manifest = export_augmentation(
            data.frames, {cell.kind}, cell.severity, cell.seed, cfg.profile, out_dir);
        row.note = "exported " + std::to_string(manifest.entries.size()) + " frames";
      }
    } else {
      std::vector<PointCloud> frames =
          cell.baseline ? data.frames : corrupt_frames(data.frames, cell, cfg);
      if (cfg.defense == DefenseKind::denoise) frames = denoise_frames(frames, cfg.denoise);
      const Metrics m = evaluate_subject(cfg, frames, data, external);
      row.rpe_trans_m = m.rpe_trans_m;
      row.rpe_rot_deg = m.rpe_rot_deg;
      row.drift_percent = m.drift_percent;
      row.flagged = m.flagged;
    }
  } catch (const std::exception& e) {
    row.failed = true;
    row.note = e.what();
    row.rpe_trans_m = kNaN;
    row.rpe_rot_deg = kNaN;
    row.drift_percent = kNaN;
  }
  row.wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset data = load_dataset(cfg);

  Trajectory external;
  if (cfg.subject == SubjectKind::external) external = read_kitti_poses(cfg.external_poses);

  // Deterministic cell order: baselines first, then kind ordinal, severity,
  // seed. Rows land in preassigned slots, so scheduling cannot reorder them.
  std::vector<std::uint64_t> seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  std::vector<int> severities = cfg.severities;
  std::sort(severities.begin(), severities.end());
  severities.erase(std::unique(severities.begin(), severities.end()), severities.end());
  std::vector<CorruptionKind> kinds = cfg.corruptions;
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

  std::vector<Cell> cells;
  for (const std::uint64_t seed : seeds) {
    cells.push_back({.baseline = true, .severity = 0, .seed = seed});
  }
  if (!cfg.baseline_only) {
    for (const CorruptionKind kind : kinds) {
      for (const int severity : severities) {
        for (const std::uint64_t seed : seeds) {
          cells.push_back({.baseline = false, .kind = kind, .severity = severity, .seed = seed});
        }
      }
    }
  }

  std::vector<ExperimentRow> rows(cells.size());
  int worker_count = cfg.threads;
  if (worker_count <= 0) worker_count = static_cast<int>(std::thread::hardware_concurrency());
  if (worker_count < 1) worker_count = 1;
  worker_count = std::min<int>(worker_count, static_cast<int>(cells.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      rows[i] = run_cell(cells[i], cfg, data, external);
    }
  };
  if (worker_count <= 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int t = 0; t < worker_count; ++t) workers.emplace_back(work);
    for (std::thread& t : workers) t.join();
  }

  ExperimentReport report;
  report.rows = std::move(rows);
  report.config_hash = fnv1a_hash(cfg.render());
  report.version = kVersion;
  return report;
}

// --- augmentation export -----------------------------------------------------

AugmentationManifest export_augmentation(const std::vector<PointCloud>& frames,
                                         const std::vector<CorruptionKind>& kinds, int severity,
                                         std::uint64_t seed, const SeverityProfile& profile,
                                         const std::string& out_dir) {
  if (frames.empty()) throw empty_input_error("export_augmentation: no frames");
  if (kinds.empty()) throw invalid_argument_error("export_augmentation: no corruption kinds");

  AugmentationManifest manifest;
  for (const CorruptionKind kind : kinds) {
    const fs::path kind_dir = fs::path(out_dir) / kind_name(kind);
    fs::create_directories(kind_dir);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const std::int64_t frame_id =
          frames[i].frame_id >= 0 ? frames[i].frame_id : static_cast<std::int64_t>(i);
      CorruptionSpec spec;
      spec.kind = kind;
      spec.severity = severity;
      spec.seed = derive_frame_seed(seed, static_cast<std::uint64_t>(frame_id),
                                    static_cast<std::uint64_t>(kind));
      const PointCloud corrupted = corrupt(frames[i], spec, profile);

      char name[32];
      std::snprintf(name, sizeof(name), "%06lld.bin", static_cast<long long>(frame_id));
      const fs::path path = kind_dir / name;
      write_kitti_bin(corrupted, path.string());

      AugmentationEntry entry;
      entry.frame_id = frame_id;
      entry.kind = kind_name(kind);
      entry.severity = severity;
      entry.seed = seed;
      entry.path = path.string();
      entry.point_count = corrupted.size();
      manifest.entries.push_back(std::move(entry));
    }
  }

  json doc;
  doc["version"] = kVersion;
  doc["severity"] = severity;
  doc["seed"] = seed;
  doc["entries"] = json::array();
  for (const AugmentationEntry& e : manifest.entries) {
    doc["entries"].push_back({{"frame", e.frame_id},
                              {"kind", e.kind},
                              {"severity", e.severity},
                              {"seed", e.seed},
                              {"path", e.path},
                              {"point_count", e.point_count}});
  }
  manifest.manifest_path = (fs::path(out_dir) / "manifest.json").string();
  write_text_file(manifest.manifest_path, doc.dump(2) + "\n");
  return manifest;
}

}  // namespace lcorrupt
