// Command-line front end for the LiDAR corruption toolkit. Talks to the
// shared library exclusively through its C interface.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <lidarcorrupt/lidarcorrupt.h>

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string profile_path;
  int threads = 0;
};

[[noreturn]] void fail(lcx_status status) {
  std::fprintf(stderr, "error: %s (status %d)\n", lcx_last_error(), static_cast<int>(status));
  std::exit(1);
}

void check(lcx_status status) {
  if (status != LCX_OK) fail(status);
}

using CloudPtr = std::unique_ptr<lcx_cloud, decltype(&lcx_cloud_destroy)>;
using ProfilePtr = std::unique_ptr<lcx_profile, decltype(&lcx_profile_destroy)>;
using TrajectoryPtr = std::unique_ptr<lcx_trajectory, decltype(&lcx_trajectory_destroy)>;
using ReportPtr = std::unique_ptr<lcx_report, decltype(&lcx_report_destroy)>;

struct CloudArray {
  lcx_cloud** clouds = nullptr;
  size_t count = 0;

  CloudArray() = default;
  CloudArray(const CloudArray&) = delete;
  CloudArray& operator=(const CloudArray&) = delete;
  CloudArray(CloudArray&& other) noexcept : clouds(other.clouds), count(other.count) {
    other.clouds = nullptr;
    other.count = 0;
  }
  CloudArray& operator=(CloudArray&& other) noexcept {
    if (this != &other) {
      lcx_cloud_array_destroy(clouds, count);
      clouds = other.clouds;
      count = other.count;
      other.clouds = nullptr;
      other.count = 0;
    }
    return *this;
  }
  ~CloudArray() { lcx_cloud_array_destroy(clouds, count); }
};

CloudPtr read_cloud(const std::string& path) {
  lcx_cloud* cloud = nullptr;
  check(lcx_cloud_read_kitti(path.c_str(), &cloud));
  return {cloud, &lcx_cloud_destroy};
}

ProfilePtr load_profile(const GlobalOptions& global) {
  lcx_profile* profile = nullptr;
  if (global.profile_path.empty()) {
    check(lcx_profile_default(&profile));
  } else {
    check(lcx_profile_load(global.profile_path.c_str(), &profile));
  }
  return {profile, &lcx_profile_destroy};
}

template <typename F>
std::string render_string(F&& fill) {
  size_t needed = 0;
  check(fill(nullptr, 0, &needed));
  std::string text(needed, '\0');
  check(fill(text.data(), text.size(), &needed));
  text.resize(needed > 0 ? needed - 1 : 0);
  return text;
}

// Frames either from a directory of .bin scans or the synthetic scene.
CloudArray load_frames(const std::string& input_dir, const std::string& scene, int frames,
                       std::uint64_t seed, TrajectoryPtr* ground_truth) {
  CloudArray array;
  if (!input_dir.empty()) {
    check(lcx_load_kitti_dir(input_dir.c_str(), &array.clouds, &array.count));
    return array;
  }
  lcx_trajectory* gt = nullptr;
  check(lcx_generate_synthetic(scene.c_str(), frames, seed, &array.clouds, &array.count,
                               ground_truth ? &gt : nullptr));
  if (ground_truth) ground_truth->reset(gt);
  return array;
}

std::string frame_filename(std::int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06lld.bin", static_cast<long long>(index));
  return buf;
}

int run_corrupt(const GlobalOptions& global, const std::string& input, const std::string& output,
                const std::string& kind, int severity, bool print_profile) {
  ProfilePtr profile = load_profile(global);
  if (print_profile) {
    const std::string text = render_string([&](char* buf, size_t n, size_t* needed) {
      return lcx_profile_render(profile.get(), buf, n, needed);
    });
    std::fputs(text.c_str(), stdout);
    return 0;
  }

  int ordinal = 0;
  check(lcx_kind_from_name(kind.c_str(), &ordinal));
  CloudPtr cloud = read_cloud(input);
  lcx_cloud* corrupted = nullptr;
  check(lcx_corrupt(cloud.get(), ordinal, severity, global.seed, profile.get(), &corrupted));
  CloudPtr corrupted_owned(corrupted, &lcx_cloud_destroy);
  check(lcx_cloud_write_kitti(corrupted, output.c_str()));
  std::printf("%s severity %d: %zu -> %zu points, written to %s\n", kind.c_str(), severity,
              lcx_cloud_size(cloud.get()), lcx_cloud_size(corrupted), output.c_str());
  return 0;
}

int run_denoise(const std::string& input, const std::string& output,
                const lcx_bilateral_params& params) {
  CloudPtr cloud = read_cloud(input);
  lcx_cloud* filtered = nullptr;
  check(lcx_bilateral_filter(cloud.get(), &params, &filtered));
  CloudPtr filtered_owned(filtered, &lcx_cloud_destroy);
  check(lcx_cloud_write_kitti(filtered, output.c_str()));
  std::printf("filtered %zu points, written to %s\n", lcx_cloud_size(filtered), output.c_str());
  return 0;
}

int run_odometry_cmd(const GlobalOptions& global, const std::string& input_dir,
                     const std::string& scene, int frames, const std::string& output,
                     const lcx_odometry_config& config) {
  TrajectoryPtr ground_truth(nullptr, &lcx_trajectory_destroy);
  CloudArray array = load_frames(input_dir, scene, frames, global.seed, &ground_truth);

  lcx_trajectory* trajectory = nullptr;
  size_t flagged = 0;
  check(lcx_run_odometry(array.clouds, array.count, &config, &trajectory, &flagged));
  TrajectoryPtr owned(trajectory, &lcx_trajectory_destroy);
  check(lcx_trajectory_write_kitti(trajectory, output.c_str()));
  std::printf("%zu poses written to %s (%zu flagged registrations)\n",
              lcx_trajectory_size(trajectory), output.c_str(), flagged);

  if (ground_truth) {
    double trans = 0, rot = 0;
    check(lcx_rpe(trajectory, ground_truth.get(), &trans, &rot));
    std::printf("vs ground truth: rpe_trans %.6f m, rpe_rot %.6f deg\n", trans,
                rot * 180.0 / std::numbers::pi);
  }
  return 0;
}

int run_evaluate(const std::string& est_path, const std::string& gt_path, bool segments,
                 const std::vector<double>& lengths) {
  lcx_trajectory* est = nullptr;
  check(lcx_trajectory_read_kitti(est_path.c_str(), &est));
  TrajectoryPtr est_owned(est, &lcx_trajectory_destroy);
  lcx_trajectory* gt = nullptr;
  check(lcx_trajectory_read_kitti(gt_path.c_str(), &gt));
  TrajectoryPtr gt_owned(gt, &lcx_trajectory_destroy);

  double trans = 0, rot = 0;
  check(lcx_rpe(est, gt, &trans, &rot));
  std::printf("rpe_trans %.9f m\n", trans);
  std::printf("rpe_rot   %.9f deg\n", rot * 180.0 / std::numbers::pi);
  if (segments) {
    double drift = 0;
    check(lcx_kitti_drift(est, gt, lengths.empty() ? nullptr : lengths.data(), lengths.size(),
                          &drift));
    std::printf("drift     %.9f %%\n", drift);
  }
  return 0;
}

int run_experiment_cmd(const GlobalOptions& global, bool seed_given, const std::string& config,
                       bool print_config) {
  if (print_config) {
    const std::string text = render_string([&](char* buf, size_t n, size_t* needed) {
      return lcx_experiment_render_config(config.c_str(), buf, n, needed);
    });
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  lcx_report* report = nullptr;
  const std::uint64_t seed_override[] = {global.seed};
  check(lcx_experiment_run(config.c_str(), global.threads, seed_given ? seed_override : nullptr,
                           seed_given ? 1 : 0, &report));
  ReportPtr owned(report, &lcx_report_destroy);
  const std::string csv = render_string([&](char* buf, size_t n, size_t* needed) {
    return lcx_report_csv(report, buf, n, needed);
  });
  std::fputs(csv.c_str(), stdout);
  std::fprintf(stderr, "%zu rows\n", lcx_report_row_count(report));
  return 0;
}

int run_augment(const GlobalOptions& global, const std::string& input_dir,
                const std::string& scene, int frames, const std::string& kinds, int severity,
                const std::string& out_dir) {
  ProfilePtr profile = load_profile(global);
  CloudArray array = load_frames(input_dir, scene, frames, global.seed, nullptr);
  check(lcx_export_augmentation(array.clouds, array.count, kinds.c_str(), severity, global.seed,
                                profile.get(), out_dir.c_str()));
  std::printf("exported %zu frames per kind under %s (manifest.json alongside)\n", array.count,
              out_dir.c_str());
  return 0;
}

int run_synth(const GlobalOptions& global, const std::string& scene, int frames,
              const std::string& out_dir) {
  CloudArray array;
  lcx_trajectory* gt = nullptr;
  check(lcx_generate_synthetic(scene.c_str(), frames, global.seed, &array.clouds, &array.count,
                               &gt));
  TrajectoryPtr gt_owned(gt, &lcx_trajectory_destroy);

  fs::create_directories(fs::path(out_dir) / "velodyne");
  for (size_t i = 0; i < array.count; ++i) {
    const fs::path path =
        fs::path(out_dir) / "velodyne" / frame_filename(static_cast<std::int64_t>(i));
    check(lcx_cloud_write_kitti(array.clouds[i], path.string().c_str()));
  }
  const fs::path poses = fs::path(out_dir) / "poses.txt";
  check(lcx_trajectory_write_kitti(gt, poses.string().c_str()));
  std::printf("%zu frames written under %s (ground truth: %s)\n", array.count,
              (fs::path(out_dir) / "velodyne").string().c_str(), poses.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LiDAR point-cloud corruption, denoising, odometry and evaluation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lcx_version()));

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Global random seed")->capture_default_str();
  app.add_option("--profile", global.profile_path, "Severity profile INI file");
  app.add_option("--threads", global.threads, "Worker threads (0 = config / all cores)");
  bool seed_given = false;
  app.callback([&] { seed_given = app.count("--seed") > 0; });

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "Apply one corruption to a .bin scan");
  std::string corrupt_in, corrupt_out, corrupt_kind;
  int corrupt_severity = 3;
  bool print_profile = false;
  corrupt->add_option("--input,-i", corrupt_in, "Input .bin scan");
  corrupt->add_option("--output,-o", corrupt_out, "Output .bin scan");
  corrupt->add_option("--kind,-k", corrupt_kind, "Corruption kind name");
  corrupt->add_option("--severity,-s", corrupt_severity, "Severity 1..5")
      ->capture_default_str();
  corrupt->add_flag("--print-profile", print_profile,
                    "Print the effective severity profile and exit");

  // denoise
  auto* denoise = app.add_subcommand("denoise", "Bilateral-filter a .bin scan");
  std::string denoise_in, denoise_out;
  lcx_bilateral_params bilateral;
  lcx_bilateral_params_default(&bilateral);
  denoise->add_option("--input,-i", denoise_in, "Input .bin scan")->required();
  denoise->add_option("--output,-o", denoise_out, "Output .bin scan")->required();
  denoise->add_option("--radius", bilateral.radius, "Neighbourhood radius (m)")
      ->capture_default_str();
  denoise->add_option("--sigma-d", bilateral.sigma_d, "Spatial Gaussian width (m)")
      ->capture_default_str();
  denoise->add_option("--sigma-n", bilateral.sigma_n, "Normal-offset Gaussian width (m)")
      ->capture_default_str();
  denoise->add_option("--iterations", bilateral.iterations, "Filter passes")
      ->capture_default_str();
  denoise->add_option("--normal-k", bilateral.normal_k, "Neighbours for normal estimation")
      ->capture_default_str();

  // odometry
  auto* odometry = app.add_subcommand("odometry", "Run ICP odometry over a frame sequence");
  std::string odom_dir, odom_scene = "corridor", odom_out;
  int odom_frames = 50;
  lcx_odometry_config odom_cfg;
  lcx_odometry_config_default(&odom_cfg);
  odometry->add_option("--input,-i", odom_dir, "Directory of .bin scans");
  odometry->add_option("--synthetic", odom_scene, "Synthetic scene name")
      ->capture_default_str();
  odometry->add_option("--frames", odom_frames, "Synthetic frame count")->capture_default_str();
  odometry->add_option("--output,-o", odom_out, "Output KITTI pose file")->required();
  odometry->add_option("--voxel-size", odom_cfg.voxel_size, "Downsampling voxel (m)")
      ->capture_default_str();
  odometry->add_option("--max-corr-dist", odom_cfg.max_corr_dist, "Correspondence gate (m)")
      ->capture_default_str();
  odometry->add_option("--max-iterations", odom_cfg.max_iterations, "ICP iteration cap")
      ->capture_default_str();
  odometry->add_option("--convergence-eps", odom_cfg.convergence_eps, "Stop threshold (m)")
      ->capture_default_str();
  odometry->add_option("--robust-delta", odom_cfg.robust_delta, "Huber kernel width (m)")
      ->capture_default_str();
  bool no_constant_velocity = false;
  odometry->add_flag("--no-constant-velocity", no_constant_velocity,
                     "Initialize each registration from identity");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Compare trajectories (RPE, drift)");
  std::string eval_est, eval_gt;
  bool eval_segments = false;
  std::vector<double> eval_lengths;
  evaluate->add_option("--est", eval_est, "Estimated KITTI pose file")->required();
  evaluate->add_option("--gt", eval_gt, "Ground-truth KITTI pose file")->required();
  evaluate->add_flag("--segments", eval_segments, "Also report KITTI segment drift");
  evaluate->add_option("--lengths", eval_lengths, "Segment lengths in meters");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a corruption sweep from a config");
  std::string experiment_config;
  bool print_config = false;
  experiment->add_option("--config,-c", experiment_config, "Experiment INI config")->required();
  experiment->add_flag("--print-config", print_config,
                       "Print the effective config (defaults included) and exit");

  // augment
  auto* augment = app.add_subcommand("augment", "Export corrupted dataset copies");
  std::string augment_dir, augment_scene = "corridor", augment_kinds = "all", augment_out;
  int augment_frames = 50, augment_severity = 5;
  augment->add_option("--input,-i", augment_dir, "Directory of .bin scans");
  augment->add_option("--synthetic", augment_scene, "Synthetic scene name")
      ->capture_default_str();
  augment->add_option("--frames", augment_frames, "Synthetic frame count")
      ->capture_default_str();
  augment->add_option("--kinds", augment_kinds, "Comma-separated kinds or 'all'")
      ->capture_default_str();
  augment->add_option("--severity,-s", augment_severity, "Severity 1..5")
      ->capture_default_str();
  augment->add_option("--out-dir,-o", augment_out, "Output directory")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic scan sequence");
  std::string synth_scene = "corridor", synth_out;
  int synth_frames = 50;
  synth->add_option("--scene", synth_scene, "Scene name")->capture_default_str();
  synth->add_option("--frames", synth_frames, "Frame count")->capture_default_str();
  synth->add_option("--out-dir,-o", synth_out, "Output directory")->required();

  for (CLI::App* sub : {corrupt, denoise, odometry, evaluate, experiment, augment, synth}) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  if (corrupt->parsed()) {
    if (!print_profile && (corrupt_in.empty() || corrupt_out.empty() || corrupt_kind.empty())) {
      std::fprintf(stderr, "corrupt: --input, --output and --kind are required\n");
      return 1;
    }
    return run_corrupt(global, corrupt_in, corrupt_out, corrupt_kind, corrupt_severity,
                       print_profile);
  }
  if (denoise->parsed()) return run_denoise(denoise_in, denoise_out, bilateral);
  if (odometry->parsed()) {
    odom_cfg.use_constant_velocity = no_constant_velocity ? 0 : 1;
    return run_odometry_cmd(global, odom_dir, odom_scene, odom_frames, odom_out, odom_cfg);
  }
  if (evaluate->parsed()) return run_evaluate(eval_est, eval_gt, eval_segments, eval_lengths);
  if (experiment->parsed()) {
    return run_experiment_cmd(global, seed_given, experiment_config, print_config);
  }
  if (augment->parsed()) {
    return run_augment(global, augment_dir, augment_scene, augment_frames, augment_kinds,
                       augment_severity, augment_out);
  }
  if (synth->parsed()) return run_synth(global, synth_scene, synth_frames, synth_out);
  return 0;
}
