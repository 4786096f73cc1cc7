#include "lidarcorrupt/lidarcorrupt.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "core/corruption.hpp"
#include "core/denoise.hpp"
#include "core/error.hpp"
#include "core/evaluation.hpp"
#include "core/experiment.hpp"
#include "core/ini.hpp"
#include "core/kitti_io.hpp"
#include "core/odometry.hpp"
#include "core/rng.hpp"
#include "core/severity_profile.hpp"
#include "core/synthetic.hpp"
#include "core/version.hpp"

struct lcx_cloud {
  lcorrupt::PointCloud cloud;
};
struct lcx_profile {
  lcorrupt::SeverityProfile profile;
};
struct lcx_trajectory {
  lcorrupt::Trajectory trajectory;
};
struct lcx_report {
  lcorrupt::ExperimentReport report;
};

namespace {

thread_local std::string g_last_error;

lcx_status status_of(lcorrupt::ErrorCode code) {
  using lcorrupt::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return LCX_ERR_INVALID_ARGUMENT;
    case ErrorCode::io: return LCX_ERR_IO;
    case ErrorCode::empty_input: return LCX_ERR_EMPTY_INPUT;
    case ErrorCode::too_few_points: return LCX_ERR_TOO_FEW_POINTS;
    case ErrorCode::registration_failure: return LCX_ERR_REGISTRATION;
    case ErrorCode::unknown_kind: return LCX_ERR_UNKNOWN_KIND;
    case ErrorCode::config: return LCX_ERR_CONFIG;
  }
  return LCX_ERR_INTERNAL;
}

template <typename F>
lcx_status guarded(F&& f) {
  try {
    f();
    return LCX_OK;
  } catch (const lcorrupt::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LCX_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LCX_ERR_INTERNAL;
  }
}

lcx_status arg_error(const char* message) {
  g_last_error = message;
  return LCX_ERR_INVALID_ARGUMENT;
}

lcx_status fill_buffer(const std::string& text, char* buf, size_t buf_size, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf && buf_size > 0) {
    const size_t n = std::min(buf_size - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return LCX_OK;
}

const lcorrupt::SeverityProfile& profile_or_default(const lcx_profile* profile) {
  static const lcorrupt::SeverityProfile defaults = lcorrupt::SeverityProfile::defaults();
  return profile ? profile->profile : defaults;
}

lcorrupt::OdometryConfig to_config(const lcx_odometry_config* c) {
  lcorrupt::OdometryConfig cfg;
  if (c) {
    cfg.voxel_size = c->voxel_size;
    cfg.max_corr_dist = c->max_corr_dist;
    cfg.max_iterations = c->max_iterations;
    cfg.convergence_eps = c->convergence_eps;
    cfg.robust_delta = c->robust_delta;
    cfg.use_constant_velocity = c->use_constant_velocity != 0;
  }
  return cfg;
}

}  // namespace

extern "C" {

const char* lcx_version(void) { return lcorrupt::kVersion; }

const char* lcx_last_error(void) { return g_last_error.c_str(); }

/* ---- point clouds ----------------------------------------------------- */

lcx_status lcx_cloud_create(const double* xyz, const float* intensity, size_t count,
                            lcx_cloud** out) {
  if (!out) return arg_error("lcx_cloud_create: out is NULL");
  if (!xyz && count > 0) return arg_error("lcx_cloud_create: xyz is NULL");
  return guarded([&] {
    lcorrupt::PointCloud cloud;
    cloud.points.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      lcorrupt::Point p;
      p.x = xyz[3 * i];
      p.y = xyz[3 * i + 1];
      p.z = xyz[3 * i + 2];
      if (intensity) p.intensity = intensity[i];
      cloud.points.push_back(p);
    }
    *out = new lcx_cloud{std::move(cloud)};
  });
}

lcx_status lcx_cloud_read_kitti(const char* path, lcx_cloud** out) {
  if (!out) return arg_error("lcx_cloud_read_kitti: out is NULL");
  if (!path) return arg_error("lcx_cloud_read_kitti: path is NULL");
  return guarded([&] { *out = new lcx_cloud{lcorrupt::read_kitti_bin(path)}; });
}

lcx_status lcx_cloud_write_kitti(const lcx_cloud* cloud, const char* path) {
  if (!cloud) return arg_error("lcx_cloud_write_kitti: cloud is NULL");
  if (!path) return arg_error("lcx_cloud_write_kitti: path is NULL");
  return guarded([&] { lcorrupt::write_kitti_bin(cloud->cloud, path); });
}

lcx_status lcx_load_kitti_dir(const char* dir, lcx_cloud*** clouds_out, size_t* count_out) {
  if (!dir) return arg_error("lcx_load_kitti_dir: dir is NULL");
  if (!clouds_out || !count_out) return arg_error("lcx_load_kitti_dir: output pointer is NULL");
  return guarded([&] {
    const std::vector<std::string> files = lcorrupt::list_kitti_frames(dir);
    lcx_cloud** clouds = new lcx_cloud*[files.size()];
    size_t loaded = 0;
    try {
      for (; loaded < files.size(); ++loaded) {
        lcorrupt::PointCloud cloud = lcorrupt::read_kitti_bin(files[loaded]);
        cloud.frame_id = static_cast<std::int64_t>(loaded);
        clouds[loaded] = new lcx_cloud{std::move(cloud)};
      }
    } catch (...) {
      for (size_t i = 0; i < loaded; ++i) delete clouds[i];
      delete[] clouds;
      throw;
    }
    *clouds_out = clouds;
    *count_out = files.size();
  });
}

size_t lcx_cloud_size(const lcx_cloud* cloud) { return cloud ? cloud->cloud.size() : 0; }

lcx_status lcx_cloud_xyz(const lcx_cloud* cloud, double* out_xyz) {
  if (!cloud) return arg_error("lcx_cloud_xyz: cloud is NULL");
  if (!out_xyz) return arg_error("lcx_cloud_xyz: out buffer is NULL");
  for (size_t i = 0; i < cloud->cloud.size(); ++i) {
    out_xyz[3 * i] = cloud->cloud.points[i].x;
    out_xyz[3 * i + 1] = cloud->cloud.points[i].y;
    out_xyz[3 * i + 2] = cloud->cloud.points[i].z;
  }
  return LCX_OK;
}

lcx_status lcx_cloud_intensity(const lcx_cloud* cloud, float* out_intensity) {
  if (!cloud) return arg_error("lcx_cloud_intensity: cloud is NULL");
  if (!out_intensity) return arg_error("lcx_cloud_intensity: out buffer is NULL");
  for (size_t i = 0; i < cloud->cloud.size(); ++i) {
    out_intensity[i] = cloud->cloud.points[i].intensity;
  }
  return LCX_OK;
}

int lcx_cloud_beam_count(const lcx_cloud* cloud) { return cloud ? cloud->cloud.beam_count : 0; }

lcx_status lcx_cloud_set_beam_count(lcx_cloud* cloud, int beam_count) {
  if (!cloud) return arg_error("lcx_cloud_set_beam_count: cloud is NULL");
  if (beam_count < 1) return arg_error("lcx_cloud_set_beam_count: beam_count must be >= 1");
  cloud->cloud.beam_count = beam_count;
  return LCX_OK;
}

void lcx_cloud_destroy(lcx_cloud* cloud) { delete cloud; }

/* ---- severity profiles ------------------------------------------------ */

lcx_status lcx_profile_default(lcx_profile** out) {
  if (!out) return arg_error("lcx_profile_default: out is NULL");
  return guarded([&] { *out = new lcx_profile{lcorrupt::SeverityProfile::defaults()}; });
}

lcx_status lcx_profile_load(const char* path, lcx_profile** out) {
  if (!out) return arg_error("lcx_profile_load: out is NULL");
  if (!path) return arg_error("lcx_profile_load: path is NULL");
  return guarded([&] { *out = new lcx_profile{lcorrupt::SeverityProfile::load(path)}; });
}

lcx_status lcx_profile_render(const lcx_profile* profile, char* buf, size_t buf_size,
                              size_t* needed) {
  if (!profile) return arg_error("lcx_profile_render: profile is NULL");
  return guarded([&] { fill_buffer(profile->profile.render(), buf, buf_size, needed); });
}

void lcx_profile_destroy(lcx_profile* profile) { delete profile; }

/* ---- corruptions ------------------------------------------------------ */

int lcx_kind_count(void) { return lcorrupt::kCorruptionKindCount; }

const char* lcx_kind_name(int ordinal) {
  if (ordinal < 0 || ordinal >= lcorrupt::kCorruptionKindCount) return nullptr;
  return lcorrupt::kind_name(static_cast<lcorrupt::CorruptionKind>(ordinal));
}

lcx_status lcx_kind_from_name(const char* name, int* ordinal_out) {
  if (!name) return arg_error("lcx_kind_from_name: name is NULL");
  if (!ordinal_out) return arg_error("lcx_kind_from_name: ordinal_out is NULL");
  return guarded([&] { *ordinal_out = static_cast<int>(lcorrupt::kind_from_name(name)); });
}

uint64_t lcx_derive_frame_seed(uint64_t global_seed, uint64_t frame_id, uint64_t kind_ordinal) {
  return lcorrupt::derive_frame_seed(global_seed, frame_id, kind_ordinal);
}

lcx_status lcx_corrupt(const lcx_cloud* cloud, int kind_ordinal, int severity, uint64_t seed,
                       const lcx_profile* profile, lcx_cloud** out) {
  if (!cloud) return arg_error("lcx_corrupt: cloud is NULL");
  if (!out) return arg_error("lcx_corrupt: out is NULL");
  if (kind_ordinal < 0 || kind_ordinal >= lcorrupt::kCorruptionKindCount) {
    g_last_error = "lcx_corrupt: kind ordinal out of range";
    return LCX_ERR_UNKNOWN_KIND;
  }
  return guarded([&] {
    lcorrupt::CorruptionSpec spec;
    spec.kind = static_cast<lcorrupt::CorruptionKind>(kind_ordinal);
    spec.severity = severity;
    spec.seed = seed;
    *out = new lcx_cloud{lcorrupt::corrupt(cloud->cloud, spec, profile_or_default(profile))};
  });
}

/* ---- denoising --------------------------------------------------------- */

void lcx_bilateral_params_default(lcx_bilateral_params* out) {
  if (!out) return;
  const lcorrupt::BilateralParams d;
  out->radius = d.radius;
  out->sigma_d = d.sigma_d;
  out->sigma_n = d.sigma_n;
  out->iterations = d.iterations;
  out->normal_k = d.normal_k;
}

lcx_status lcx_bilateral_filter(const lcx_cloud* cloud, const lcx_bilateral_params* params,
                                lcx_cloud** out) {
  if (!cloud) return arg_error("lcx_bilateral_filter: cloud is NULL");
  if (!out) return arg_error("lcx_bilateral_filter: out is NULL");
  return guarded([&] {
    lcorrupt::BilateralParams p;
    if (params) {
      p.radius = params->radius;
      p.sigma_d = params->sigma_d;
      p.sigma_n = params->sigma_n;
      p.iterations = params->iterations;
      p.normal_k = params->normal_k;
    }
    *out = new lcx_cloud{lcorrupt::bilateral_filter(cloud->cloud, p)};
  });
}

/* ---- odometry and evaluation ------------------------------------------ */

void lcx_odometry_config_default(lcx_odometry_config* out) {
  if (!out) return;
  const lcorrupt::OdometryConfig d;
  out->voxel_size = d.voxel_size;
  out->max_corr_dist = d.max_corr_dist;
  out->max_iterations = d.max_iterations;
  out->convergence_eps = d.convergence_eps;
  out->robust_delta = d.robust_delta;
  out->use_constant_velocity = d.use_constant_velocity ? 1 : 0;
}

lcx_status lcx_run_odometry(const lcx_cloud* const* frames, size_t frame_count,
                            const lcx_odometry_config* config, lcx_trajectory** out,
                            size_t* flagged_count) {
  if (!frames) return arg_error("lcx_run_odometry: frames is NULL");
  if (!out) return arg_error("lcx_run_odometry: out is NULL");
  for (size_t i = 0; i < frame_count; ++i) {
    if (!frames[i]) return arg_error("lcx_run_odometry: a frame handle is NULL");
  }
  return guarded([&] {
    std::vector<lcorrupt::PointCloud> clouds;
    clouds.reserve(frame_count);
    for (size_t i = 0; i < frame_count; ++i) clouds.push_back(frames[i]->cloud);
    lcorrupt::OdometryResult result = lcorrupt::run_odometry(clouds, to_config(config));
    if (flagged_count) *flagged_count = result.flagged_frames.size();
    *out = new lcx_trajectory{std::move(result.trajectory)};
  });
}

lcx_status lcx_trajectory_read_kitti(const char* path, lcx_trajectory** out) {
  if (!out) return arg_error("lcx_trajectory_read_kitti: out is NULL");
  if (!path) return arg_error("lcx_trajectory_read_kitti: path is NULL");
  return guarded([&] { *out = new lcx_trajectory{lcorrupt::read_kitti_poses(path)}; });
}

lcx_status lcx_trajectory_write_kitti(const lcx_trajectory* trajectory, const char* path) {
  if (!trajectory) return arg_error("lcx_trajectory_write_kitti: trajectory is NULL");
  if (!path) return arg_error("lcx_trajectory_write_kitti: path is NULL");
  return guarded([&] { lcorrupt::write_kitti_poses(trajectory->trajectory, path); });
}

size_t lcx_trajectory_size(const lcx_trajectory* trajectory) {
  return trajectory ? trajectory->trajectory.size() : 0;
}

lcx_status lcx_trajectory_pose(const lcx_trajectory* trajectory, size_t index,
                               int64_t* frame_id_out, double mat_out[12]) {
  if (!trajectory) return arg_error("lcx_trajectory_pose: trajectory is NULL");
  if (index >= trajectory->trajectory.size()) {
    return arg_error("lcx_trajectory_pose: index out of range");
  }
  const lcorrupt::TrajectoryEntry& entry = trajectory->trajectory[index];
  if (frame_id_out) *frame_id_out = entry.frame_id;
  if (mat_out) {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) mat_out[4 * r + c] = entry.pose.rotation(r, c);
      mat_out[4 * r + 3] = entry.pose.translation(r);
    }
  }
  return LCX_OK;
}

void lcx_trajectory_destroy(lcx_trajectory* trajectory) { delete trajectory; }

lcx_status lcx_rpe(const lcx_trajectory* est, const lcx_trajectory* gt, double* rpe_trans_m,
                   double* rpe_rot_rad) {
  if (!est || !gt) return arg_error("lcx_rpe: trajectory is NULL");
  return guarded([&] {
    const lcorrupt::RpeReport report = lcorrupt::rpe(
        est->trajectory, gt->trajectory, lcorrupt::consecutive_pairs(gt->trajectory));
    if (rpe_trans_m) *rpe_trans_m = report.rpe_trans;
    if (rpe_rot_rad) *rpe_rot_rad = report.rpe_rot;
  });
}

lcx_status lcx_kitti_drift(const lcx_trajectory* est, const lcx_trajectory* gt,
                           const double* lengths, size_t length_count, double* drift_percent) {
  if (!est || !gt) return arg_error("lcx_kitti_drift: trajectory is NULL");
  if (!drift_percent) return arg_error("lcx_kitti_drift: drift_percent is NULL");
  return guarded([&] {
    std::vector<double> length_set;
    if (lengths && length_count > 0) {
      length_set.assign(lengths, lengths + length_count);
    } else {
      length_set = lcorrupt::default_drift_lengths();
    }
    *drift_percent = lcorrupt::kitti_drift(est->trajectory, gt->trajectory, length_set);
  });
}

/* ---- synthetic scenes -------------------------------------------------- */

lcx_status lcx_generate_synthetic(const char* scene, int frames, uint64_t seed,
                                  lcx_cloud*** clouds_out, size_t* count_out,
                                  lcx_trajectory** ground_truth_out) {
  if (!scene) return arg_error("lcx_generate_synthetic: scene is NULL");
  if (!clouds_out || !count_out) {
    return arg_error("lcx_generate_synthetic: output pointer is NULL");
  }
  return guarded([&] {
    const auto sequence = lcorrupt::generate_synthetic_sequence(scene, frames, seed);
    lcx_cloud** clouds = new lcx_cloud*[sequence.size()];
    for (size_t i = 0; i < sequence.size(); ++i) clouds[i] = new lcx_cloud{sequence[i].cloud};
    *clouds_out = clouds;
    *count_out = sequence.size();
    if (ground_truth_out) {
      *ground_truth_out = new lcx_trajectory{lcorrupt::ground_truth(sequence)};
    }
  });
}

void lcx_cloud_array_destroy(lcx_cloud** clouds, size_t count) {
  if (!clouds) return;
  for (size_t i = 0; i < count; ++i) delete clouds[i];
  delete[] clouds;
}

/* ---- augmentation export ----------------------------------------------- */

lcx_status lcx_export_augmentation(const lcx_cloud* const* frames, size_t frame_count,
                                   const char* kinds_csv, int severity, uint64_t seed,
                                   const lcx_profile* profile, const char* out_dir) {
  if (!frames) return arg_error("lcx_export_augmentation: frames is NULL");
  if (!kinds_csv) return arg_error("lcx_export_augmentation: kinds_csv is NULL");
  if (!out_dir) return arg_error("lcx_export_augmentation: out_dir is NULL");
  for (size_t i = 0; i < frame_count; ++i) {
    if (!frames[i]) return arg_error("lcx_export_augmentation: a frame handle is NULL");
  }
  return guarded([&] {
    std::vector<lcorrupt::CorruptionKind> kinds;
    for (const std::string& token : lcorrupt::split_tokens(kinds_csv)) {
      if (token == "all") {
        for (lcorrupt::CorruptionKind k : lcorrupt::all_kinds()) kinds.push_back(k);
      } else {
        kinds.push_back(lcorrupt::kind_from_name(token));
      }
    }
    std::vector<lcorrupt::PointCloud> clouds;
    clouds.reserve(frame_count);
    for (size_t i = 0; i < frame_count; ++i) clouds.push_back(frames[i]->cloud);
    lcorrupt::export_augmentation(clouds, kinds, severity, seed, profile_or_default(profile),
                                  out_dir);
  });
}

/* ---- experiments -------------------------------------------------------- */

lcx_status lcx_experiment_run(const char* config_path, int threads_override,
                              const uint64_t* seed_override, size_t seed_override_count,
                              lcx_report** out) {
  if (!config_path) return arg_error("lcx_experiment_run: config_path is NULL");
  if (!out) return arg_error("lcx_experiment_run: out is NULL");
  return guarded([&] {
    lcorrupt::ExperimentConfig cfg = lcorrupt::ExperimentConfig::load(config_path);
    if (threads_override > 0) cfg.threads = threads_override;
    if (seed_override && seed_override_count > 0) {
      cfg.seeds.assign(seed_override, seed_override + seed_override_count);
    }
    cfg.validate();
    lcorrupt::ExperimentReport report = lcorrupt::run_experiment(cfg);
    if (!cfg.output_csv.empty()) report.write_csv(cfg.output_csv);
    if (!cfg.output_json.empty()) report.write_json(cfg.output_json);
    if (!cfg.output_plot.empty()) report.write_plot_data(cfg.output_plot);
    *out = new lcx_report{std::move(report)};
  });
}

lcx_status lcx_experiment_render_config(const char* config_path, char* buf, size_t buf_size,
                                        size_t* needed) {
  if (!config_path) return arg_error("lcx_experiment_render_config: config_path is NULL");
  return guarded([&] {
    const lcorrupt::ExperimentConfig cfg = lcorrupt::ExperimentConfig::load(config_path);
    fill_buffer(cfg.render(), buf, buf_size, needed);
  });
}

size_t lcx_report_row_count(const lcx_report* report) {
  return report ? report->report.rows.size() : 0;
}

lcx_status lcx_report_csv(const lcx_report* report, char* buf, size_t buf_size, size_t* needed) {
  if (!report) return arg_error("lcx_report_csv: report is NULL");
  return guarded([&] { fill_buffer(report->report.to_csv(), buf, buf_size, needed); });
}

lcx_status lcx_report_json(const lcx_report* report, char* buf, size_t buf_size, size_t* needed) {
  if (!report) return arg_error("lcx_report_json: report is NULL");
  return guarded([&] { fill_buffer(report->report.to_json(), buf, buf_size, needed); });
}

void lcx_report_destroy(lcx_report* report) { delete report; }

} /* extern "C" */
