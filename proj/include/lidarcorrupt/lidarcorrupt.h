#ifndef LIDARCORRUPT_H
#define LIDARCORRUPT_H

/* C interface to the LiDAR corruption toolkit: seeded point-cloud
 * corruptions, bilateral denoising, a minimal ICP odometry subject,
 * trajectory metrics, a synthetic scene generator, and the experiment
 * sweep driver.
 *
 * Conventions:
 *  - Every fallible call returns lcx_status; LCX_OK is 0. On failure the
 *    thread-local message from lcx_last_error() describes the problem and
 *    no output parameter is written.
 *  - Objects are opaque handles created by lcx_*_create/read/run calls and
 *    released with the matching lcx_*_destroy. Handles are immutable after
 *    creation unless a setter is documented, and may be read concurrently.
 *  - Functions that fill a caller buffer follow the two-call pattern:
 *    pass buf = NULL (or a too-small buffer) to learn the required size via
 *    *needed (which includes the terminating NUL), then call again.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lcx_status {
  LCX_OK = 0,
  LCX_ERR_INVALID_ARGUMENT = 1,
  LCX_ERR_IO = 2,
  LCX_ERR_EMPTY_INPUT = 3,
  LCX_ERR_TOO_FEW_POINTS = 4,
  LCX_ERR_REGISTRATION = 5,
  LCX_ERR_UNKNOWN_KIND = 6,
  LCX_ERR_CONFIG = 7,
  LCX_ERR_INTERNAL = 8
} lcx_status;

typedef struct lcx_cloud lcx_cloud;
typedef struct lcx_profile lcx_profile;
typedef struct lcx_trajectory lcx_trajectory;
typedef struct lcx_report lcx_report;

/* Library version string, e.g. "0.1.0". */
const char* lcx_version(void);

/* Message of the most recent failing call on this thread; never NULL. */
const char* lcx_last_error(void);

/* ---- point clouds ----------------------------------------------------- */

/* Builds a cloud from count points: xyz is 3*count doubles (x,y,z per
 * point); intensity is count floats or NULL for all-zero. */
lcx_status lcx_cloud_create(const double* xyz, const float* intensity, size_t count,
                            lcx_cloud** out);

/* KITTI velodyne .bin: records of four little-endian float32 (x,y,z,i). */
lcx_status lcx_cloud_read_kitti(const char* path, lcx_cloud** out);
lcx_status lcx_cloud_write_kitti(const lcx_cloud* cloud, const char* path);

/* Loads every .bin scan directly inside dir in sorted name order. Free the
 * array with lcx_cloud_array_destroy. */
lcx_status lcx_load_kitti_dir(const char* dir, lcx_cloud*** clouds_out, size_t* count_out);

size_t lcx_cloud_size(const lcx_cloud* cloud);

/* Copies out 3*size doubles / size floats; buffers must be large enough. */
lcx_status lcx_cloud_xyz(const lcx_cloud* cloud, double* out_xyz);
lcx_status lcx_cloud_intensity(const lcx_cloud* cloud, float* out_intensity);

/* Beam count used when corruption must infer scan layers (default 64). */
int lcx_cloud_beam_count(const lcx_cloud* cloud);
lcx_status lcx_cloud_set_beam_count(lcx_cloud* cloud, int beam_count);

void lcx_cloud_destroy(lcx_cloud* cloud);

/* ---- severity profiles ------------------------------------------------ */

lcx_status lcx_profile_default(lcx_profile** out);
lcx_status lcx_profile_load(const char* path, lcx_profile** out);

/* Renders the full profile as an INI document. */
lcx_status lcx_profile_render(const lcx_profile* profile, char* buf, size_t buf_size,
                              size_t* needed);

void lcx_profile_destroy(lcx_profile* profile);

/* ---- corruptions ------------------------------------------------------ */

/* Corruption kinds are addressed by their stable ordinal 0..17; the ordinal
 * doubles as the kind's seed-derivation constant. */
int lcx_kind_count(void);
const char* lcx_kind_name(int ordinal); /* NULL when out of range */
lcx_status lcx_kind_from_name(const char* name, int* ordinal_out);

/* Public per-frame seed derivation (documented 64-bit mix, stable across
 * versions): subsystems corrupting frame f of a sweep seeded with g use
 * lcx_derive_frame_seed(g, f, kind ordinal). */
uint64_t lcx_derive_frame_seed(uint64_t global_seed, uint64_t frame_id, uint64_t kind_ordinal);

/* Applies one corruption. severity is 1..5; profile may be NULL for the
 * built-in defaults. */
lcx_status lcx_corrupt(const lcx_cloud* cloud, int kind_ordinal, int severity, uint64_t seed,
                       const lcx_profile* profile, lcx_cloud** out);

/* ---- denoising --------------------------------------------------------- */

typedef struct lcx_bilateral_params {
  double radius;
  double sigma_d;
  double sigma_n;
  int iterations;
  int normal_k;
} lcx_bilateral_params;

void lcx_bilateral_params_default(lcx_bilateral_params* out);

lcx_status lcx_bilateral_filter(const lcx_cloud* cloud, const lcx_bilateral_params* params,
                                lcx_cloud** out);

/* ---- odometry and evaluation ------------------------------------------ */

typedef struct lcx_odometry_config {
  double voxel_size;
  double max_corr_dist;
  int max_iterations;
  double convergence_eps;
  double robust_delta;
  int use_constant_velocity; /* 0 or 1 */
} lcx_odometry_config;

void lcx_odometry_config_default(lcx_odometry_config* out);

/* Frame-to-frame ICP over >= 2 frames. Writes the estimated trajectory and
 * the number of frames whose registration failed (they fall back to the
 * motion prediction). */
lcx_status lcx_run_odometry(const lcx_cloud* const* frames, size_t frame_count,
                            const lcx_odometry_config* config, lcx_trajectory** out,
                            size_t* flagged_count);

/* KITTI pose text: 12 floats per line, row-major 3x4 [R|t]. */
lcx_status lcx_trajectory_read_kitti(const char* path, lcx_trajectory** out);
lcx_status lcx_trajectory_write_kitti(const lcx_trajectory* trajectory, const char* path);

size_t lcx_trajectory_size(const lcx_trajectory* trajectory);

/* Pose at position index (not frame id); mat receives the row-major 3x4. */
lcx_status lcx_trajectory_pose(const lcx_trajectory* trajectory, size_t index,
                               int64_t* frame_id_out, double mat_out[12]);

void lcx_trajectory_destroy(lcx_trajectory* trajectory);

/* Mean relative pose error over consecutive ground-truth frame pairs.
 * Rotation error is radians. */
lcx_status lcx_rpe(const lcx_trajectory* est, const lcx_trajectory* gt, double* rpe_trans_m,
                   double* rpe_rot_rad);

/* KITTI-style percentage drift; lengths = NULL selects 100..800 m. */
lcx_status lcx_kitti_drift(const lcx_trajectory* est, const lcx_trajectory* gt,
                           const double* lengths, size_t length_count, double* drift_percent);

/* ---- synthetic scenes -------------------------------------------------- */

/* Generates a deterministic scene ("corridor"); writes an array of cloud
 * handles plus the ground-truth trajectory. Free the array with
 * lcx_cloud_array_destroy and the trajectory normally. */
lcx_status lcx_generate_synthetic(const char* scene, int frames, uint64_t seed,
                                  lcx_cloud*** clouds_out, size_t* count_out,
                                  lcx_trajectory** ground_truth_out);

void lcx_cloud_array_destroy(lcx_cloud** clouds, size_t count);

/* ---- augmentation export ----------------------------------------------- */

/* Writes corrupted copies of the frames under out_dir/<kind>/<frame>.bin
 * plus out_dir/manifest.json. kinds_csv is a comma-separated kind list
 * ("all" selects every kind). */
lcx_status lcx_export_augmentation(const lcx_cloud* const* frames, size_t frame_count,
                                   const char* kinds_csv, int severity, uint64_t seed,
                                   const lcx_profile* profile, const char* out_dir);

/* ---- experiments -------------------------------------------------------- */

/* Loads the INI experiment config, runs the sweep, writes any outputs the
 * config declares, and returns the report. threads_override > 0 replaces
 * the config's thread count; seed_override_count > 0 replaces its seed
 * list. */
lcx_status lcx_experiment_run(const char* config_path, int threads_override,
                              const uint64_t* seed_override, size_t seed_override_count,
                              lcx_report** out);

/* Renders the effective config (defaults included) without running. */
lcx_status lcx_experiment_render_config(const char* config_path, char* buf, size_t buf_size,
                                        size_t* needed);

size_t lcx_report_row_count(const lcx_report* report);
lcx_status lcx_report_csv(const lcx_report* report, char* buf, size_t buf_size, size_t* needed);
lcx_status lcx_report_json(const lcx_report* report, char* buf, size_t buf_size, size_t* needed);

void lcx_report_destroy(lcx_report* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LIDARCORRUPT_H */
