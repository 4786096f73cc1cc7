#pragma once

#include <string>
#include <vector>

#include "core/pose.hpp"
#include "core/types.hpp"

namespace lcorrupt {

// KITTI velodyne binary scan: consecutive 16-byte records of four
// little-endian float32 values (x, y, z, reflectance). Layers are not stored.
PointCloud read_kitti_bin(const std::string& path);
void write_kitti_bin(const PointCloud& cloud, const std::string& path);

// KITTI pose text file: one line per frame, 12 whitespace-separated floats
// forming the row-major 3x4 [R|t] matrix. Frame ids are the line numbers.
Trajectory read_kitti_poses(const std::string& path);
void write_kitti_poses(const Trajectory& trajectory, const std::string& path);

// Sorted list of the .bin files directly inside dir. Throws if the directory
// cannot be read or contains no .bin files.
std::vector<std::string> list_kitti_frames(const std::string& dir);

}  // namespace lcorrupt
