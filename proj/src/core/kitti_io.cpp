#include "core/kitti_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "KITTI binary I/O assumes a little-endian host");

namespace lcorrupt {

PointCloud read_kitti_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw io_error("read_kitti_bin: cannot open " + path);
  const std::streamoff size = in.tellg();
  if (size % 16 != 0) {
    throw io_error("read_kitti_bin: " + path + " length " + std::to_string(size) +
                   " is not a multiple of 16 bytes");
  }
  in.seekg(0);

  const std::size_t n = static_cast<std::size_t>(size) / 16;
  std::vector<float> raw(n * 4);
  if (n > 0) {
    in.read(reinterpret_cast<char*>(raw.data()), size);
    if (!in || in.gcount() != size) throw io_error("read_kitti_bin: truncated read of " + path);
  }

  PointCloud cloud;
  cloud.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point& p = cloud.points[i];
    p.x = raw[i * 4 + 0];
    p.y = raw[i * 4 + 1];
    p.z = raw[i * 4 + 2];
    p.intensity = raw[i * 4 + 3];
    p.layer = kNoLayer;
  }
  return cloud;
}

void write_kitti_bin(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("write_kitti_bin: cannot open " + path);
  std::vector<float> raw(cloud.size() * 4);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point& p = cloud.points[i];
    raw[i * 4 + 0] = static_cast<float>(p.x);
    raw[i * 4 + 1] = static_cast<float>(p.y);
    raw[i * 4 + 2] = static_cast<float>(p.z);
    raw[i * 4 + 3] = p.intensity;
  }
  if (!raw.empty()) {
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size() * sizeof(float)));
  }
  if (!out) throw io_error("write_kitti_bin: failed writing " + path);
}

Trajectory read_kitti_poses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("read_kitti_poses: cannot open " + path);
  Trajectory trajectory;
  std::string line;
  std::int64_t frame_id = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ss(line);
    double v[12];
    for (double& x : v) {
      if (!(ss >> x)) {
        throw io_error("read_kitti_poses: line " + std::to_string(frame_id) +
                       " of " + path + " does not hold 12 values");
      }
    }
    Pose pose;
    pose.rotation << v[0], v[1], v[2], v[4], v[5], v[6], v[8], v[9], v[10];
    pose.translation << v[3], v[7], v[11];
    trajectory.append(frame_id, pose);
    ++frame_id;
  }
  return trajectory;
}

void write_kitti_poses(const Trajectory& trajectory, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw io_error("write_kitti_poses: cannot open " + path);
  char buf[64];
  for (const TrajectoryEntry& e : trajectory.entries) {
    const Eigen::Matrix3d& r = e.pose.rotation;
    const Eigen::Vector3d& t = e.pose.translation;
    const double v[12] = {r(0, 0), r(0, 1), r(0, 2), t.x(),  //
                          r(1, 0), r(1, 1), r(1, 2), t.y(),  //
                          r(2, 0), r(2, 1), r(2, 2), t.z()};
    for (int i = 0; i < 12; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
      out << buf << (i == 11 ? '\n' : ' ');
    }
  }
  if (!out) throw io_error("write_kitti_poses: failed writing " + path);
}

std::vector<std::string> list_kitti_frames(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw io_error("list_kitti_frames: not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".bin") {
      files.push_back(entry.path().string());
    }
  }
  if (ec) throw io_error("list_kitti_frames: cannot read " + dir);
  if (files.empty()) throw io_error("list_kitti_frames: no .bin files in " + dir);
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace lcorrupt
