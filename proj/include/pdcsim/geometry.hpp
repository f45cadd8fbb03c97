#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "pdcsim/errors.hpp"
#include "pdcsim/random.hpp"

namespace pdcsim {

// Position in meters: x east, y north, z altitude above flat ground.
// The origin is the disaster epicenter.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double horizontal_norm() const noexcept { return std::hypot(x, y); }

  friend bool operator==(const Point3&, const Point3&) = default;
};

inline bool is_valid(const Point3& p) noexcept {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z) && p.z >= 0.0;
}

struct DiskRegion {
  Point3 center{};
  double radius = 1.0;  // meters

  DiskRegion() = default;
  DiskRegion(Point3 c, double r) : center(c), radius(r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("disk radius must be positive");
    if (c.z != 0.0) throw InvalidArgument("disk center must lie on the ground");
  }
};

inline double distance3d(const Point3& a, const Point3& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double horizontal_distance(const Point3& a, const Point3& b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Elevation of `aerial` as seen from `ground`, in degrees.
inline double elevation_angle(const Point3& ground, const Point3& aerial) {
  const double dz = aerial.z - ground.z;
  if (!(dz > 0.0)) throw InvalidGeometry("elevation angle needs the aerial point above the ground point");
  const double h = horizontal_distance(ground, aerial);
  if (h == 0.0) return 90.0;
  return std::atan2(dz, h) * (180.0 / std::numbers::pi);
}

// One point uniform over the disk, on the ground plane.
inline Point3 sample_uniform_disk_point(RandomStream& rng, const DiskRegion& region) {
  const double rho = region.radius * std::sqrt(uniform01(rng));
  const double phi = uniform_angle(rng);
  return {region.center.x + rho * std::cos(phi), region.center.y + rho * std::sin(phi), 0.0};
}

inline std::vector<Point3> sample_uniform_disk(RandomStream& rng, const DiskRegion& region, std::size_t n) {
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_uniform_disk_point(rng, region));
  return out;
}

enum class TbsCountMode { Poisson, FixedRounded };

// Mean number of functional TBSs: density (per km^2) times the annulus area.
inline double tbs_field_mean(double r_d, double r_s, double density_per_km2) noexcept {
  const double area_km2 = std::numbers::pi * (r_s * r_s - r_d * r_d) * 1e-6;
  return density_per_km2 * area_km2;
}

// Functional terrestrial base stations: the annulus r_d < |p| <= r_s around
// the origin. Stations inside the disaster disk are never generated.
inline std::vector<Point3> sample_tbs_field(RandomStream& rng, double r_d, double r_s, double density_per_km2,
                                            TbsCountMode mode = TbsCountMode::Poisson) {
  if (!(r_d >= 0.0) || !(r_s > r_d) || !std::isfinite(r_s)) throw InvalidArgument("invalid region: need r_s > r_d >= 0");
  if (!(density_per_km2 > 0.0) || !std::isfinite(density_per_km2)) throw InvalidArgument("TBS density must be positive");

  const double mean = tbs_field_mean(r_d, r_s, density_per_km2);
  const std::size_t count = mode == TbsCountMode::Poisson ? static_cast<std::size_t>(poisson(mean, rng))
                                                          : static_cast<std::size_t>(std::llround(mean));
  const double inner2 = r_d * r_d;
  const double span2 = r_s * r_s - inner2;

  std::vector<Point3> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // u in (0, 1] keeps the inner boundary open and the outer one closed.
    double rho = std::sqrt(inner2 + span2 * uniform_open_zero(rng));
    if (rho <= r_d) rho = std::nextafter(r_d, r_s);
    if (rho > r_s) rho = r_s;
    const double phi = uniform_angle(rng);
    out.push_back({rho * std::cos(phi), rho * std::sin(phi), 0.0});
  }
  return out;
}

}  // namespace pdcsim
