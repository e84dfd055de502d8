#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

#include "ocproc/common/error.hpp"

namespace ocproc::geom {

inline constexpr double kPi = 3.14159265358979323846;
inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// WGS-84 defining constants and derived quantities.
inline constexpr double kWgs84A = 6378137.0;
inline constexpr double kWgs84F = 1.0 / 298.257223563;
inline constexpr double kWgs84B = kWgs84A * (1.0 - kWgs84F);
inline constexpr double kWgs84E2 = kWgs84F * (2.0 - kWgs84F);
inline constexpr double kEarthRotationRate = 7.2921150e-5;  // rad/s
inline constexpr double kEarthGM = 3.986004418e14;          // m^3/s^2

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct GroundPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double height_m = 0.0;
};

// Normalizes longitude to (-180, 180].
inline double normalize_lon(double lon_deg) {
    lon_deg = std::fmod(lon_deg, 360.0);
    if (lon_deg <= -180.0) lon_deg += 360.0;
    if (lon_deg > 180.0) lon_deg -= 360.0;
    return lon_deg;
}

inline GroundPoint make_ground_point(double lat_deg, double lon_deg, double height_m = 0.0) {
    if (!(std::abs(lat_deg) <= 90.0))
        raise(ErrorKind::domain, "latitude out of [-90, 90]");
    return GroundPoint{lat_deg, normalize_lon(lon_deg), height_m};
}

Vec3 ecef_from_geodetic(const GroundPoint& p);
GroundPoint geodetic_from_ecef(const Vec3& ecef);

// Residual of the implicit surface equation of the ellipsoid inflated by
// height h: (x/(a+h))^2 + (y/(a+h))^2 + (z/(b+h))^2 - 1.
double ellipsoid_residual(const Vec3& ecef, double height_m);

// Nearest intersection of the ray origin + t*dir (t > 0) with the ellipsoid
// at the given height. Throws not_visible when the ray misses.
Vec3 intersect_ellipsoid(const Vec3& origin, const Vec3& dir, double height_m);

inline Mat3 rot_x(double a) {
    double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << 1, 0, 0, 0, c, -s, 0, s, c;
    return m;
}
inline Mat3 rot_y(double a) {
    double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, 0, s, 0, 1, 0, -s, 0, c;
    return m;
}
inline Mat3 rot_z(double a) {
    double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, -s, 0, s, c, 0, 0, 0, 1;
    return m;
}

}  // namespace ocproc::geom
