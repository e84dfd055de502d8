#include "ocproc/geom/earth.hpp"

namespace ocproc::geom {

Vec3 ecef_from_geodetic(const GroundPoint& p) {
    double lat = deg2rad(p.lat_deg), lon = deg2rad(p.lon_deg);
    double sl = std::sin(lat), cl = std::cos(lat);
    double n = kWgs84A / std::sqrt(1.0 - kWgs84E2 * sl * sl);
    return Vec3{(n + p.height_m) * cl * std::cos(lon), (n + p.height_m) * cl * std::sin(lon),
                (n * (1.0 - kWgs84E2) + p.height_m) * sl};
}

GroundPoint geodetic_from_ecef(const Vec3& ecef) {
    double lon = std::atan2(ecef.y(), ecef.x());
    double p = std::hypot(ecef.x(), ecef.y());
    double lat = std::atan2(ecef.z(), p * (1.0 - kWgs84E2));
    double h = 0.0;
    // The fixed point contracts by ~e^2/2 per step; four steps give
    // sub-micrometer latitude for any LEO-relevant height.
    for (int it = 0; it < 4; ++it) {
        double sl = std::sin(lat);
        double n = kWgs84A / std::sqrt(1.0 - kWgs84E2 * sl * sl);
        h = (p > 1.0) ? p / std::cos(lat) - n : std::abs(ecef.z()) - kWgs84B;
        lat = std::atan2(ecef.z(), p * (1.0 - kWgs84E2 * n / (n + h)));
    }
    GroundPoint g;
    g.lat_deg = rad2deg(lat);
    g.lon_deg = normalize_lon(rad2deg(lon));
    g.height_m = h;
    return g;
}

double ellipsoid_residual(const Vec3& ecef, double height_m) {
    double ax = kWgs84A + height_m, bz = kWgs84B + height_m;
    double x = ecef.x() / ax, y = ecef.y() / ax, z = ecef.z() / bz;
    return x * x + y * y + z * z - 1.0;
}

Vec3 intersect_ellipsoid(const Vec3& origin, const Vec3& dir, double height_m) {
    double ax = kWgs84A + height_m, bz = kWgs84B + height_m;
    // Scale to the unit sphere and solve the quadratic there.
    Vec3 o{origin.x() / ax, origin.y() / ax, origin.z() / bz};
    Vec3 d{dir.x() / ax, dir.y() / ax, dir.z() / bz};
    double a = d.squaredNorm();
    double b = 2.0 * o.dot(d);
    double c = o.squaredNorm() - 1.0;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) raise(ErrorKind::not_visible, "look ray misses the ellipsoid");
    double sq = std::sqrt(disc);
    double t = (-b - sq) / (2.0 * a);  // nearer intersection
    if (t <= 0.0) raise(ErrorKind::not_visible, "ellipsoid intersection behind the sensor");
    return origin + t * dir;
}

}  // namespace ocproc::geom
