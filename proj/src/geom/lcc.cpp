#include "ocproc/geom/lcc.hpp"

namespace ocproc::geom {

namespace {

const double kE = std::sqrt(kWgs84E2);

double m_of(double lat) {
    double s = std::sin(lat);
    return std::cos(lat) / std::sqrt(1.0 - kWgs84E2 * s * s);
}

double t_of(double lat) {
    double s = std::sin(lat);
    return std::tan(kPi / 4.0 - lat / 2.0) /
           std::pow((1.0 - kE * s) / (1.0 + kE * s), kE / 2.0);
}

struct Derived {
    double n, big_f, rho0;
};

Derived derive(const LCCProjection& p) {
    if (p.lat1_deg == p.lat2_deg)
        raise(ErrorKind::domain, "standard parallels must be distinct");
    double l1 = deg2rad(p.lat1_deg), l2 = deg2rad(p.lat2_deg), l0 = deg2rad(p.lat0_deg);
    double m1 = m_of(l1), m2 = m_of(l2);
    double t1 = t_of(l1), t2 = t_of(l2), t0 = t_of(l0);
    Derived d;
    d.n = (std::log(m1) - std::log(m2)) / (std::log(t1) - std::log(t2));
    d.big_f = m1 / (d.n * std::pow(t1, d.n));
    d.rho0 = kWgs84A * d.big_f * std::pow(t0, d.n);
    return d;
}

void check_lat(double lat_deg) {
    if (!(std::abs(lat_deg) < 89.99))
        raise(ErrorKind::domain, "latitude too close to a pole for LCC");
}

}  // namespace

LCCProjection lcc_for_scene_center(double lat_deg, double lon_deg, double pixel_size_m) {
    LCCProjection p;
    p.lat0_deg = lat_deg;
    p.lat1_deg = lat_deg - 2.0;
    p.lat2_deg = lat_deg + 2.0;
    p.lon0_deg = lon_deg;
    p.pixel_size_m = pixel_size_m;
    return p;
}

MapXY lcc_forward(const LCCProjection& proj, const GroundPoint& p) {
    check_lat(p.lat_deg);
    Derived d = derive(proj);
    double lat = deg2rad(p.lat_deg);
    double dlon = deg2rad(normalize_lon(p.lon_deg - proj.lon0_deg));
    double rho = kWgs84A * d.big_f * std::pow(t_of(lat), d.n);
    double theta = d.n * dlon;
    MapXY xy;
    xy.x = proj.false_easting_m + rho * std::sin(theta);
    xy.y = proj.false_northing_m + d.rho0 - rho * std::cos(theta);
    return xy;
}

GroundPoint lcc_inverse(const LCCProjection& proj, double x, double y) {
    Derived d = derive(proj);
    double dx = x - proj.false_easting_m;
    double dy = d.rho0 - (y - proj.false_northing_m);
    double rho = std::copysign(std::hypot(dx, dy), d.n);
    double theta = std::atan2(std::copysign(dx, d.n), std::copysign(dy, d.n));
    double t = std::pow(rho / (kWgs84A * d.big_f), 1.0 / d.n);
    // Fixed-point iteration for the ellipsoidal latitude.
    double lat = kPi / 2.0 - 2.0 * std::atan(t);
    for (int i = 0; i < 30; ++i) {
        double s = std::sin(lat);
        double next = kPi / 2.0 -
                      2.0 * std::atan(t * std::pow((1.0 - kE * s) / (1.0 + kE * s), kE / 2.0));
        if (std::abs(next - lat) < 1e-15) {
            lat = next;
            break;
        }
        lat = next;
    }
    GroundPoint g;
    g.lat_deg = rad2deg(lat);
    g.lon_deg = normalize_lon(rad2deg(theta / d.n) + proj.lon0_deg);
    g.height_m = 0.0;
    return g;
}

double lcc_scale_factor(const LCCProjection& proj, double lat_deg) {
    check_lat(lat_deg);
    Derived d = derive(proj);
    double lat = deg2rad(lat_deg);
    double rho = kWgs84A * d.big_f * std::pow(t_of(lat), d.n);
    return rho * d.n / (kWgs84A * m_of(lat));
}

}  // namespace ocproc::geom
