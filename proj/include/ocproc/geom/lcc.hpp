#pragma once

#include "ocproc/geom/earth.hpp"

namespace ocproc::geom {

// Two-parallel Lambert Conformal Conic on the WGS-84 ellipsoid.
struct LCCProjection {
    double lat1_deg = 18.0;
    double lat2_deg = 22.0;
    double lat0_deg = 20.0;
    double lon0_deg = 0.0;
    double false_easting_m = 0.0;
    double false_northing_m = 0.0;
    double pixel_size_m = 366.0;
};

// Projection defaulting per the product convention: standard parallels at
// the scene-center latitude +/- 2 deg, reference at the scene center.
LCCProjection lcc_for_scene_center(double lat_deg, double lon_deg, double pixel_size_m);

struct MapXY {
    double x = 0.0;
    double y = 0.0;
};

MapXY lcc_forward(const LCCProjection& proj, const GroundPoint& p);
GroundPoint lcc_inverse(const LCCProjection& proj, double x, double y);

// Point scale factor along a parallel; 1 at the standard parallels.
double lcc_scale_factor(const LCCProjection& proj, double lat_deg);

}  // namespace ocproc::geom
