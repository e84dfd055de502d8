#pragma once

#include <string>

#include "json.hpp"

#include "ocproc/calibration.hpp"
#include "ocproc/product.hpp"
#include "ocproc/rad/frame.hpp"
#include "ocproc/sim/scene.hpp"

namespace ocproc::io {

// JSON round-trips for the configuration-like types embedded in containers.
nlohmann::json sensor_to_json(const geom::SensorGeometry& s);
geom::SensorGeometry sensor_from_json(const nlohmann::json& j);
nlohmann::json orbit_to_json(const geom::OrbitElements& el);
geom::OrbitElements orbit_from_json(const nlohmann::json& j);

// Geometry fingerprint recorded in products and calibration sets; process
// refuses a calibration built for different sensor geometry.
std::string sensor_hash(const geom::SensorGeometry& s);

// Raw-frame container (.ocfs)
void write_frames(const std::string& path, const rad::FrameStack& stack);
rad::FrameStack read_frames(const std::string& path);

// Level-1 product container (.ocp); radiance quantizes to float32 at write.
void write_product(const std::string& path, const ProductGrid& grid);
ProductGrid read_product(const std::string& path);

// Calibration-set container (.occ) plus its text metadata sidecar.
void write_calibration(const std::string& path, const CalibrationSet& calib);
CalibrationSet read_calibration(const std::string& path);

// Scene container (.ocsc) holding the simulator ground truth field.
void write_scene(const std::string& path, const sim::Scene& scene);
sim::Scene read_scene(const std::string& path);

// Flat-array export for inspection: raw float64 array plus a text sidecar
// describing the shape.
void export_flat(const std::string& path, const Raster& data, const std::string& description);

}  // namespace ocproc::io
