#include "ocproc/product.hpp"

namespace ocproc {

std::string level_name(Level level) {
    switch (level) {
        case Level::l1b: return "l1b";
        case Level::l1c: return "l1c";
        case Level::l2b: return "l2b";
        case Level::l2c: return "l2c";
    }
    return "l1b";
}

Level level_from_name(const std::string& s) {
    if (s == "l1b" || s == "L1B") return Level::l1b;
    if (s == "l1c" || s == "L1C") return Level::l1c;
    if (s == "l2b" || s == "L2B") return Level::l2b;
    if (s == "l2c" || s == "L2C") return Level::l2c;
    raise(ErrorKind::config, "unknown product level '" + s + "'");
}

const Raster& ProductGrid::band(int b) const {
    auto it = radiance.find(b);
    if (it == radiance.end())
        raise(ErrorKind::domain, "product has no band " + std::to_string(b));
    return it->second;
}

Raster& ProductGrid::band(int b) {
    auto it = radiance.find(b);
    if (it == radiance.end())
        raise(ErrorKind::domain, "product has no band " + std::to_string(b));
    return it->second;
}

}  // namespace ocproc
