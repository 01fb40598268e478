#include "fnls/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fnls {

static void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("params: " + msg);
}

bool PhysParams::in_production_window() const {
  if (!(d > 2.0 * s)) return false;
  const double lo = 2.0 + 4.0 * s / d;
  const double hi = 2.0 * d / (d - 2.0 * s);
  return p > lo && p < hi;
}

void PhysParams::validate(ParamRegime regime) const {
  require(d == 1 || d == 2, "dimension must be 1 or 2");
  require(std::isfinite(s) && s > 0.0 && s <= 1.0, "s must lie in (0,1]");
  require(std::isfinite(p) && p > 2.0, "p must exceed 2");
  require(std::isfinite(c) && c > 0.0, "mass c must be positive");
  if (regime == ParamRegime::kProduction) {
    require(d > 2.0 * s, "production regime needs d > 2s");
    const double lo = 2.0 + 4.0 * s / d;
    const double hi = 2.0 * d / (d - 2.0 * s);
    require(p > lo && p < hi,
            "p outside the admissible window (" + std::to_string(lo) + ", " +
                std::to_string(hi) + ")");
  }
}

}  // namespace fnls
