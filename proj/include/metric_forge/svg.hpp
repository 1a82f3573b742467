#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metric_forge/nebula.hpp"

namespace metric_forge::svg {

// Static number line over [0, T], T = max value rounded up (at least 1).
// Range values are ticks, nebula pieces are bars. Coordinates are printed
// with fixed precision; exact values ride along in data-* attributes.
std::string render_range(const std::vector<Scalar>& values,
                         const std::optional<Nebula>& nebula);

}  // namespace metric_forge::svg
