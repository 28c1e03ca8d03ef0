#pragma once

#include <utility>
#include <vector>

#include "cqs/types.hpp"

namespace cqs {

struct ScalingFit {
    double exponent = 0.0;   // slope of log y vs log x
    double intercept = 0.0;  // natural-log intercept
    double r_squared = 0.0;
    int points_used = 0;
};

/// Least squares on (log x, log y). Requires x, y > 0 and at least 4 points.
ScalingFit fit_powerlaw(const std::vector<std::pair<double, double>>& points);

}  // namespace cqs
