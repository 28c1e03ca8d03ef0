#include "cqs/fitting.hpp"

#include <cmath>

namespace cqs {

ScalingFit fit_powerlaw(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw Error("fit_powerlaw: needs at least 4 points");
    const int n = int(points.size());
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        if (!(x > 0) || !(y > 0)) throw Error("fit_powerlaw: values must be positive");
        sx += std::log(x);
        sy += std::log(y);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mx, dy = std::log(y) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) throw Error("fit_powerlaw: degenerate abscissae");
    ScalingFit f;
    f.exponent = sxy / sxx;
    f.intercept = my - f.exponent * mx;
    f.r_squared = (syy == 0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    f.points_used = n;
    return f;
}

}  // namespace cqs
