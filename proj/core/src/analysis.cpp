#include "nkimit/analysis.hpp"

#include <cmath>

#include "nkimit/error.hpp"

namespace nkimit {

PowerLawFit fit_power_law(std::span<const CostPoint> points, int n) {
    if (points.size() < 3) throw ParameterError("fit_power_law: need at least 3 points");
    const double scale = std::ldexp(1.0, n);
    double sx = 0, sy = 0;
    for (const auto& pt : points) {
        if (!(pt.l > 0.0) || !(pt.mean_cost > 0.0)) throw ParameterError("fit_power_law: values must be positive");
        sx += std::log(pt.l / scale);
        sy += std::log(pt.mean_cost);
    }
    const double count = static_cast<double>(points.size());
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0, sxy = 0;
    for (const auto& pt : points) {
        const double dx = std::log(pt.l / scale) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(pt.mean_cost) - my);
    }
    if (sxx <= 1e-300) throw NumericalError("fit_power_law: degenerate input, all L are equal");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.amplitude = std::exp(my - fit.exponent * mx);
    return fit;
}

}  // namespace nkimit
