#pragma once

#include <cstddef>
#include <span>

namespace nkimit {

struct CostPoint {
    double l = 0.0;
    double mean_cost = 0.0;
};

struct PowerLawFit {
    double amplitude = 0.0;
    double exponent = 0.0;
};

// Least-squares fit of log<C> = log(amplitude) + exponent * log(L / 2^n).
// Needs at least three points with positive L and <C>; throws
// NumericalError when all L coincide.
PowerLawFit fit_power_law(std::span<const CostPoint> points, int n);

}  // namespace nkimit
