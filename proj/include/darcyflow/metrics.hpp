#pragma once

#include "darcyflow/types.hpp"

#include <span>

namespace darcyflow::metrics {

/// Mean of |a - b|. Throws std::invalid_argument on size mismatch or empty input.
double mae(std::span<const double> a, std::span<const double> b);

/// Mean of (a - b)^2.
double mse(std::span<const double> a, std::span<const double> b);

struct SeriesErrors {
    double mae_pressure = 0.0;
    double mse_pressure = 0.0;
    double mae_sat_w = 0.0;
    double mse_sat_w = 0.0;
};

/// Errors between two series of identical shape.
SeriesErrors compare(const FieldSeries& a, const FieldSeries& b);

} // namespace darcyflow::metrics
