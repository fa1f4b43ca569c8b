#pragma once

#include "darcyflow/types.hpp"
#include "darcyflow/wells.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace darcyflow::plot {

/// Row-major 2-D field: value(i, j) = values[j * width + i].
struct Slice2D {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

/// Layer k of time slice t of a [t][k][j][i] array.
Slice2D layer(std::span<const double> series_data, const Grid& grid, std::size_t t, int k);

/// Binary PPM (P6), one pixel per cell, linear two-colour ramp from the slice
/// minimum to its maximum, row j = 0 at the top. Writes `<path>.json` with
/// width, height, min and max next to it.
void emit_heatmap(const Slice2D& slice, const std::filesystem::path& path,
                  const std::string& label = "");

/// Writes the production table as the wells CSV format.
void emit_curves(const wells::ProductionTable& table, const std::filesystem::path& path);

} // namespace darcyflow::plot
