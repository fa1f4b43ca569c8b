#include "darcyflow/plot.hpp"

#include "darcyflow/tensor_file.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace darcyflow::plot {

Slice2D layer(std::span<const double> series_data, const Grid& grid, std::size_t t, int k)
{
    if (k < 0 || k >= grid.nz)
        throw std::out_of_range("plot: layer " + std::to_string(k) + " outside grid");
    const std::size_t cells = grid.cell_count();
    if ((t + 1) * cells > series_data.size())
        throw std::out_of_range("plot: time slice " + std::to_string(t) + " outside series");
    Slice2D s{grid.nx, grid.ny, {}};
    const std::size_t offset = t * cells + grid.index(0, 0, k);
    const auto n = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny);
    s.values.assign(series_data.begin() + static_cast<std::ptrdiff_t>(offset),
                    series_data.begin() + static_cast<std::ptrdiff_t>(offset + n));
    return s;
}

namespace {

constexpr std::array<double, 3> kLow{68.0, 1.0, 84.0};
constexpr std::array<double, 3> kHigh{253.0, 231.0, 37.0};

unsigned char channel(double frac, int c)
{
    const double v = kLow[c] + frac * (kHigh[c] - kLow[c]);
    return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 255.0)));
}

} // namespace

void emit_heatmap(const Slice2D& slice, const std::filesystem::path& path, const std::string& label)
{
    const auto n = static_cast<std::size_t>(slice.width) * static_cast<std::size_t>(slice.height);
    if (slice.width <= 0 || slice.height <= 0 || slice.values.size() != n)
        throw std::invalid_argument("emit_heatmap: slice dimensions disagree with data");
    for (double v : slice.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("emit_heatmap: non-finite value");

    const auto [lo_it, hi_it] = std::minmax_element(slice.values.begin(), slice.values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double span = hi - lo;

    std::string img = "P6\n" + std::to_string(slice.width) + " " + std::to_string(slice.height) +
                      "\n255\n";
    img.reserve(img.size() + 3 * n);
    for (double v : slice.values) {
        const double frac = span > 0.0 ? (v - lo) / span : 0.0;
        for (int c = 0; c < 3; ++c)
            img.push_back(static_cast<char>(channel(frac, c)));
    }
    io::write_text_atomic(path, img);

    nlohmann::json side{{"width", slice.width}, {"height", slice.height}, {"min", lo},
                        {"max", hi},           {"label", label},         {"colormap", "linear"}};
    std::filesystem::path side_path = path;
    side_path += ".json";
    io::write_text_atomic(side_path, side.dump(2) + "\n");
}

void emit_curves(const wells::ProductionTable& table, const std::filesystem::path& path)
{
    std::ostringstream os;
    wells::write_production_csv(table, os);
    io::write_text_atomic(path, os.str());
}

} // namespace darcyflow::plot
