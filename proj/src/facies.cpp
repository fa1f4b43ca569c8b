#include "darcyflow/facies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace darcyflow::facies {

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter)
{
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + counter + 0x632BE59BD9B4E019ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    // Second round so that neighbouring (seed, counter) pairs decorrelate.
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter)
{
    return static_cast<double>(counter_hash(seed, counter) >> 11) * 0x1.0p-53;
}

namespace {

int radius_cells(double length, double spacing)
{
    return std::max(0, static_cast<int>(std::lround(length / spacing)));
}

// In-place box average along one axis; windows are truncated at the domain
// edges.
void smooth_axis(std::vector<double>& data, int nx, int ny, int nz, int axis, int radius)
{
    if (radius == 0)
        return;
    const int n = axis == 0 ? nx : (axis == 1 ? ny : nz);
    const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? static_cast<std::size_t>(nx)
                                                          : static_cast<std::size_t>(nx) * ny);
    const int n_lines = nx * ny * nz / n;
    std::vector<double> line(static_cast<std::size_t>(n));
    for (int l = 0; l < n_lines; ++l) {
        std::size_t base;
        if (axis == 0)
            base = static_cast<std::size_t>(l) * nx;
        else if (axis == 1)
            base = static_cast<std::size_t>(l / nx) * nx * ny + static_cast<std::size_t>(l % nx);
        else
            base = static_cast<std::size_t>(l);
        for (int a = 0; a < n; ++a)
            line[a] = data[base + a * stride];
        for (int a = 0; a < n; ++a) {
            const int lo = std::max(0, a - radius);
            const int hi = std::min(n - 1, a + radius);
            double s = 0.0;
            for (int b = lo; b <= hi; ++b)
                s += line[b];
            data[base + a * stride] = s / static_cast<double>(hi - lo + 1);
        }
    }
}

} // namespace

std::vector<double> smoothed_noise(std::uint64_t seed, const Grid& grid,
                                   const CorrelationLength& corr)
{
    if (grid.nx < 1 || grid.ny < 1 || grid.nz < 1 || !(grid.dx > 0) || !(grid.dy > 0) ||
        !(grid.dz > 0))
        throw std::invalid_argument("generate_facies: degenerate grid");
    if (!(corr.lateral > 0.0) || !(corr.vertical > 0.0))
        throw std::invalid_argument("generate_facies: correlation length must be positive");

    std::vector<double> field(grid.cell_count());
    for (std::size_t c = 0; c < field.size(); ++c)
        field[c] = counter_uniform(seed, c) - 0.5;
    smooth_axis(field, grid.nx, grid.ny, grid.nz, 0, radius_cells(corr.lateral, grid.dx));
    smooth_axis(field, grid.nx, grid.ny, grid.nz, 1, radius_cells(corr.lateral, grid.dy));
    smooth_axis(field, grid.nx, grid.ny, grid.nz, 2, radius_cells(corr.vertical, grid.dz));
    return field;
}

RockField generate_facies(std::uint64_t seed, const Grid& grid, const CorrelationLength& corr,
                          double sand_fraction, const FaciesValues& values)
{
    if (!(sand_fraction > 0.0 && sand_fraction < 1.0))
        throw std::invalid_argument("generate_facies: sand fraction must lie in (0, 1)");
    const std::vector<double> field = smoothed_noise(seed, grid, corr);
    const std::size_t n = field.size();

    const auto n_sand = static_cast<std::size_t>(std::llround(sand_fraction * static_cast<double>(n)));
    RockField rock;
    rock.perm.assign(n, values.mud_perm);
    rock.poro.assign(n, values.mud_poro);
    if (n_sand == 0)
        return rock;

    // Sand is every cell strictly above the (n - n_sand)-th smallest value.
    std::vector<double> sorted = field;
    bool all_sand = n_sand >= n;
    double threshold = 0.0;
    if (!all_sand) {
        const auto pos = static_cast<std::ptrdiff_t>(n - n_sand - 1);
        std::nth_element(sorted.begin(), sorted.begin() + pos, sorted.end());
        threshold = sorted[static_cast<std::size_t>(pos)];
    }
    for (std::size_t c = 0; c < n; ++c) {
        if (all_sand || field[c] > threshold) {
            rock.perm[c] = values.sand_perm;
            rock.poro[c] = values.sand_poro;
        }
    }
    return rock;
}

void for_each_realization(std::uint64_t seed0, int count, const Grid& grid,
                          const CorrelationLength& corr, double sand_fraction,
                          const std::function<void(std::uint64_t, const RockField&)>& sink,
                          const FaciesValues& values)
{
    for (int r = 0; r < count; ++r) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(r);
        sink(seed, generate_facies(seed, grid, corr, sand_fraction, values));
    }
}

std::vector<RockField> generate_dataset(std::uint64_t seed0, int count, const Grid& grid,
                                        const CorrelationLength& corr, double sand_fraction,
                                        const FaciesValues& values)
{
    if (count < 1)
        throw std::invalid_argument("generate_dataset: count must be >= 1");
    std::vector<RockField> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for_each_realization(
        seed0, count, grid, corr, sand_fraction,
        [&](std::uint64_t, const RockField& r) { out.push_back(r); }, values);
    return out;
}

double sand_fraction_of(const RockField& rock, const FaciesValues& values)
{
    if (rock.perm.empty())
        return 0.0;
    const auto n = std::count(rock.perm.begin(), rock.perm.end(), values.sand_perm);
    return static_cast<double>(n) / static_cast<double>(rock.perm.size());
}

} // namespace darcyflow::facies
