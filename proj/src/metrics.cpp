#include "darcyflow/metrics.hpp"

#include "darcyflow/discretization.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace darcyflow::metrics {

namespace {

void check(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("metrics: shape mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + " entries)");
    if (a.empty())
        throw std::invalid_argument("metrics: empty input");
}

template <typename F>
double mean_of(std::span<const double> a, std::span<const double> b, F f)
{
    check(a, b);
    std::vector<double> terms(a.size());
    for (std::size_t n = 0; n < a.size(); ++n)
        terms[n] = f(a[n] - b[n]);
    return discretization::pairwise_sum(terms) / static_cast<double>(terms.size());
}

} // namespace

double mae(std::span<const double> a, std::span<const double> b)
{
    return mean_of(a, b, [](double d) { return std::abs(d); });
}

double mse(std::span<const double> a, std::span<const double> b)
{
    return mean_of(a, b, [](double d) { return d * d; });
}

SeriesErrors compare(const FieldSeries& a, const FieldSeries& b)
{
    if (a.cells != b.cells || a.slice_count() != b.slice_count())
        throw std::invalid_argument("metrics: series shapes differ");
    return {mae(a.pressure, b.pressure), mse(a.pressure, b.pressure), mae(a.sat_w, b.sat_w),
            mse(a.sat_w, b.sat_w)};
}

} // namespace darcyflow::metrics
