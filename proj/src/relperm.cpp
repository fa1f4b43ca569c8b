#include "darcyflow/relperm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace darcyflow::relperm {

namespace {

void check_saturation(double sw)
{
    if (!(sw >= 0.0 && sw <= 1.0))
        throw std::domain_error("relative permeability: saturation " + std::to_string(sw) +
                                " outside [0, 1]");
}

// Normalised mobile saturation of the phase, clamped to [0, 1].
double normalised(double s_phase, const CoreyParams& p)
{
    const double span = 1.0 - 2.0 * p.s_c;
    return std::clamp((s_phase - p.s_c) / span, 0.0, 1.0);
}

double corey(double s_phase, const CoreyParams& p)
{
    return p.k_end * std::pow(normalised(s_phase, p), p.a);
}

double corey_derivative(double s_phase, const CoreyParams& p)
{
    if (s_phase < p.s_c || s_phase > 1.0 - p.s_c)
        return 0.0;
    const double span = 1.0 - 2.0 * p.s_c;
    const double x = normalised(s_phase, p);
    return p.k_end * p.a * std::pow(x, p.a - 1.0) / span;
}

} // namespace

double krw(double sw, const CoreyParams& p)
{
    check_saturation(sw);
    return corey(sw, p);
}

double kro(double sw, const CoreyParams& p)
{
    check_saturation(sw);
    return corey(1.0 - sw, p);
}

double dkrw_dsw(double sw, const CoreyParams& p)
{
    check_saturation(sw);
    return corey_derivative(sw, p);
}

double dkro_dsw(double sw, const CoreyParams& p)
{
    check_saturation(sw);
    return -corey_derivative(1.0 - sw, p);
}

} // namespace darcyflow::relperm
