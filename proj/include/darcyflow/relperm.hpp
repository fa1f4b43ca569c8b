#pragma once

#include "darcyflow/types.hpp"

namespace darcyflow::relperm {

// Corey closures as functions of water saturation. The saturation is clamped
// to [s_c, 1 - s_c] before the power law. Inputs outside [0, 1] throw
// std::domain_error.
//
//   krw(sw) = k_end * ((sw - s_c) / (1 - 2 s_c))^a
//   kro(sw) = k_end * ((1 - sw - s_c) / (1 - 2 s_c))^a

double krw(double sw, const CoreyParams& p);
double kro(double sw, const CoreyParams& p);

// Derivatives with respect to sw. At exactly s_c and 1 - s_c the interior
// one-sided value is returned; strictly outside the interval they are zero.
double dkrw_dsw(double sw, const CoreyParams& p);
double dkro_dsw(double sw, const CoreyParams& p);

/// Relative permeability of `phase` at water saturation sw.
inline double kr(Phase phase, double sw, const CoreyParams& p)
{
    return phase == Phase::water ? krw(sw, p) : kro(sw, p);
}

inline double dkr_dsw(Phase phase, double sw, const CoreyParams& p)
{
    return phase == Phase::water ? dkrw_dsw(sw, p) : dkro_dsw(sw, p);
}

} // namespace darcyflow::relperm
