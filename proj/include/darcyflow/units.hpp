#pragma once

// Field-unit <-> SI conversions. Everything inside the library is SI
// (m, s, Pa, kg); these maps are only used at configuration and I/O time.

#include <stdexcept>

namespace darcyflow::units {

inline constexpr double kMillidarcy = 9.869233e-16;  // m^2
inline constexpr double kCentipoise = 1e-3;          // Pa s
inline constexpr double kBar = 1e5;                  // Pa
inline constexpr double kDay = 86400.0;              // s

/// Millidarcy to m^2. Rejects negative permeability.
inline double md_to_m2(double k_md)
{
    if (!(k_md >= 0.0))
        throw std::invalid_argument("md_to_m2: permeability must be >= 0");
    return k_md * kMillidarcy;
}

inline double m2_to_md(double k_m2)
{
    if (!(k_m2 >= 0.0))
        throw std::invalid_argument("m2_to_md: permeability must be >= 0");
    return k_m2 / kMillidarcy;
}

inline constexpr double cp_to_pas(double mu_cp) { return mu_cp * kCentipoise; }
inline constexpr double pas_to_cp(double mu) { return mu / kCentipoise; }
inline constexpr double bar_to_pa(double p_bar) { return p_bar * kBar; }
inline constexpr double pa_to_bar(double p) { return p / kBar; }
inline constexpr double days_to_s(double d) { return d * kDay; }
inline constexpr double s_to_days(double s) { return s / kDay; }

/// Compressibility given per bar to per Pa.
inline constexpr double per_bar_to_per_pa(double c) { return c / kBar; }
inline constexpr double per_pa_to_per_bar(double c) { return c * kBar; }

} // namespace darcyflow::units
