#include "darcyflow/config.hpp"
#include "darcyflow/relperm.hpp"

#include <doctest.h>

using namespace darcyflow;

namespace {
const CoreyParams kW = reference_water().corey;
const CoreyParams kO = reference_oil().corey;
} // namespace

TEST_CASE("water relative permeability values")
{
    CHECK(relperm::krw(0.1, kW) == 0.0);
    CHECK(relperm::krw(0.9, kW) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(relperm::krw(0.5, kW) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(relperm::krw(0.05, kW) == 0.0);
    CHECK(relperm::krw(1.0, kW) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("oil relative permeability values")
{
    CHECK(relperm::kro(0.9, kO) == 0.0);
    CHECK(relperm::kro(0.1, kO) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(relperm::kro(0.5, kO) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(relperm::kro(0.0, kO) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("derivative values")
{
    CHECK(relperm::dkrw_dsw(0.05, kW) == 0.0);
    CHECK(relperm::dkrw_dsw(0.95, kW) == 0.0);
    CHECK(relperm::dkrw_dsw(0.5, kW) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(relperm::dkro_dsw(0.5, kO) == doctest::Approx(-1.25).epsilon(1e-14));
    // One-sided values at the clamp points.
    CHECK(relperm::dkrw_dsw(0.9, kW) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(relperm::dkro_dsw(0.1, kO) == doctest::Approx(-2.5).epsilon(1e-14));
}

TEST_CASE("out-of-range saturation throws")
{
    CHECK_THROWS_AS(relperm::krw(-0.01, kW), std::domain_error);
    CHECK_THROWS_AS(relperm::kro(1.01, kO), std::domain_error);
    CHECK_THROWS_AS(relperm::dkrw_dsw(2.0, kW), std::domain_error);
}

TEST_CASE("derivatives match central differences")
{
    for (const CoreyParams& p : {kW, kO, CoreyParams{0.6, 0.2, 3.0}, CoreyParams{1.0, 0.0, 1.5}}) {
        for (int n = 1; n < 200; ++n) {
            const double sw = n / 200.0;
            const double lo_edge = p.s_c;
            const double hi_edge = 1.0 - p.s_c;
            const double h = 1e-6;
            if (std::abs(sw - lo_edge) < 2 * h || std::abs(sw - hi_edge) < 2 * h)
                continue;
            const double fd_w = (relperm::krw(sw + h, p) - relperm::krw(sw - h, p)) / (2 * h);
            const double fd_o = (relperm::kro(sw + h, p) - relperm::kro(sw - h, p)) / (2 * h);
            CHECK(relperm::dkrw_dsw(sw, p) == doctest::Approx(fd_w).epsilon(1e-6).scale(1.0));
            CHECK(relperm::dkro_dsw(sw, p) == doctest::Approx(fd_o).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("monotone and bounded on [0, 1]")
{
    double prev_w = -1.0;
    double prev_o = 2.0;
    for (int n = 0; n <= 1000; ++n) {
        const double sw = n / 1000.0;
        const double w = relperm::krw(sw, kW);
        const double o = relperm::kro(sw, kO);
        CHECK(w >= prev_w);
        CHECK(o <= prev_o);
        CHECK(w >= 0.0);
        CHECK(w <= kW.k_end);
        CHECK(o >= 0.0);
        CHECK(o <= kO.k_end);
        CHECK(relperm::dkrw_dsw(sw, kW) >= 0.0);
        CHECK(relperm::dkro_dsw(sw, kO) <= 0.0);
        prev_w = w;
        prev_o = o;
    }
}

TEST_CASE("phase dispatch")
{
    CHECK(relperm::kr(Phase::water, 0.5, kW) == relperm::krw(0.5, kW));
    CHECK(relperm::kr(Phase::oil, 0.5, kO) == relperm::kro(0.5, kO));
    CHECK(relperm::dkr_dsw(Phase::oil, 0.3, kO) == relperm::dkro_dsw(0.3, kO));
}
