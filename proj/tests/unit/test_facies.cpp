#include "darcyflow/config.hpp"
#include "darcyflow/facies.hpp"
#include "darcyflow/units.hpp"

#include <doctest.h>

#include <set>

using namespace darcyflow;
using facies::CorrelationLength;
using facies::FaciesValues;

TEST_CASE("counter generator is fixed")
{
    // Frozen outputs: a change here changes every dataset.
    CHECK(facies::counter_hash(0, 0) == 0xF5DD724FF3B8A536ull);
    CHECK(facies::counter_hash(12345, 678) == 0x750EB2EDA1340A5Aull);
    CHECK(facies::counter_hash(1, 0) == 0x88CE4B48A6765BFCull);
    CHECK(facies::counter_uniform(7, 3) == 0.040402821504209041);
    CHECK(facies::counter_hash(1, 0) != facies::counter_hash(0, 1));
    double mean = 0.0;
    for (std::uint64_t c = 0; c < 100000; ++c) {
        const double u = facies::counter_uniform(7, c);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        mean += u;
    }
    CHECK(mean / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("realization is deterministic and two-valued")
{
    const Grid g{20, 16, 6, 20.0, 20.0, 2.0};
    const FaciesValues v;
    const RockField a = facies::generate_facies(4, g, {}, 0.5);
    const RockField b = facies::generate_facies(4, g, {}, 0.5);
    CHECK(a.perm == b.perm);
    CHECK(a.poro == b.poro);
    const RockField c = facies::generate_facies(5, g, {}, 0.5);
    CHECK(a.perm != c.perm);

    std::set<double> perms(a.perm.begin(), a.perm.end());
    std::set<double> poros(a.poro.begin(), a.poro.end());
    CHECK(perms == std::set<double>{v.sand_perm, v.mud_perm});
    CHECK(poros == std::set<double>{v.sand_poro, v.mud_poro});
    for (std::size_t n = 0; n < a.perm.size(); ++n)
        CHECK((a.perm[n] == v.sand_perm) == (a.poro[n] == v.sand_poro));
    CHECK(v.sand_perm == doctest::Approx(units::md_to_m2(2000.0)).epsilon(1e-15));
    CHECK(v.mud_perm == doctest::Approx(units::md_to_m2(20.0)).epsilon(1e-15));
}

TEST_CASE("sand fraction on the full-size grid")
{
    const RockField r = facies::generate_facies(2023, reference_grid(), {}, 0.5);
    CHECK(std::abs(facies::sand_fraction_of(r) - 0.5) <= 0.02);
    const RockField q = facies::generate_facies(2023, reference_grid(), {}, 0.3);
    CHECK(std::abs(facies::sand_fraction_of(q) - 0.3) <= 0.02);
}

TEST_CASE("raising the sand fraction never turns sand into mud")
{
    const Grid g{16, 16, 4, 20.0, 20.0, 2.0};
    for (std::uint64_t seed : {1ull, 2ull, 77ull}) {
        RockField prev = facies::generate_facies(seed, g, {}, 0.05);
        for (double f = 0.1; f < 0.96; f += 0.05) {
            const RockField next = facies::generate_facies(seed, g, {}, f);
            for (std::size_t n = 0; n < next.perm.size(); ++n)
                if (prev.perm[n] == FaciesValues{}.sand_perm)
                    REQUIRE(next.perm[n] == FaciesValues{}.sand_perm);
            prev = next;
        }
    }
}

TEST_CASE("smoothing lengths are metres converted per axis")
{
    const Grid g{12, 12, 6, 20.0, 20.0, 2.0};
    // Sub-half-cell lengths mean no smoothing: the field is raw noise.
    const auto raw = facies::smoothed_noise(9, g, {5.0, 0.5});
    for (std::size_t c = 0; c < raw.size(); ++c)
        CHECK(raw[c] == facies::counter_uniform(9, c) - 0.5);
    // Smoothing shrinks the spread.
    const auto smooth = facies::smoothed_noise(9, g, {80.0, 4.0});
    double v_raw = 0.0, v_smooth = 0.0;
    for (std::size_t c = 0; c < raw.size(); ++c) {
        v_raw += raw[c] * raw[c];
        v_smooth += smooth[c] * smooth[c];
    }
    CHECK(v_smooth < 0.2 * v_raw);
}

TEST_CASE("datasets")
{
    const Grid g{8, 8, 2, 20.0, 20.0, 2.0};
    const auto one = facies::generate_dataset(40, 1, g, {}, 0.5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].perm == facies::generate_facies(40, g, {}, 0.5).perm);

    const auto a = facies::generate_dataset(100, 3, g, {}, 0.5);
    const auto b = facies::generate_dataset(103, 3, g, {}, 0.5);
    for (const auto& x : a)
        for (const auto& y : b)
            CHECK(x.perm != y.perm);

    CHECK_THROWS_AS(facies::generate_dataset(1, 0, g, {}, 0.5), std::invalid_argument);
}

TEST_CASE("full-size dataset streams one realization at a time")
{
    const Grid g{4, 4, 2, 20.0, 20.0, 2.0};
    int seen = 0;
    facies::for_each_realization(0, 2923, g, {}, 0.5, [&](std::uint64_t seed, const RockField& r) {
        CHECK(seed == static_cast<std::uint64_t>(seen));
        CHECK(r.perm.size() == g.cell_count());
        ++seen;
    });
    CHECK(seen == 2923);
}

TEST_CASE("bad arguments")
{
    const Grid g{4, 4, 2, 20.0, 20.0, 2.0};
    CHECK_THROWS_AS(facies::generate_facies(1, g, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(facies::generate_facies(1, g, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(facies::generate_facies(1, Grid{0, 4, 2, 20.0, 20.0, 2.0}, {}, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(facies::generate_facies(1, g, {-1.0, 4.0}, 0.5), std::invalid_argument);
}
