#include "darcyflow/facies.hpp"
#include "darcyflow/metrics.hpp"
#include "darcyflow/plot.hpp"
#include "darcyflow/tensor_file.hpp"

#include <doctest.h>
#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>

using namespace darcyflow;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("darcyflow_io_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

FieldSeries random_series(const Grid& g, std::size_t slices, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> p(300e5, 360e5), s(0.0, 1.0);
    FieldSeries out;
    for (std::size_t t = 0; t < slices; ++t) {
        State st;
        for (std::size_t c = 0; c < g.cell_count(); ++c) {
            st.pressure.push_back(p(rng));
            st.sat_w.push_back(s(rng));
        }
        out.append(st, 4.32e6 * static_cast<double>(t));
    }
    return out;
}

io::TensorHeader header_for(std::vector<std::size_t> dims)
{
    io::TensorHeader h;
    h.axes = dims.size() == 4 ? std::vector<std::string>{"t", "k", "j", "i"}
                              : std::vector<std::string>{"k", "j", "i"};
    h.dims = std::move(dims);
    h.name = "x";
    h.units = "1";
    return h;
}

} // namespace

TEST_CASE("tensor round trip is bit identical")
{
    TempDir dir("roundtrip");
    std::vector<double> data = {0.0, -0.0, 1.0 / 3.0, std::numeric_limits<double>::denorm_min(),
                                -1e300, 6.02214076e23};
    const auto h = header_for({1, 1, 2, 3});
    io::write_tensor(dir.path / "a.f64", data, h);
    CHECK(fs::file_size(dir.path / "a.f64") == data.size() * 8);
    const auto t = io::read_tensor(dir.path / "a.f64");
    REQUIRE(t.data.size() == data.size());
    CHECK(std::memcmp(t.data.data(), data.data(), data.size() * 8) == 0);
    CHECK(t.header.dims == h.dims);
    CHECK(t.header.axes == h.axes);

    // Payload is little-endian float64 with no header.
    const std::string raw = slurp(dir.path / "a.f64");
    std::uint64_t first_bits = 0;
    for (int b = 7; b >= 0; --b)
        first_bits = (first_bits << 8) | static_cast<unsigned char>(raw[16 + b]);
    CHECK(first_bits == std::bit_cast<std::uint64_t>(1.0 / 3.0));

    const auto side = nlohmann::json::parse(slurp(io::sidecar_path(dir.path / "a.f64")));
    CHECK(side.at("format") == "darcyflow-tensor");
    CHECK(side.at("version") == 1);
    CHECK(side.at("dtype") == "float64");
    CHECK(side.at("byte_order") == "little");
    CHECK(side.at("payload_bytes") == 48);
}

TEST_CASE("truncated payload names expected and actual bytes")
{
    TempDir dir("trunc");
    const std::vector<double> data(12, 1.5);
    io::write_tensor(dir.path / "b.f64", data, header_for({3, 2, 2}));
    fs::resize_file(dir.path / "b.f64", 90);
    try {
        io::read_tensor(dir.path / "b.f64");
        FAIL("expected FormatError");
    } catch (const io::FormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("expected 96 bytes") != std::string::npos);
        CHECK(msg.find("found 90") != std::string::npos);
    }
}

TEST_CASE("non-canonical axis order is rejected")
{
    TempDir dir("axes");
    const std::vector<double> data(6, 2.0);
    io::write_tensor(dir.path / "c.f64", data, header_for({1, 2, 3}));
    auto side = nlohmann::json::parse(slurp(io::sidecar_path(dir.path / "c.f64")));
    side["axes"] = {"i", "j", "k"};
    std::ofstream(io::sidecar_path(dir.path / "c.f64")) << side.dump();
    CHECK_THROWS_WITH_AS(io::read_tensor(dir.path / "c.f64"), doctest::Contains("axis order"),
                         io::FormatError);

    io::TensorHeader bad = header_for({1, 2, 3});
    bad.axes = {"k", "i", "j"};
    CHECK_THROWS_AS(io::write_tensor(dir.path / "d.f64", data, bad), io::FormatError);
}

TEST_CASE("write rejects non-finite data and size mismatches")
{
    TempDir dir("bad");
    std::vector<double> data(6, 1.0);
    data[3] = std::nan("");
    CHECK_THROWS_AS(io::write_tensor(dir.path / "e.f64", data, header_for({1, 2, 3})),
                    io::FormatError);
    const std::vector<double> ok(5, 1.0);
    CHECK_THROWS_AS(io::write_tensor(dir.path / "e.f64", ok, header_for({1, 2, 3})),
                    io::FormatError);
    CHECK_FALSE(fs::exists(dir.path / "e.f64"));
}

TEST_CASE("corrupt sidecar is a format error")
{
    TempDir dir("corrupt");
    io::write_tensor(dir.path / "f.f64", std::vector<double>(2, 0.0), header_for({1, 1, 2}));
    std::ofstream(io::sidecar_path(dir.path / "f.f64")) << "{\"format\": ";
    CHECK_THROWS_AS(io::read_tensor(dir.path / "f.f64"), io::FormatError);
}

TEST_CASE("field series and rock bundles round trip")
{
    TempDir dir("bundle");
    const Grid g{5, 4, 3, 20.0, 20.0, 2.0};
    const FieldSeries s = random_series(g, 4, 1);
    io::write_series(dir.path, s, g, {{"seed", 1}});
    const auto back = io::read_series(dir.path);
    CHECK(back.grid == g);
    CHECK(back.series.pressure == s.pressure);
    CHECK(back.series.sat_w == s.sat_w);
    CHECK(back.series.times == s.times);
    CHECK(back.provenance.at("seed") == 1);

    const RockField r = facies::generate_facies(3, g, {}, 0.5);
    io::write_rock(dir.path, r, g, {}, "r_");
    const auto rb = io::read_rock(dir.path / "r_perm.f64", dir.path / "r_poro.f64");
    CHECK(rb.rock.perm == r.perm);
    CHECK(rb.rock.poro == r.poro);
    CHECK(rb.grid == g);
}

TEST_CASE("metrics")
{
    const std::vector<double> a{1.0, -2.0, 3.5, 0.25};
    std::vector<double> b = a;
    CHECK(metrics::mae(a, b) == 0.0);
    CHECK(metrics::mse(a, b) == 0.0);
    for (double& v : b)
        v += 1.0;
    CHECK(metrics::mae(a, b) == 1.0);
    CHECK(metrics::mse(a, b) == 1.0);
    for (double c : {-3.0, 0.5, 7.25}) {
        std::vector<double> d = a;
        for (double& v : d)
            v += c;
        CHECK(metrics::mae(a, d) == doctest::Approx(std::abs(c)).epsilon(1e-14));
        CHECK(metrics::mse(a, d) == doctest::Approx(c * c).epsilon(1e-14));
    }
    CHECK_THROWS_AS(metrics::mae(a, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(metrics::mse(std::vector<double>{}, std::vector<double>{}),
                    std::invalid_argument);

    const Grid g{3, 3, 2, 20.0, 20.0, 2.0};
    const FieldSeries x = random_series(g, 3, 2);
    const FieldSeries y = random_series(g, 3, 3);
    const auto xy = metrics::compare(x, y);
    const auto yx = metrics::compare(y, x);
    CHECK(xy.mae_pressure == yx.mae_pressure);
    CHECK(xy.mse_pressure == yx.mse_pressure);
    CHECK(xy.mae_sat_w == yx.mae_sat_w);
    CHECK(xy.mse_sat_w == yx.mse_sat_w);
    CHECK_THROWS(metrics::compare(x, random_series(g, 2, 2)));
}

TEST_CASE("heatmaps")
{
    TempDir dir("plot");
    SUBCASE("constant slice is one colour")
    {
        plot::Slice2D s{4, 3, std::vector<double>(12, 2.5)};
        plot::emit_heatmap(s, dir.path / "c.ppm", "c");
        const std::string img = slurp(dir.path / "c.ppm");
        const std::string head = "P6\n4 3\n255\n";
        REQUIRE(img.size() == head.size() + 36);
        CHECK(img.substr(0, head.size()) == head);
        for (std::size_t n = head.size(); n < img.size(); n += 3)
            CHECK(img.substr(n, 3) == img.substr(head.size(), 3));
        const auto side = nlohmann::json::parse(slurp(dir.path / "c.ppm.json"));
        CHECK(side.at("min") == 2.5);
        CHECK(side.at("max") == 2.5);
    }
    SUBCASE("same input, same bytes")
    {
        std::vector<double> v(20);
        for (std::size_t n = 0; n < v.size(); ++n)
            v[n] = std::sin(static_cast<double>(n));
        plot::Slice2D s{5, 4, v};
        plot::emit_heatmap(s, dir.path / "a.ppm");
        plot::emit_heatmap(s, dir.path / "b.ppm");
        CHECK(slurp(dir.path / "a.ppm") == slurp(dir.path / "b.ppm"));
        CHECK(slurp(dir.path / "a.ppm.json") == slurp(dir.path / "b.ppm.json"));
    }
    SUBCASE("40 x 40 layer is 40 x 40 pixels")
    {
        const Grid g{40, 40, 2, 20.0, 20.0, 2.0};
        const FieldSeries s = random_series(g, 2, 4);
        const auto layer = plot::layer(s.pressure, g, 1, 1);
        CHECK(layer.values.front() == s.pressure_at(1)[g.index(0, 0, 1)]);
        plot::emit_heatmap(layer, dir.path / "p.ppm");
        CHECK(slurp(dir.path / "p.ppm").rfind("P6\n40 40\n255\n", 0) == 0);
        CHECK_THROWS_AS(plot::layer(s.pressure, g, 2, 0), std::out_of_range);
        CHECK_THROWS_AS(plot::layer(s.pressure, g, 0, 2), std::out_of_range);
    }
    SUBCASE("non-finite values are refused")
    {
        plot::Slice2D s{1, 1, {std::nan("")}};
        CHECK_THROWS_AS(plot::emit_heatmap(s, dir.path / "n.ppm"), std::invalid_argument);
    }
}
