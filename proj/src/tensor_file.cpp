#include "darcyflow/tensor_file.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace darcyflow::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kFormat = "darcyflow-tensor";
constexpr int kVersion = 1;

const std::vector<std::string> kSeriesAxes{"t", "k", "j", "i"};
const std::vector<std::string> kStaticAxes{"k", "j", "i"};

std::uint64_t byteswap64(std::uint64_t v)
{
    v = ((v & 0x00FF00FF00FF00FFULL) << 8) | ((v >> 8) & 0x00FF00FF00FF00FFULL);
    v = ((v & 0x0000FFFF0000FFFFULL) << 16) | ((v >> 16) & 0x0000FFFF0000FFFFULL);
    return (v << 32) | (v >> 32);
}

fs::path temp_path(const fs::path& target)
{
    fs::path tmp = target;
    tmp += ".tmp-" + std::to_string(::getpid());
    return tmp;
}

void write_bytes_atomic(const fs::path& path, const char* bytes, std::size_t size)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = temp_path(path);
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(bytes, static_cast<std::streamsize>(size));
        if (!os)
            throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace

std::size_t TensorHeader::element_count() const
{
    std::size_t n = 1;
    for (auto d : dims)
        n *= d;
    return n;
}

fs::path sidecar_path(const fs::path& payload)
{
    fs::path p = payload;
    p += ".json";
    return p;
}

void write_text_atomic(const fs::path& path, const std::string& text)
{
    write_bytes_atomic(path, text.data(), text.size());
}

void write_tensor(const fs::path& path, std::span<const double> data, const TensorHeader& header)
{
    if (header.axes != kSeriesAxes && header.axes != kStaticAxes)
        throw FormatError("write_tensor: axis order must be [t][k][j][i] or [k][j][i]");
    if (header.dims.size() != header.axes.size())
        throw FormatError("write_tensor: dims and axes disagree");
    if (header.element_count() != data.size())
        throw FormatError("write_tensor: header describes " +
                          std::to_string(header.element_count()) + " elements, data has " +
                          std::to_string(data.size()));
    for (double v : data)
        if (!std::isfinite(v))
            throw FormatError("write_tensor: non-finite value in " + header.name);

    std::vector<std::uint64_t> words(data.size());
    std::memcpy(words.data(), data.data(), data.size() * sizeof(double));
    if constexpr (std::endian::native == std::endian::big)
        for (auto& w : words)
            w = byteswap64(w);

    json side;
    side["format"] = kFormat;
    side["version"] = kVersion;
    side["dtype"] = "float64";
    side["byte_order"] = "little";
    side["axes"] = header.axes;
    side["dims"] = header.dims;
    side["payload_bytes"] = data.size() * sizeof(double);
    side["name"] = header.name;
    side["units"] = header.units;
    side["metadata"] = header.metadata;

    write_bytes_atomic(path, reinterpret_cast<const char*>(words.data()),
                       words.size() * sizeof(std::uint64_t));
    write_text_atomic(sidecar_path(path), side.dump(2) + "\n");
}

Tensor read_tensor(const fs::path& path)
{
    const fs::path side_path = sidecar_path(path);
    std::ifstream is(side_path);
    if (!is)
        throw std::runtime_error("cannot open tensor header " + side_path.string());
    json side;
    try {
        is >> side;
    } catch (const json::exception& e) {
        throw FormatError("corrupt tensor header " + side_path.string() + ": " + e.what());
    }

    Tensor t;
    try {
        if (side.at("format").get<std::string>() != kFormat)
            throw FormatError("unknown tensor format in " + side_path.string());
        if (side.at("version").get<int>() != kVersion)
            throw FormatError("unsupported tensor version in " + side_path.string());
        if (side.at("dtype").get<std::string>() != "float64")
            throw FormatError("unsupported dtype in " + side_path.string());
        if (side.at("byte_order").get<std::string>() != "little")
            throw FormatError("unsupported byte order in " + side_path.string());
        t.header.axes = side.at("axes").get<std::vector<std::string>>();
        t.header.dims = side.at("dims").get<std::vector<std::size_t>>();
        t.header.name = side.value("name", "");
        t.header.units = side.value("units", "");
        t.header.metadata = side.value("metadata", json::object());
    } catch (const json::exception& e) {
        throw FormatError("corrupt tensor header " + side_path.string() + ": " + e.what());
    }
    if (t.header.axes != kSeriesAxes && t.header.axes != kStaticAxes)
        throw FormatError("tensor " + path.string() +
                          ": axis order must be [t][k][j][i] or [k][j][i], got " +
                          json(t.header.axes).dump());
    if (t.header.dims.size() != t.header.axes.size())
        throw FormatError("tensor " + path.string() + ": dims and axes disagree");

    const std::size_t expected = t.header.element_count() * sizeof(double);
    if (side.contains("payload_bytes") && side["payload_bytes"].get<std::size_t>() != expected)
        throw FormatError("tensor " + path.string() + ": payload_bytes disagrees with dims");
    std::error_code ec;
    const auto actual = fs::file_size(path, ec);
    if (ec)
        throw std::runtime_error("cannot stat tensor payload " + path.string());
    if (actual != expected)
        throw FormatError("tensor " + path.string() + ": length mismatch, expected " +
                          std::to_string(expected) + " bytes, found " + std::to_string(actual));

    std::vector<std::uint64_t> words(t.header.element_count());
    std::ifstream ps(path, std::ios::binary);
    if (!ps.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(expected)))
        throw std::runtime_error("read failed for " + path.string());
    if constexpr (std::endian::native == std::endian::big)
        for (auto& w : words)
            w = byteswap64(w);
    t.data.resize(words.size());
    std::memcpy(t.data.data(), words.data(), expected);
    return t;
}

json grid_to_json(const Grid& g)
{
    return json{{"nx", g.nx}, {"ny", g.ny}, {"nz", g.nz},
                {"dx_m", g.dx}, {"dy_m", g.dy}, {"dz_m", g.dz}};
}

Grid grid_from_json(const json& j)
{
    Grid g;
    g.nx = j.at("nx").get<int>();
    g.ny = j.at("ny").get<int>();
    g.nz = j.at("nz").get<int>();
    g.dx = j.at("dx_m").get<double>();
    g.dy = j.at("dy_m").get<double>();
    g.dz = j.at("dz_m").get<double>();
    return g;
}

void write_series(const fs::path& dir, const FieldSeries& series, const Grid& grid,
                  const json& provenance)
{
    if (series.cells != grid.cell_count())
        throw FormatError("write_series: series does not match grid");
    json meta;
    meta["grid"] = grid_to_json(grid);
    meta["times_s"] = series.times;
    meta["provenance"] = provenance;
    const std::vector<std::size_t> dims{series.slice_count(), static_cast<std::size_t>(grid.nz),
                                        static_cast<std::size_t>(grid.ny),
                                        static_cast<std::size_t>(grid.nx)};
    write_tensor(dir / "pressure.f64", series.pressure,
                 TensorHeader{kSeriesAxes, dims, "pressure", "Pa", meta});
    write_tensor(dir / "sat_w.f64", series.sat_w,
                 TensorHeader{kSeriesAxes, dims, "sat_w", "fraction", meta});
}

namespace {

Grid grid_of(const Tensor& t, const fs::path& path)
{
    if (!t.header.metadata.contains("grid"))
        throw FormatError(path.string() + ": metadata lacks grid");
    Grid g = grid_from_json(t.header.metadata["grid"]);
    const auto& d = t.header.dims;
    const std::size_t off = d.size() == 4 ? 1 : 0;
    if (d[off] != static_cast<std::size_t>(g.nz) || d[off + 1] != static_cast<std::size_t>(g.ny) ||
        d[off + 2] != static_cast<std::size_t>(g.nx))
        throw FormatError(path.string() + ": dims disagree with grid metadata");
    return g;
}

} // namespace

SeriesFile read_series(const fs::path& dir)
{
    const Tensor p = read_tensor(dir / "pressure.f64");
    const Tensor s = read_tensor(dir / "sat_w.f64");
    if (p.header.axes != kSeriesAxes || s.header.axes != kSeriesAxes)
        throw FormatError(dir.string() + ": series tensors need a t axis");
    if (p.header.dims != s.header.dims)
        throw FormatError(dir.string() + ": pressure and saturation shapes differ");

    SeriesFile out;
    out.grid = grid_of(p, dir / "pressure.f64");
    const auto times = p.header.metadata.value("times_s", std::vector<double>{});
    if (times.size() != p.header.dims[0])
        throw FormatError(dir.string() + ": times_s length disagrees with t dimension");
    out.series.cells = out.grid.cell_count();
    out.series.pressure = p.data;
    out.series.sat_w = s.data;
    out.series.times = times;
    out.provenance = p.header.metadata.value("provenance", json::object());
    return out;
}

void write_rock(const fs::path& dir, const RockField& rock, const Grid& grid,
                const json& provenance, const std::string& prefix)
{
    json meta;
    meta["grid"] = grid_to_json(grid);
    meta["provenance"] = provenance;
    const std::vector<std::size_t> dims{static_cast<std::size_t>(grid.nz),
                                        static_cast<std::size_t>(grid.ny),
                                        static_cast<std::size_t>(grid.nx)};
    write_tensor(dir / (prefix + "perm.f64"), rock.perm,
                 TensorHeader{kStaticAxes, dims, "perm", "m2", meta});
    write_tensor(dir / (prefix + "poro.f64"), rock.poro,
                 TensorHeader{kStaticAxes, dims, "poro", "fraction", meta});
}

RockFile read_rock(const fs::path& perm_path, const fs::path& poro_path)
{
    const Tensor k = read_tensor(perm_path);
    const Tensor phi = read_tensor(poro_path);
    if (k.header.axes != kStaticAxes || phi.header.axes != kStaticAxes)
        throw FormatError("rock tensors must be static [k][j][i] fields");
    if (k.header.dims != phi.header.dims)
        throw FormatError("permeability and porosity shapes differ");
    RockFile out;
    out.grid = grid_of(k, perm_path);
    out.rock.perm = k.data;
    out.rock.poro = phi.data;
    out.provenance = k.header.metadata.value("provenance", json::object());
    return out;
}

} // namespace darcyflow::io
