#pragma once

// Raw tensor files with a JSON sidecar.
//
//   <name>        payload: little-endian IEEE-754 float64, [t][k][j][i] order
//                 (no t axis for static fields), no padding, no header
//   <name>.json   sidecar: {"format": "darcyflow-tensor", "version": 1,
//                 "dtype": "float64", "byte_order": "little",
//                 "axes": ["t","k","j","i"], "dims": [...],
//                 "payload_bytes": N, "name": ..., "units": ...,
//                 "metadata": {...}}
//
// Writes go to a temporary file that is renamed into place.

#include "darcyflow/config.hpp"
#include "darcyflow/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace darcyflow::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TensorHeader {
    std::vector<std::string> axes;   // ["t","k","j","i"] or ["k","j","i"]
    std::vector<std::size_t> dims;
    std::string name;
    std::string units;
    nlohmann::json metadata = nlohmann::json::object();

    std::size_t element_count() const;
};

struct Tensor {
    TensorHeader header;
    std::vector<double> data;
};

std::filesystem::path sidecar_path(const std::filesystem::path& payload);

/// Throws FormatError on non-finite data or a header/data size mismatch and
/// std::runtime_error on I/O failure.
void write_tensor(const std::filesystem::path& path, std::span<const double> data,
                  const TensorHeader& header);

/// Throws FormatError on a corrupt or non-canonical header or a payload whose
/// length disagrees with the header dims.
Tensor read_tensor(const std::filesystem::path& path);

/// Writes `text` to `path` atomically (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

// FieldSeries and RockField bundles in a directory:
//   pressure.f64 / sat_w.f64   ([t][k][j][i], Pa / fraction; metadata has
//                               "times_s" and "grid")
//   perm.f64 / poro.f64        ([k][j][i], m^2 / fraction)

nlohmann::json grid_to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

void write_series(const std::filesystem::path& dir, const FieldSeries& series, const Grid& grid,
                  const nlohmann::json& provenance = nlohmann::json::object());

struct SeriesFile {
    FieldSeries series;
    Grid grid;
    nlohmann::json provenance;
};

SeriesFile read_series(const std::filesystem::path& dir);

void write_rock(const std::filesystem::path& dir, const RockField& rock, const Grid& grid,
                const nlohmann::json& provenance = nlohmann::json::object(),
                const std::string& prefix = "");

struct RockFile {
    RockField rock;
    Grid grid;
    nlohmann::json provenance;
};

RockFile read_rock(const std::filesystem::path& perm_path,
                   const std::filesystem::path& poro_path);

} // namespace darcyflow::io
