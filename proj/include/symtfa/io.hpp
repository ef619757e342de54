#pragma once

#include <filesystem>
#include "json.hpp"
#include <string>
#include <vector>

#include "symtfa/grid.hpp"
#include "symtfa/metaplectic.hpp"
#include "symtfa/rational_matrix.hpp"

namespace symtfa::io {

using nlohmann::json;

// Rejects malformed or incomplete input files; the CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// {"d": n, "entries": [...]} with (2n)^2 row-major entries given as "p/q" strings,
// decimal strings or integers. d is the half-dimension of the 2n x 2n matrix.
RationalMatrix matrix_from_json(const json& j);
json matrix_to_json(const RationalMatrix& m);
RationalMatrix read_matrix_file(const std::filesystem::path& path);

// {"c": [re, im], "M": [[[re, im], ...], ...], "b": [[re, im], ...]}.
GaussianState gaussian_from_json(const json& j);
json gaussian_to_json(const GaussianState& s);

// Rounded to 12 significant digits so reports are byte-stable.
double round12(double v);
json number(double v);
json complex_number(cplx v);
json matrix_numbers(const Eigen::MatrixXd& m);

// Sorted keys (nlohmann objects are ordered maps), two-space indent, trailing newline.
std::string render_json(const json& report);
// Two-column "key  value" listing of the top-level fields, nested values inline.
std::string render_table(const json& report);

enum class ArrayFormat { Csv, Binary };
ArrayFormat parse_format(const std::string& s);

// One text or binary file, fully written to a sibling temporary and renamed.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

struct PendingFile {
    std::filesystem::path path;
    std::string bytes;
};
// All files are staged as temporaries first; on any failure nothing is left behind.
void commit(const std::vector<PendingFile>& files);

std::string grid_csv(const PhaseSpaceGrid& w);
// "ATFA", u32 version, then N*N little-endian (re, im) float64 pairs in row-major x-major order.
std::string grid_binary(const PhaseSpaceGrid& w);
json grid_sidecar(const PhaseSpaceGrid& w);
inline constexpr std::uint32_t kBinaryVersion = 1;

// The array file, plus the ".json" sidecar for binary output.
std::vector<PendingFile> grid_files(const PhaseSpaceGrid& w, const std::filesystem::path& path,
                                    ArrayFormat format);
std::vector<std::filesystem::path> export_grid(const PhaseSpaceGrid& w, const std::filesystem::path& path,
                                               ArrayFormat format);
PhaseSpaceGrid read_grid_binary(const std::filesystem::path& path);

}  // namespace symtfa::io
