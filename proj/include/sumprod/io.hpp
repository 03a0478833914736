#pragma once

// Versioned text formats for point sets and matrix sets.
//
//   # pointset v1 [provenance]      # matset v1 [provenance]
//   dim <d>                         dim <d>
//   <d rationals per point>         <d lines of d rationals>
//                                   <blank line between matrices>
//
// Anything after the version tag on line 1 is a free-form single-line
// comment (used to embed the producing run's configuration).

#include <filesystem>
#include <string>
#include <string_view>

#include "sumprod/matrixset.hpp"
#include "sumprod/pointset.hpp"

namespace sumprod {

inline constexpr std::string_view kPointSetHeader = "# pointset v1";
inline constexpr std::string_view kMatrixSetHeader = "# matset v1";

std::string format_pointset(const PointSet& a, std::string_view provenance = {});
/// Throws ParseError naming the offending line; duplicate points are errors.
PointSet parse_pointset(std::string_view text);

std::string format_matrixset(const MatrixSet& a, std::string_view provenance = {});
/// Throws ParseError naming the offending line; duplicate matrices are errors.
MatrixSet parse_matrixset(std::string_view text);

enum class SetFileKind { pointset, matrixset };

/// Looks at the header line only. Throws ParseError for unknown headers.
SetFileKind detect_kind(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace sumprod
