#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wnr/region.hpp"
#include "wnr/support.hpp"

namespace wnr {

/// Matrix files: {"n": int, "entries": [[[re,im],...],...]} row-major.
ComplexMatrix parse_matrix_file(const std::filesystem::path& path);
ComplexMatrix parse_matrix_json(const std::string& text, const std::string& where);

/// Weight files: {"c": [real,...]}.
WeightVector parse_weights_file(const std::filesystem::path& path);
WeightVector parse_weights_json(const std::string& text, const std::string& where);

/// Lossless double formatting (17 significant digits).
std::string format_double(double v);

/// Write via a temp file in the same directory, then rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Boundary CSV: theta,x,y per vertex (theta = polar angle about the centroid).
std::string boundary_csv(const ConvexRegion& region);

/// Support profile CSV: theta,value,derivative.
std::string profile_csv(const SupportProfile& profile);

/// Static SVG plot: boundary polyline, axes, eigenvalue crosses, c-value dots.
std::string region_svg(const std::vector<const ConvexRegion*>& regions,
                       const std::vector<cplx>& eigenvalues, const std::vector<cplx>& cvalues,
                       const std::vector<cplx>& markers = {});

}  // namespace wnr
