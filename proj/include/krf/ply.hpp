#pragma once

#include "krf/geometry.hpp"

#include <filesystem>

namespace krf {

enum class PlyFormat { ascii, binary_le };

/// Reads the vertex element of a PLY file.
///
/// x, y, z may be float or double; red, green, blue (uchar) become colors
/// scaled by 1/255. Other scalar vertex properties are skipped. Elements
/// after the vertices are ignored. Errors report the byte offset.
ColoredPointCloud ply_read(const std::filesystem::path& path);

/// Writes positions as double and, when every point is colored, uchar RGB.
/// Throws InvalidInput for an empty cloud or a cloud mixing colored and
/// uncolored points.
void ply_write(const ColoredPointCloud& cloud, const std::filesystem::path& path, PlyFormat format = PlyFormat::binary_le);

}  // namespace krf
