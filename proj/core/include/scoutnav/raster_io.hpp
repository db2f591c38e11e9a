#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scoutnav/grid.hpp"

namespace scoutnav::io {

// Text layout:
//   # scoutnav raster v1
//   width,height,cell_size,origin_x,origin_y
//   <header values>
//   <height rows of width comma-separated values, row 0 nearest origin.y>
std::string raster_to_csv(const ScalarRaster& raster);
std::string mask_to_csv(const MaskRaster& mask);
ScalarRaster raster_from_csv(std::string_view text);
MaskRaster mask_from_csv(std::string_view text);

// Binary layout, all little-endian:
//   u64 width, u64 height, f64 cell_size, f64 origin_x, f64 origin_y,
//   f64 values[width * height] (row-major, row 0 nearest origin.y)
std::vector<std::uint8_t> raster_to_binary(const ScalarRaster& raster);
ScalarRaster raster_from_binary(std::span<const std::uint8_t> bytes);

}  // namespace scoutnav::io
