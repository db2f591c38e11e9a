#include "scoutnav/raster_io.hpp"

#include <bit>
#include <cstring>

#include "scoutnav/io.hpp"

namespace scoutnav::io {
namespace {

constexpr std::string_view kMagicLine = "# scoutnav raster v1";
constexpr std::string_view kHeaderLine = "width,height,cell_size,origin_x,origin_y";

std::string header_text(const GridHeader& g) {
  std::string out;
  out += kMagicLine;
  out += '\n';
  out += kHeaderLine;
  out += '\n';
  out += std::to_string(g.width) + ',' + std::to_string(g.height) + ',' +
         format_double(g.cell_size) + ',' + format_double(g.origin.x) + ',' +
         format_double(g.origin.y) + '\n';
  return out;
}

template <typename T, typename Format>
std::string to_csv(const Raster<T>& raster, Format format) {
  std::string out = header_text(raster.header());
  for (std::size_t row = 0; row < raster.height(); ++row) {
    for (std::size_t col = 0; col < raster.width(); ++col) {
      if (col) out += ',';
      out += format(raster.at(col, row));
    }
    out += '\n';
  }
  return out;
}

template <typename T, typename Parse>
Raster<T> from_csv(std::string_view text, Parse parse) {
  std::vector<std::string_view> rows;
  for (auto line : lines(text)) {
    if (!trim(line).empty()) rows.push_back(line);
  }
  if (rows.size() < 3 || trim(rows[0]) != kMagicLine || trim(rows[1]) != kHeaderLine) {
    throw InvalidInput("not a scoutnav raster file");
  }
  const auto h = split(rows[2], ',');
  if (h.size() != 5) {
    throw InvalidInput("raster header must have five fields");
  }
  GridHeader g;
  const auto w = parse_integer(h[0]);
  const auto hh = parse_integer(h[1]);
  if (w <= 0 || hh <= 0) {
    throw InvalidInput("raster dimensions must be positive");
  }
  g.width = static_cast<std::size_t>(w);
  g.height = static_cast<std::size_t>(hh);
  g.cell_size = parse_double(h[2]);
  g.origin = {parse_double(h[3]), parse_double(h[4])};
  g.validate();
  if (rows.size() != 3 + g.height) {
    throw InvalidInput("raster row count does not match header height");
  }
  std::vector<T> values;
  values.reserve(g.cell_count());
  for (std::size_t r = 0; r < g.height; ++r) {
    const auto fields = split(rows[3 + r], ',');
    if (fields.size() != g.width) {
      throw InvalidInput("raster row " + std::to_string(r) + " does not match header width");
    }
    for (auto f : fields) values.push_back(parse(f));
  }
  return Raster<T>(g, std::move(values));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
  return v;
}

double get_f64(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return std::bit_cast<double>(get_u64(bytes, offset));
}

}  // namespace

std::string raster_to_csv(const ScalarRaster& raster) {
  return to_csv(raster, [](double v) { return format_double(v); });
}

std::string mask_to_csv(const MaskRaster& mask) {
  return to_csv(mask, [](std::uint8_t v) { return std::to_string(static_cast<int>(v)); });
}

ScalarRaster raster_from_csv(std::string_view text) {
  return from_csv<double>(text, [](std::string_view f) { return parse_double(f); });
}

MaskRaster mask_from_csv(std::string_view text) {
  return from_csv<std::uint8_t>(text, [](std::string_view f) {
    const auto v = parse_integer(f);
    if (v != 0 && v != 1) throw InvalidInput("mask values must be 0 or 1");
    return static_cast<std::uint8_t>(v);
  });
}

std::vector<std::uint8_t> raster_to_binary(const ScalarRaster& raster) {
  const auto& g = raster.header();
  std::vector<std::uint8_t> out;
  out.reserve(40 + 8 * raster.size());
  put_u64(out, g.width);
  put_u64(out, g.height);
  put_f64(out, g.cell_size);
  put_f64(out, g.origin.x);
  put_f64(out, g.origin.y);
  for (double v : raster.values()) put_f64(out, v);
  return out;
}

ScalarRaster raster_from_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 40) {
    throw InvalidInput("binary raster shorter than its header");
  }
  GridHeader g;
  g.width = get_u64(bytes, 0);
  g.height = get_u64(bytes, 8);
  g.cell_size = get_f64(bytes, 16);
  g.origin = {get_f64(bytes, 24), get_f64(bytes, 32)};
  g.validate();
  if (bytes.size() != 40 + 8 * g.cell_count()) {
    throw InvalidInput("binary raster size does not match its header");
  }
  std::vector<double> values(g.cell_count());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = get_f64(bytes, 40 + 8 * i);
  return ScalarRaster(g, std::move(values));
}

}  // namespace scoutnav::io
