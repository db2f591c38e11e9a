#include "scoutnav/terrain/resistance_field.hpp"

#include <cmath>

#include "scoutnav/embedded_data.hpp"
#include "scoutnav/io.hpp"

namespace scoutnav::terrain {

ResistanceField::ResistanceField(ScalarRaster values) : raster_(std::move(values)) {
  raster_.header().validate();
  for (double v : raster_.values()) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw InvalidInput("penetration resistance must be positive everywhere");
    }
  }
}

ResistanceField load_stiffness_matrix(std::string_view csv_text, Vec2 origin, double cell_size) {
  std::vector<std::string_view> rows;
  for (auto line : io::lines(csv_text)) {
    if (!io::trim(line).empty()) {
      rows.push_back(line);
    }
  }
  if (rows.size() < 2) {
    throw InvalidInput("stiffness table needs a header and at least one row");
  }
  const auto header = io::split(rows.front(), ',');
  const std::size_t width = header.size();
  for (std::size_t i = 0; i < width; ++i) {
    if (io::trim(header[i]) != "x" + std::to_string(i)) {
      throw InvalidInput("stiffness header must read x0,x1,...");
    }
  }

  std::vector<double> values;
  values.reserve(width * (rows.size() - 1));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto fields = io::split(rows[r], ',');
    if (fields.size() != width) {
      throw InvalidInput("stiffness row " + std::to_string(r) + " has " +
                         std::to_string(fields.size()) + " entries, expected " +
                         std::to_string(width));
    }
    for (auto f : fields) {
      const double v = io::parse_double(f);
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidInput("stiffness entries must be positive, got " + std::string(io::trim(f)));
      }
      values.push_back(v);
    }
  }
  GridHeader g{origin, cell_size, width, rows.size() - 1};
  g.validate();
  return ResistanceField(ScalarRaster(g, std::move(values)));
}

std::string to_stiffness_csv(const ResistanceField& field) {
  const auto& r = field.raster();
  std::string out;
  for (std::size_t c = 0; c < r.width(); ++c) {
    out += (c ? ",x" : "x") + std::to_string(c);
  }
  out += '\n';
  for (std::size_t row = 0; row < r.height(); ++row) {
    for (std::size_t c = 0; c < r.width(); ++c) {
      if (c) out += ',';
      out += io::format_double(r.at(c, row));
    }
    out += '\n';
  }
  return out;
}

double sample_resistance(const ResistanceField& field, Vec2 p) {
  const auto cell = field.header().cell_of(p);
  if (!cell) {
    throw OutOfBounds("position (" + io::format_double(p.x) + ", " + io::format_double(p.y) +
                      ") lies outside the resistance field");
  }
  return field.raster().at(*cell);
}

ResistanceField ames_testbed_field() { return load_stiffness_matrix(embedded::kAmesStiffnessCsv); }

Treatment classify_treatment(double alpha_z) {
  if (alpha_z >= 4.0) return Treatment::kTamped;
  if (alpha_z >= 1.0) return Treatment::kRaked;
  return Treatment::kSifted;
}

const char* to_string(Treatment t) {
  switch (t) {
    case Treatment::kTamped: return "tamped";
    case Treatment::kRaked: return "raked";
    case Treatment::kSifted: return "sifted";
  }
  return "unknown";
}

}  // namespace scoutnav::terrain
