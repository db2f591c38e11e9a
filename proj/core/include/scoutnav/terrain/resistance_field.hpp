#pragma once

#include <string>
#include <string_view>

#include "scoutnav/grid.hpp"

namespace scoutnav::terrain {

/// Gridded ground-truth penetration resistance per unit area, N/cm^3.
class ResistanceField {
 public:
  /// Throws InvalidInput unless every value is finite and > 0.
  explicit ResistanceField(ScalarRaster values);

  const ScalarRaster& raster() const { return raster_; }
  const GridHeader& header() const { return raster_.header(); }

 private:
  ScalarRaster raster_;
};

/// Parses the ground-truth CSV: a header row "x0,x1,..." followed by one row
/// per Y band, first row nearest the origin.  Cells are `cell_size` metres.
ResistanceField load_stiffness_matrix(std::string_view csv_text, Vec2 origin = {0.0, 0.0},
                                      double cell_size = 1.0);

/// Inverse of load_stiffness_matrix (grid placement is not serialized).
std::string to_stiffness_csv(const ResistanceField& field);

/// Nearest-cell lookup, N/cm^3.  Throws OutOfBounds outside the field.
double sample_resistance(const ResistanceField& field, Vec2 p);

/// The 6 x 4 m lunar-simulant testbed matrix shipped with the library.
ResistanceField ames_testbed_field();

enum class Treatment { kTamped, kRaked, kSifted };

/// Preparation class by strength band: tamped >= 4.0, raked >= 1.0, sifted below.
Treatment classify_treatment(double alpha_z);
const char* to_string(Treatment t);

}  // namespace scoutnav::terrain
