#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nslit/model.hpp"

namespace nslit {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// CSV: header `t\x,<x_0>,...,<x_{nx-1}>`, then one `t,<values>` row per grid
/// time. Throws IoError, or BadGrid if the field does not match the grid.
void write_grid(const Field2D& field, const GridSpec& grid, const std::string& path);

struct GridTable {
  std::vector<double> times;
  std::vector<double> xs;
  Field2D values;
};

GridTable read_grid(const std::string& path);

enum class Palette { Intensity, Diverging };

/// Binary PPM (P6). Columns are grid times (left to right), rows are x with
/// x_max on top. Intensity maps [0, max] white-yellow-orange-red; diverging
/// maps [-max, max] blue-white-red. Diverging on an unsigned field throws
/// PaletteMismatch.
void render_heatmap(const Field2D& field, const GridSpec& grid, Palette palette,
                    const std::string& path);

struct Rgb {
  unsigned char r, g, b;
};
Rgb intensity_color(double fraction);  // fraction in [0, 1]
Rgb diverging_color(double fraction);  // fraction in [-1, 1]

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

}  // namespace nslit
