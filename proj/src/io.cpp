#include "nslit/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nslit/error.hpp"

namespace nslit {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  return out;
}

void check_shape(const Field2D& field, const GridSpec& grid) {
  if (field.rows != grid.time_samples() || field.cols != grid.nx) {
    throw Error(ErrorCode::BadGrid, "field is " + std::to_string(field.rows) + "x" +
                                        std::to_string(field.cols) + ", grid expects " +
                                        std::to_string(grid.time_samples()) + "x" +
                                        std::to_string(grid.nx));
  }
}

double parse_cell(std::string_view s, const std::string& path, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::SyntaxError, path + ": bad number '" + std::string(s) + "'", line);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t c = line.find(',');
    out.push_back(line.substr(0, c));
    if (c == std::string_view::npos) break;
    line.remove_prefix(c + 1);
  }
  return out;
}

}  // namespace

void write_grid(const Field2D& field, const GridSpec& grid, const std::string& path) {
  check_shape(field, grid);
  std::string text = "t\\x";
  for (std::size_t k = 0; k < grid.nx; ++k) text += "," + format_double(grid.x_at(k));
  text += "\n";
  for (std::size_t r = 0; r < field.rows; ++r) {
    text += format_double(grid.t_at(r));
    for (double v : field.row(r)) {
      text += ',';
      text += format_double(v);
    }
    text += '\n';
  }
  std::ofstream out = open_out(path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

GridTable read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  GridTable t;
  std::string line;
  std::size_t n = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++n;
    const auto cells = split(line);
    if (n == 1) {
      if (cells.empty() || cells[0] != "t\\x") {
        throw Error(ErrorCode::SyntaxError, path + ": missing t\\x header", 1);
      }
      for (std::size_t i = 1; i < cells.size(); ++i) t.xs.push_back(parse_cell(cells[i], path, n));
      continue;
    }
    if (cells.size() != t.xs.size() + 1) {
      throw Error(ErrorCode::SyntaxError, path + ": ragged row", n);
    }
    t.times.push_back(parse_cell(cells[0], path, n));
    for (std::size_t i = 1; i < cells.size(); ++i) values.push_back(parse_cell(cells[i], path, n));
  }
  t.values = Field2D(t.times.size(), t.xs.size());
  t.values.values = std::move(values);
  return t;
}

Rgb intensity_color(double f) {
  struct Stop {
    double at;
    double r, g, b;
  };
  static constexpr std::array<Stop, 4> stops{
      {{0.0, 255, 255, 255}, {1.0 / 3.0, 255, 255, 0}, {2.0 / 3.0, 255, 165, 0}, {1.0, 255, 0, 0}}};
  f = std::clamp(f, 0.0, 1.0);
  std::size_t i = 0;
  while (i + 2 < stops.size() && f > stops[i + 1].at) ++i;
  const Stop& a = stops[i];
  const Stop& b = stops[i + 1];
  const double w = (f - a.at) / (b.at - a.at);
  auto mix = [w](double x, double y) {
    return static_cast<unsigned char>(std::lround(x + w * (y - x)));
  };
  return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

Rgb diverging_color(double f) {
  f = std::clamp(f, -1.0, 1.0);
  const auto fade = static_cast<unsigned char>(std::lround(255.0 * (1.0 - std::abs(f))));
  if (f >= 0.0) return {255, fade, fade};
  return {fade, fade, 255};
}

void render_heatmap(const Field2D& field, const GridSpec& grid, Palette palette,
                    const std::string& path) {
  check_shape(field, grid);
  if (palette == Palette::Diverging && !field.is_signed) {
    throw Error(ErrorCode::PaletteMismatch, "diverging palette needs a signed field");
  }
  double peak = 0.0;
  for (double v : field.values) peak = std::max(peak, std::abs(v));
  const std::size_t width = field.rows;
  const std::size_t height = field.cols;
  std::string bytes = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  const std::size_t header = bytes.size();
  bytes.resize(header + 3 * width * height);
  for (std::size_t y = 0; y < height; ++y) {
    const std::size_t k = height - 1 - y;
    for (std::size_t r = 0; r < width; ++r) {
      const double f = peak > 0.0 ? field(r, k) / peak : 0.0;
      const Rgb c = palette == Palette::Intensity ? intensity_color(f) : diverging_color(f);
      char* px = bytes.data() + header + 3 * (y * width + r);
      px[0] = static_cast<char>(c.r);
      px[1] = static_cast<char>(c.g);
      px[2] = static_cast<char>(c.b);
    }
  }
  std::ofstream out = open_out(path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path);
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

}  // namespace nslit
