#pragma once

// Text formats for MSR matrices, image maps, peak lists and PGM previews.
// Floats are written with 17 significant digits so that reading a file back
// reproduces the in-memory doubles exactly.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "submig/errors.hpp"
#include "submig/forward.hpp"
#include "submig/image_map.hpp"
#include "submig/imaging.hpp"

namespace submig::io {

namespace detail {

inline void set_float_format(std::ostream& os) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << std::defaultfloat;
}

inline double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw FormatError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return v;
}

inline long long parse_int(std::string_view text, std::string_view what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  return v;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

/// Value of `key=value` among header tokens.
inline std::string header_field(const std::vector<std::string>& tokens, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  for (const auto& t : tokens)
    if (t.rfind(prefix, 0) == 0) return t.substr(prefix.size());
  throw FormatError("header is missing field '" + std::string(key) + "'");
}

inline std::string next_line(std::istream& is, std::string_view what) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("unexpected end of file while reading " +
                                                 std::string(what));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

inline void expect_eof(std::istream& is, std::string_view what) {
  std::string line;
  while (std::getline(is, line))
    if (!split_ws(line).empty())
      throw FormatError(std::string(what) + ": trailing data after expected rows");
}

}  // namespace detail

// ---- MSR -------------------------------------------------------------------

inline void write_msr(std::ostream& os, const MSRMatrix& msr) {
  detail::set_float_format(os);
  const auto n = msr.entries.rows();
  os << "# msr N=" << n << " omega=" << msr.omega << " noisy=" << (msr.noisy ? 1 : 0) << '\n';
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l) os << ' ';
      os << msr.entries(j, l).real() << ' ' << msr.entries(j, l).imag();
    }
    os << '\n';
  }
}

inline MSRMatrix read_msr(std::istream& is) {
  const auto header = detail::split_ws(detail::next_line(is, "MSR header"));
  if (header.size() < 2 || header[0] != "#" || header[1] != "msr")
    throw FormatError("MSR file must start with '# msr'");
  const long long n = detail::parse_int(detail::header_field(header, "N"), "N");
  if (n < 1) throw FormatError("MSR file: N must be positive");
  const double omega = detail::parse_double(detail::header_field(header, "omega"), "omega");
  const std::string noisy = detail::header_field(header, "noisy");
  if (noisy != "0" && noisy != "1") throw FormatError("MSR file: noisy must be 0 or 1");

  MSRMatrix msr{ComplexMatrix(n, n), omega, noisy == "1"};
  for (long long j = 0; j < n; ++j) {
    const auto row = detail::split_ws(detail::next_line(is, "MSR row"));
    if (static_cast<long long>(row.size()) != 2 * n) {
      std::ostringstream os;
      os << "MSR file: row " << j << " has " << row.size() << " values, expected " << 2 * n;
      throw FormatError(os.str());
    }
    for (long long l = 0; l < n; ++l)
      msr.entries(j, l) = {detail::parse_double(row[2 * l], "MSR entry"),
                           detail::parse_double(row[2 * l + 1], "MSR entry")};
  }
  detail::expect_eof(is, "MSR file");
  return msr;
}

// ---- images ----------------------------------------------------------------

inline void write_image(std::ostream& os, const ImageMap& image) {
  detail::set_float_format(os);
  const auto& g = image.grid;
  os << "# image nx=" << g.nx << " ny=" << g.ny << " eta=" << image.eta
     << " source=" << to_string(image.source) << '\n';
  os << "# bounds " << g.x_min << ' ' << g.x_max << ' ' << g.y_min << ' ' << g.y_max << '\n';
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      if (i) os << ' ';
      os << image.at(i, j);
    }
    os << '\n';
  }
}

inline ImageMap read_image(std::istream& is) {
  const auto header = detail::split_ws(detail::next_line(is, "image header"));
  if (header.size() < 2 || header[0] != "#" || header[1] != "image")
    throw FormatError("image file must start with '# image'");
  ImageMap image;
  const long long nx = detail::parse_int(detail::header_field(header, "nx"), "nx");
  const long long ny = detail::parse_int(detail::header_field(header, "ny"), "ny");
  if (nx < 2 || ny < 2) throw FormatError("image file: nx and ny must be >= 2");
  image.eta = detail::parse_double(detail::header_field(header, "eta"), "eta");
  const std::string source = detail::header_field(header, "source");
  if (source == "numeric")
    image.source = ImageSource::kNumeric;
  else if (source == "analytic")
    image.source = ImageSource::kAnalytic;
  else
    throw FormatError("image file: unknown source '" + source + "'");

  const auto bounds = detail::split_ws(detail::next_line(is, "image bounds"));
  if (bounds.size() != 6 || bounds[0] != "#" || bounds[1] != "bounds")
    throw FormatError("image file: second line must be '# bounds xmin xmax ymin ymax'");
  image.grid = {detail::parse_double(bounds[2], "x_min"), detail::parse_double(bounds[3], "x_max"),
                detail::parse_double(bounds[4], "y_min"), detail::parse_double(bounds[5], "y_max"),
                static_cast<std::size_t>(nx), static_cast<std::size_t>(ny)};
  try {
    image.grid.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("image file: ") + e.what());
  }

  image.values.resize(image.grid.nx * image.grid.ny);
  for (std::size_t j = 0; j < image.grid.ny; ++j) {
    const auto row = detail::split_ws(detail::next_line(is, "image row"));
    if (row.size() != image.grid.nx) {
      std::ostringstream os;
      os << "image file: row " << j << " has " << row.size() << " values, expected "
         << image.grid.nx;
      throw FormatError(os.str());
    }
    for (std::size_t i = 0; i < image.grid.nx; ++i)
      image.at(i, j) = detail::parse_double(row[i], "image value");
  }
  detail::expect_eof(is, "image file");
  return image;
}

// ---- peaks / predictions ---------------------------------------------------

inline void write_peaks(std::ostream& os, const std::vector<Peak>& peaks) {
  detail::set_float_format(os);
  for (const auto& p : peaks) os << p.location.x << ' ' << p.location.y << ' ' << p.value << '\n';
}

inline void write_points(std::ostream& os, const std::vector<Vec2>& points) {
  detail::set_float_format(os);
  for (const auto& p : points) os << p.x << ' ' << p.y << '\n';
}

/// ASCII P2 preview, top row = y_max. Values scaled by the map's maximum.
inline void write_pgm(std::ostream& os, const ImageMap& image) {
  const auto& g = image.grid;
  const double peak = image.max_value();
  os << "P2\n" << g.nx << ' ' << g.ny << "\n255\n";
  for (std::size_t row = 0; row < g.ny; ++row) {
    const std::size_t j = g.ny - 1 - row;
    for (std::size_t i = 0; i < g.nx; ++i) {
      const int level =
          peak > 0.0 ? static_cast<int>(std::lround(255.0 * image.at(i, j) / peak)) : 0;
      if (i) os << ' ';
      os << std::clamp(level, 0, 255);
    }
    os << '\n';
  }
}

// ---- comparison ------------------------------------------------------------

struct ImageComparison {
  double max_abs_diff = 0.0;
  double rmse = 0.0;
  Vec2 argmax_a;
  Vec2 argmax_b;
};

inline ImageComparison compare_images(const ImageMap& a, const ImageMap& b) {
  if (!(a.grid == b.grid)) throw InvalidArgument("compare: image grids differ");
  ImageComparison c;
  double sq = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    const double d = std::abs(a.values[k] - b.values[k]);
    c.max_abs_diff = std::max(c.max_abs_diff, d);
    sq += d * d;
  }
  c.rmse = std::sqrt(sq / static_cast<double>(a.values.size()));
  c.argmax_a = a.argmax_location();
  c.argmax_b = b.argmax_location();
  return c;
}

// ---- file helpers ----------------------------------------------------------

template <typename Reader>
auto read_file(const std::string& path, Reader reader) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open '" + path + "'");
  return reader(is);
}

template <typename Writer>
void write_file(const std::string& path, Writer writer) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write '" + path + "'");
  writer(os);
  os.flush();
  if (!os) throw FormatError("write to '" + path + "' failed");
}

}  // namespace submig::io
