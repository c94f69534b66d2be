#include "wbss/pgm.hpp"

#include <fstream>

namespace wbss {

namespace {

// Skips whitespace and '#' comments, then parses a non-negative integer.
int read_header_int(std::istream& in, const std::filesystem::path& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) throw DataError("malformed PGM header: " + path.string());
  long value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1 << 30) throw DataError("PGM header value out of range: " + path.string());
    c = in.get();
  }
  if (c != EOF) in.unget();
  return static_cast<int>(value);
}

}  // namespace

ImagePlane read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image file: " + path.string());
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || m1 != '5') throw DataError("not a binary PGM (missing P5): " + path.string());
  const int width = read_header_int(in, path);
  const int height = read_header_int(in, path);
  const int maxval = read_header_int(in, path);
  if (maxval != 255) throw DataError("unsupported PGM maxval (expected 255): " + path.string());
  in.get();  // single whitespace byte before raster
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (in.gcount() != static_cast<std::streamsize>(px.size()))
    throw DataError("truncated PGM raster: " + path.string());
  return ImagePlane(width, height, std::move(px));
}

void write_pgm(const std::filesystem::path& path, const ImagePlane& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write image file: " + path.string());
  out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.pixels().size()));
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace wbss
