#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "wbss/csv.hpp"
#include "wbss/pgm.hpp"

using namespace wbss;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("wbss_io_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("PGM round trip is bit exact") {
  TempDir tmp;
  std::vector<std::uint8_t> px(31 * 17);
  for (std::size_t i = 0; i < px.size(); ++i)
    px[i] = static_cast<std::uint8_t>(rng::mix(5, 1, i) % 256);
  const ImagePlane img(31, 17, px);
  const fs::path file = tmp.path / "img.pgm";
  write_pgm(file, img);
  const ImagePlane back = read_pgm(file);
  CHECK(back.width() == 31);
  CHECK(back.height() == 17);
  CHECK(back.pixels() == px);

  // A second write of the read-back image reproduces the file byte for byte.
  const fs::path file2 = tmp.path / "img2.pgm";
  write_pgm(file2, back);
  std::ifstream a(file, std::ios::binary), b(file2, std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("PGM header comments are accepted") {
  TempDir tmp;
  const fs::path file = tmp.path / "c.pgm";
  std::ofstream out(file, std::ios::binary);
  out << "P5\n# a comment\n 2 # inline\n2\n255\n";
  out.write("\x01\x02\x03\x04", 4);
  out.close();
  const ImagePlane img = read_pgm(file);
  CHECK(img.width() == 2);
  CHECK(img.height() == 2);
  CHECK(img.pixels() == std::vector<std::uint8_t>{1, 2, 3, 4});
}

TEST_CASE("PGM rejects bad inputs") {
  TempDir tmp;
  CHECK_THROWS_AS(read_pgm(tmp.path / "missing.pgm"), DataError);

  const fs::path bad_magic = tmp.path / "bad.pgm";
  std::ofstream(bad_magic, std::ios::binary) << "P2\n2 2\n255\n1 2 3 4\n";
  CHECK_THROWS_AS(read_pgm(bad_magic), DataError);

  const fs::path truncated = tmp.path / "short.pgm";
  std::ofstream(truncated, std::ios::binary) << "P5\n4 4\n255\nab";
  CHECK_THROWS_AS(read_pgm(truncated), DataError);

  const fs::path maxval = tmp.path / "maxval.pgm";
  std::ofstream(maxval, std::ios::binary) << "P5\n1 1\n65535\n aa";
  CHECK_THROWS_AS(read_pgm(maxval), DataError);
}

TEST_CASE("CSV matrices round trip exactly") {
  TempDir tmp;
  Matrix m = test::uniform_matrix(4, 3, 21, -1e6, 1e6);
  m(0, 0) = 1e-17;
  m(1, 1) = -0.1;
  m(2, 2) = 3.14159265358979312;
  const fs::path file = tmp.path / "m.csv";
  write_csv_matrix(file, m);
  const Matrix back = read_csv_matrix(file);
  CHECK(back == m);
}

TEST_CASE("CSV rejects malformed files") {
  TempDir tmp;
  CHECK_THROWS_AS(read_csv_matrix(tmp.path / "missing.csv"), DataError);

  const fs::path ragged = tmp.path / "ragged.csv";
  std::ofstream(ragged) << "1,2\n3\n";
  CHECK_THROWS_AS(read_csv_matrix(ragged), DataError);

  const fs::path garbage = tmp.path / "garbage.csv";
  std::ofstream(garbage) << "1,two\n";
  CHECK_THROWS_AS(read_csv_matrix(garbage), DataError);

  const fs::path empty = tmp.path / "empty.csv";
  std::ofstream(empty) << "";
  CHECK_THROWS_AS(read_csv_matrix(empty), DataError);
}
