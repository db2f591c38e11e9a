#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "scoutnav/errors.hpp"
#include "scoutnav/grid.hpp"
#include "scoutnav/io.hpp"
#include "scoutnav/raster_io.hpp"

namespace {

using namespace scoutnav;

TEST(FormatDouble, RoundTripsRandomValues) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(io::parse_double(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(5.0), "5");
}

TEST(ParseDouble, RejectsGarbage) {
  EXPECT_THROW(io::parse_double(""), InvalidInput);
  EXPECT_THROW(io::parse_double("1.5x"), InvalidInput);
  EXPECT_THROW(io::parse_double("abc"), InvalidInput);
  EXPECT_DOUBLE_EQ(io::parse_double("  +2.5 "), 2.5);
  EXPECT_THROW(io::parse_integer("3.0"), InvalidInput);
  EXPECT_EQ(io::parse_integer(" 42"), 42);
}

TEST(Lines, StripsCarriageReturnsAndFinalNewline) {
  const auto l = io::lines("a\r\nb\n\nc\n");
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "a");
  EXPECT_EQ(l[1], "b");
  EXPECT_EQ(l[2], "");
  EXPECT_EQ(l[3], "c");
  EXPECT_EQ(io::split("1,,3", ',').size(), 3u);
}

TEST(GridHeader, HalfOpenCellsAndFarEdge) {
  const GridHeader g{{0.0, 0.0}, 1.0, 4, 6};
  EXPECT_EQ(*g.cell_of({1.0, 0.5}), (CellIndex{1, 0}));
  EXPECT_EQ(*g.cell_of({0.999, 0.5}), (CellIndex{0, 0}));
  EXPECT_EQ(*g.cell_of({4.0, 6.0}), (CellIndex{3, 5}));
  EXPECT_FALSE(g.cell_of({-0.01, 1.0}).has_value());
  EXPECT_FALSE(g.cell_of({1.0, 6.01}).has_value());
  EXPECT_FALSE(g.cell_of({std::nan(""), 1.0}).has_value());
  const Vec2 c = g.cell_center({2, 3});
  EXPECT_DOUBLE_EQ(c.x, 2.5);
  EXPECT_DOUBLE_EQ(c.y, 3.5);
}

TEST(GridHeader, ValidateAndMakeGrid) {
  EXPECT_THROW((GridHeader{{0, 0}, 0.0, 1, 1}).validate(), InvalidInput);
  EXPECT_THROW((GridHeader{{0, 0}, 1.0, 0, 1}).validate(), InvalidInput);
  const auto g = make_grid({0, 0}, {4, 6}, 0.25);
  EXPECT_EQ(g.width, 16u);
  EXPECT_EQ(g.height, 24u);
  EXPECT_THROW(make_grid({0, 0}, {1, 1}, -1.0), InvalidInput);
}

TEST(Raster, RejectsMismatchedValueCount) {
  EXPECT_THROW(ScalarRaster(GridHeader{{0, 0}, 1.0, 2, 2}, std::vector<double>(3, 0.0)), InvalidInput);
}

ScalarRaster random_raster(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  GridHeader g{{u(rng), u(rng)}, 0.37, 5, 3};
  std::vector<double> v(g.cell_count());
  for (auto& x : v) x = u(rng);
  return ScalarRaster(g, std::move(v));
}

TEST(RasterIo, CsvRoundTripIsExact) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = random_raster(s);
    EXPECT_EQ(io::raster_from_csv(io::raster_to_csv(r)), r);
  }
}

TEST(RasterIo, BinaryRoundTripIsExactAndLittleEndian) {
  const auto r = random_raster(3);
  const auto bytes = io::raster_to_binary(r);
  ASSERT_EQ(bytes.size(), 40u + 8u * r.size());
  EXPECT_EQ(bytes[0], 5u);
  EXPECT_EQ(bytes[8], 3u);
  EXPECT_EQ(io::raster_from_binary(bytes), r);
  std::vector<std::uint8_t> short_bytes(bytes.begin(), bytes.end() - 1);
  EXPECT_THROW(io::raster_from_binary(short_bytes), InvalidInput);
}

TEST(RasterIo, MaskRoundTripAndValidation) {
  MaskRaster m(GridHeader{{0, 0}, 1.0, 3, 2}, std::vector<std::uint8_t>{0, 1, 1, 0, 0, 1});
  EXPECT_EQ(io::mask_from_csv(io::mask_to_csv(m)), m);
  std::string bad = io::mask_to_csv(m);
  bad.replace(bad.rfind('1'), 1, "2");
  EXPECT_THROW(io::mask_from_csv(bad), InvalidInput);
}

TEST(RasterIo, RejectsMalformedText) {
  const auto good = io::raster_to_csv(random_raster(1));
  EXPECT_THROW(io::raster_from_csv("hello"), InvalidInput);
  auto missing_row = good.substr(0, good.rfind('\n', good.size() - 2) + 1);
  EXPECT_THROW(io::raster_from_csv(missing_row), InvalidInput);
  auto extra_col = good;
  extra_col.insert(extra_col.size() - 1, ",1");
  EXPECT_THROW(io::raster_from_csv(extra_col), InvalidInput);
}

TEST(Files, WriteThenReadBack) {
  const auto dir = std::filesystem::temp_directory_path() / "scoutnav_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "a.txt";
  io::write_file(path, "payload\n");
  EXPECT_EQ(io::read_file(path), "payload\n");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  EXPECT_THROW(io::read_file(dir / "missing.txt"), InvalidInput);
  std::filesystem::remove_all(dir);
}

}  // namespace
