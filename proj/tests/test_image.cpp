#include <doctest.h>

#include <png.h>

#include <cstdio>
#include <fstream>

#include "oracles.hpp"
#include "pixlog/png_io.hpp"
#include "pixlog/rng.hpp"

using namespace pixlog;
using testing::TempDir;

namespace {

// Test-only writers for formats loadPng must accept but savePng never emits.
void writePng(const std::filesystem::path& path, int w, int h, int depth, int colorType,
              const std::vector<uint8_t>& rowBytes) {
  FILE* f = std::fopen(path.string().c_str(), "wb");
  REQUIRE(f != nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(setjmp(png_jmpbuf(png)) == 0);
  png_init_io(png, f);
  png_set_IHDR(png, info, w, h, depth, colorType, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  size_t stride = rowBytes.size() / size_t(h);
  for (int r = 0; r < h; ++r)
    png_write_row(png, const_cast<png_bytep>(rowBytes.data() + size_t(r) * stride));
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  std::fclose(f);
}

std::string fileBytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE_BEGIN("image");

TEST_CASE("label packing is lexicographic") {
  const int w = 7;
  CHECK(packLabel(0, 0, w) == 1);
  CHECK(unpackLabel(packLabel(3, 5, w), w) == std::pair<int, int>(3, 5));
  // Row-first order: (1,0) beats (0,6).
  CHECK(packLabel(1, 0, w) > packLabel(0, 6, w));
  CHECK(kNullLabel < packLabel(0, 0, w));
}

TEST_CASE("buffer construction and guards") {
  ImageBuffer img(4, 3, PixelKind::U16);
  CHECK(img.pixelCount() == 12);
  CHECK(img.u16Data().size() == 12);
  CHECK_THROWS_AS(ImageBuffer(0, 5, PixelKind::Bool), RunError);
  CHECK_THROWS_AS(ImageBuffer(5, 0, PixelKind::Bool), RunError);
}

TEST_CASE("u16 png round trip is the identity") {
  TempDir dir;
  Rng rng(11);
  ImageBuffer img(33, 17, PixelKind::U16);
  for (auto& v : img.u16Data()) v = uint16_t(rng.below(65536));
  auto path = dir.path / "rt.png";
  savePng(path, Value::image(std::make_shared<const ImageBuffer>(img)));
  Value back = loadPng(path);
  CHECK(back.img() == img);
  CHECK(back.components() == 1);
}

TEST_CASE("bool images save as 0/65535 grayscale") {
  TempDir dir;
  SUBCASE("all-false 2x2") {
    ImageBuffer img(2, 2, PixelKind::Bool);
    auto path = dir.path / "f.png";
    savePng(path, Value::image(std::move(img)));
    Value back = loadPng(path);
    for (uint16_t v : back.img().u16Data()) CHECK(v == 0);
  }
  SUBCASE("mixed mask") {
    ImageBuffer img = testing::mask("x./.x");
    auto path = dir.path / "m.png";
    savePng(path, Value::image(std::make_shared<const ImageBuffer>(img)));
    Value back = loadPng(path);
    CHECK(back.img().u16At(0, 0) == 65535);
    CHECK(back.img().u16At(0, 1) == 0);
    CHECK(back.img().u16At(1, 0) == 0);
    CHECK(back.img().u16At(1, 1) == 65535);
  }
}

TEST_CASE("8-bit grayscale widens by 257") {
  TempDir dir;
  auto path = dir.path / "g8.png";
  writePng(path, 3, 1, 8, PNG_COLOR_TYPE_GRAY, {0, 128, 255});
  Value v = loadPng(path);
  CHECK(v.img().u16At(0, 0) == 0);
  CHECK(v.img().u16At(0, 1) == 32896);  // 128 * 257
  CHECK(v.img().u16At(0, 2) == 65535);
}

TEST_CASE("colour images keep the first channel") {
  TempDir dir;
  SUBCASE("8-bit rgb") {
    auto path = dir.path / "rgb.png";
    writePng(path, 2, 1, 8, PNG_COLOR_TYPE_RGB, {10, 200, 31, 255, 0, 0});
    Value v = loadPng(path);
    CHECK(v.img().u16At(0, 0) == 10 * 257);
    CHECK(v.img().u16At(0, 1) == 255 * 257);
  }
  SUBCASE("16-bit gray-alpha") {
    auto path = dir.path / "ga16.png";
    // Big-endian sample pairs: (0x1234, alpha), (0xffff, alpha).
    writePng(path, 2, 1, 16, PNG_COLOR_TYPE_GRAY_ALPHA,
             {0x12, 0x34, 0xff, 0xff, 0xff, 0xff, 0x00, 0x00});
    Value v = loadPng(path);
    CHECK(v.img().u16At(0, 0) == 0x1234);
    CHECK(v.img().u16At(0, 1) == 0xffff);
  }
}

TEST_CASE("unsupported inputs are rejected") {
  TempDir dir;
  SUBCASE("1-bit depth") {
    auto path = dir.path / "b1.png";
    writePng(path, 8, 1, 1, PNG_COLOR_TYPE_GRAY, {0xAA});
    CHECK_THROWS_AS(loadPng(path), RunError);
  }
  SUBCASE("not a png") {
    auto path = dir.path / "junk.png";
    std::ofstream(path) << "not a png at all";
    CHECK_THROWS_AS(loadPng(path), RunError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(loadPng(dir.path / "absent.png"), RunError); }
  SUBCASE("saving a number") {
    CHECK_THROWS_AS(savePng(dir.path / "n.png", Value::number(3)), RunError);
  }
  SUBCASE("unwritable path") {
    ImageBuffer img(1, 1, PixelKind::Bool);
    CHECK_THROWS_AS(savePng(dir.path / "nodir" / "x.png", Value::image(std::move(img))),
                    RunError);
  }
}

TEST_CASE("label images save as deterministic rgb") {
  uint8_t nullRgb[3];
  labelColor(kNullLabel, nullRgb);
  CHECK((nullRgb[0] == 0 && nullRgb[1] == 0 && nullRgb[2] == 0));
  // Distinct labels get stable, non-black colours.
  uint8_t c1[3], c1again[3], c2[3];
  labelColor(packLabel(1, 2, 16), c1);
  labelColor(packLabel(1, 2, 16), c1again);
  labelColor(packLabel(3, 4, 16), c2);
  CHECK((c1[0] == c1again[0] && c1[1] == c1again[1] && c1[2] == c1again[2]));
  CHECK((c1[0] != 0 || c1[1] != 0 || c1[2] != 0));
  CHECK((c1[0] != c2[0] || c1[1] != c2[1] || c1[2] != c2[2]));

  TempDir dir;
  ImageBuffer labels(3, 2, PixelKind::LabelPair);
  labels.labelData()[0] = packLabel(0, 1, 3);
  labels.labelData()[4] = packLabel(1, 1, 3);
  auto p1 = dir.path / "l1.png", p2 = dir.path / "l2.png";
  savePng(p1, Value::image(std::make_shared<const ImageBuffer>(labels)));
  savePng(p2, Value::image(std::make_shared<const ImageBuffer>(labels)));
  CHECK(fileBytes(p1) == fileBytes(p2));
  CHECK(!fileBytes(p1).empty());
}

TEST_CASE("number formatting uses up to 6 significant digits") {
  CHECK(formatNumber(20) == "20");
  CHECK(formatNumber(62258.25) == "62258.2");
  CHECK(formatNumber(1.0 / 3.0) == "0.333333");
  CHECK(Value::number(42).describe() == "42");
  ImageBuffer img(4, 3, PixelKind::U16);
  CHECK(Value::image(std::move(img)).describe() == "image(4x3,u16)");
}

TEST_SUITE_END();
