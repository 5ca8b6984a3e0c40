#include "pixlog/png_io.hpp"

#include <png.h>

#include <bit>
#include <cstdio>
#include <memory>
#include <vector>

namespace pixlog {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

[[noreturn]] void pngFail(png_structp, png_const_charp msg) {
  throw RunError(std::string("libpng: ") + msg);
}
void pngWarn(png_structp, png_const_charp) {}

constexpr bool kLittleEndian = std::endian::native == std::endian::little;

}  // namespace

Value loadPng(const std::filesystem::path& path) {
  FilePtr f(std::fopen(path.string().c_str(), "rb"));
  if (!f) throw RunError("cannot open file for reading: " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, pngFail, pngWarn);
  if (!png) throw RunError("libpng: read struct allocation failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp p;
    png_infop i;
    ~Guard() { png_destroy_read_struct(&p, &i, nullptr); }
  } guard{png, info};
  if (!info) throw RunError("libpng: info struct allocation failed");

  png_init_io(png, f.get());
  // png_read_png handles interlacing; swap 16-bit samples to host order.
  int transforms = kLittleEndian ? PNG_TRANSFORM_SWAP_ENDIAN : PNG_TRANSFORM_IDENTITY;
  png_read_png(png, info, transforms, nullptr);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int depth = png_get_bit_depth(png, info);
  int colorType = png_get_color_type(png, info);
  int channels = png_get_channels(png, info);

  if (colorType == PNG_COLOR_TYPE_PALETTE)
    throw RunError("unsupported PNG: palette images are not supported (" + path.string() + ")");
  if (depth != 8 && depth != 16)
    throw RunError("unsupported PNG bit depth " + std::to_string(depth) + " (" + path.string() +
                   ")");

  png_bytepp rows = png_get_rows(png, info);
  ImageBuffer out(int(w), int(h), PixelKind::U16);
  auto dst = out.u16Data();
  for (png_uint_32 r = 0; r < h; ++r) {
    if (depth == 16) {
      const uint16_t* src = reinterpret_cast<const uint16_t*>(rows[r]);
      for (png_uint_32 c = 0; c < w; ++c) dst[size_t(r) * w + c] = src[size_t(c) * channels];
    } else {
      const uint8_t* src = rows[r];
      for (png_uint_32 c = 0; c < w; ++c)
        dst[size_t(r) * w + c] = uint16_t(src[size_t(c) * channels]) * 257u;
    }
  }
  return Value::image(std::move(out));
}

void labelColor(uint32_t packed, uint8_t rgb[3]) {
  if (packed == kNullLabel) {
    rgb[0] = rgb[1] = rgb[2] = 0;
    return;
  }
  // lowbias32 hash.
  uint32_t h = packed;
  h ^= h >> 16;
  h *= 0x7feb352du;
  h ^= h >> 15;
  h *= 0x846ca68bu;
  h ^= h >> 16;
  rgb[0] = uint8_t(h >> 16);
  rgb[1] = uint8_t(h >> 8);
  rgb[2] = uint8_t(h);
  if (rgb[0] == 0 && rgb[1] == 0 && rgb[2] == 0) rgb[2] = 1;  // black is reserved for null
}

void savePng(const std::filesystem::path& path, const Value& v) {
  if (v.isNumber())
    throw RunError("cannot save a number as an image (use print): " + path.string());
  const ImageBuffer& img = v.img();

  FilePtr f(std::fopen(path.string().c_str(), "wb"));
  if (!f) throw RunError("cannot open file for writing: " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, pngFail, pngWarn);
  if (!png) throw RunError("libpng: write struct allocation failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp p;
    png_infop i;
    ~Guard() { png_destroy_write_struct(&p, &i); }
  } guard{png, info};
  if (!info) throw RunError("libpng: info struct allocation failed");

  png_init_io(png, f.get());
  const int w = img.width(), h = img.height();

  if (img.kind() == PixelKind::LabelPair) {
    png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<uint8_t> row(size_t(w) * 3);
    auto labels = img.labelData();
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) labelColor(labels[img.idx(r, c)], &row[size_t(c) * 3]);
      png_write_row(png, row.data());
    }
  } else {
    png_set_IHDR(png, info, w, h, 16, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (kLittleEndian) png_set_swap(png);
    std::vector<uint16_t> row(static_cast<size_t>(w));
    for (int r = 0; r < h; ++r) {
      if (img.kind() == PixelKind::U16) {
        auto src = img.u16Data();
        for (int c = 0; c < w; ++c) row[size_t(c)] = src[img.idx(r, c)];
      } else {
        auto src = img.boolData();
        for (int c = 0; c < w; ++c) row[size_t(c)] = src[img.idx(r, c)] ? 65535 : 0;
      }
      png_write_row(png, reinterpret_cast<png_bytep>(row.data()));
    }
  }
  png_write_end(png, info);
}

}  // namespace pixlog
