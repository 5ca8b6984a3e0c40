#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pixlog/errors.hpp"

namespace pixlog {

enum class PixelKind : uint8_t { Bool, U16, LabelPair };

const char* pixelKindName(PixelKind k);

// Packed coordinate labels. (row, col) packs to row*width + col + 1 so that
// unsigned integer max coincides with lexicographic (row-first) max and a
// single atomic-max primitive covers the label order. 0 is the null label and
// sorts below every coordinate.
inline constexpr uint32_t kNullLabel = 0;

inline uint32_t packLabel(int row, int col, int width) {
  return uint32_t(row) * uint32_t(width) + uint32_t(col) + 1u;
}

inline std::pair<int, int> unpackLabel(uint32_t label, int width) {
  assert(label != kNullLabel);
  uint32_t v = label - 1u;
  return {int(v / uint32_t(width)), int(v % uint32_t(width))};
}

// Dense row-major 2D pixel grid, origin top-left, coordinates (row, col).
// Bool images use one byte per pixel; LabelPair images store packed labels.
class ImageBuffer {
 public:
  ImageBuffer(int width, int height, PixelKind kind);

  int width() const { return width_; }
  int height() const { return height_; }
  PixelKind kind() const { return kind_; }
  size_t pixelCount() const { return size_t(width_) * size_t(height_); }
  size_t idx(int row, int col) const { return size_t(row) * size_t(width_) + size_t(col); }
  bool inBounds(int row, int col) const {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }
  bool sameShape(const ImageBuffer& o) const {
    return width_ == o.width_ && height_ == o.height_;
  }

  std::span<uint8_t> boolData();
  std::span<const uint8_t> boolData() const;
  std::span<uint16_t> u16Data();
  std::span<const uint16_t> u16Data() const;
  std::span<uint32_t> labelData();
  std::span<const uint32_t> labelData() const;

  bool boolAt(int row, int col) const { return boolData()[idx(row, col)] != 0; }
  uint16_t u16At(int row, int col) const { return u16Data()[idx(row, col)]; }
  uint32_t labelAt(int row, int col) const { return labelData()[idx(row, col)]; }

  friend bool operator==(const ImageBuffer& a, const ImageBuffer& b);

 private:
  int width_;
  int height_;
  PixelKind kind_;
  std::variant<std::vector<uint8_t>, std::vector<uint16_t>, std::vector<uint32_t>> data_;
};

using ImagePtr = std::shared_ptr<const ImageBuffer>;

// Runtime result of a task: a number, or an image plus pixel metadata.
class Value {
 public:
  Value() : v_(0.0) {}

  static Value number(double v) {
    Value r;
    r.v_ = v;
    return r;
  }
  static Value image(ImagePtr img, int components = 1) {
    Value r;
    r.v_ = std::move(img);
    r.components_ = components;
    return r;
  }
  static Value image(ImageBuffer&& buf) {
    return image(std::make_shared<const ImageBuffer>(std::move(buf)));
  }

  bool isNumber() const { return std::holds_alternative<double>(v_); }
  bool isImage() const { return !isNumber(); }
  double asNumber() const { return std::get<double>(v_); }
  const ImageBuffer& img() const { return *std::get<ImagePtr>(v_); }
  ImagePtr imgPtr() const { return std::get<ImagePtr>(v_); }
  PixelKind kind() const { return img().kind(); }
  int components() const { return components_; }

  // Short human-readable form, used by print and diagnostics.
  std::string describe() const;

 private:
  std::variant<double, ImagePtr> v_;
  int components_ = 1;
};

// Formats with up to 6 significant digits ("%.6g"), the print convention.
std::string formatNumber(double v);

}  // namespace pixlog
