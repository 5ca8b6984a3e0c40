#include "pixlog/image.hpp"

#include <cstdio>

namespace pixlog {

const char* pixelKindName(PixelKind k) {
  switch (k) {
    case PixelKind::Bool: return "bool";
    case PixelKind::U16: return "u16";
    case PixelKind::LabelPair: return "label";
  }
  return "?";
}

ImageBuffer::ImageBuffer(int width, int height, PixelKind kind)
    : width_(width), height_(height), kind_(kind) {
  if (width < 1 || height < 1)
    throw RunError("image dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                   std::to_string(height));
  size_t n = pixelCount();
  switch (kind) {
    case PixelKind::Bool: data_ = std::vector<uint8_t>(n, 0); break;
    case PixelKind::U16: data_ = std::vector<uint16_t>(n, 0); break;
    case PixelKind::LabelPair:
      // Packed labels need width*height + 1 distinct values in 32 bits.
      if (n >= 0xfffffffeull)
        throw RunError("image too large for packed coordinate labels");
      data_ = std::vector<uint32_t>(n, kNullLabel);
      break;
  }
}

std::span<uint8_t> ImageBuffer::boolData() {
  assert(kind_ == PixelKind::Bool);
  return std::get<std::vector<uint8_t>>(data_);
}
std::span<const uint8_t> ImageBuffer::boolData() const {
  assert(kind_ == PixelKind::Bool);
  return std::get<std::vector<uint8_t>>(data_);
}
std::span<uint16_t> ImageBuffer::u16Data() {
  assert(kind_ == PixelKind::U16);
  return std::get<std::vector<uint16_t>>(data_);
}
std::span<const uint16_t> ImageBuffer::u16Data() const {
  assert(kind_ == PixelKind::U16);
  return std::get<std::vector<uint16_t>>(data_);
}
std::span<uint32_t> ImageBuffer::labelData() {
  assert(kind_ == PixelKind::LabelPair);
  return std::get<std::vector<uint32_t>>(data_);
}
std::span<const uint32_t> ImageBuffer::labelData() const {
  assert(kind_ == PixelKind::LabelPair);
  return std::get<std::vector<uint32_t>>(data_);
}

bool operator==(const ImageBuffer& a, const ImageBuffer& b) {
  return a.width_ == b.width_ && a.height_ == b.height_ && a.kind_ == b.kind_ &&
         a.data_ == b.data_;
}

std::string formatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string Value::describe() const {
  if (isNumber()) return formatNumber(asNumber());
  const ImageBuffer& b = img();
  return "image(" + std::to_string(b.width()) + "x" + std::to_string(b.height()) + "," +
         pixelKindName(b.kind()) + ")";
}

}  // namespace pixlog
