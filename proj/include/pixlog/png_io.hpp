#pragma once

#include <filesystem>

#include "pixlog/image.hpp"

namespace pixlog {

// Loads a PNG as a single-component u16 image. 16-bit grayscale loads
// verbatim, 8-bit samples are widened by v*257, multi-channel images keep the
// first channel. Bit depths below 8 and palette images are rejected.
Value loadPng(const std::filesystem::path& path);

// Bool saves as 16-bit grayscale (true -> 65535), u16 saves verbatim,
// label images save as 8-bit RGB with one deterministic colour per label
// (null -> black). Numbers are rejected.
void savePng(const std::filesystem::path& path, const Value& v);

// Colour assigned to a packed label in saved label images.
void labelColor(uint32_t packed, uint8_t rgb[3]);

}  // namespace pixlog
