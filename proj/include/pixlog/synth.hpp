#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pixlog/image.hpp"

namespace pixlog {
namespace synth {

enum class ImageKind { BlobNoise, Spiral, Checker, ConcaveCorner };

ImageKind imageKindFromName(const std::string& name);  // throws RunError on unknown
const char* imageKindName(ImageKind kind);

// blob-noise fixtures expose where the interesting regions ended up.
struct BlobNoiseInfo {
  std::vector<size_t> discPixels;   // values above the bright threshold
  std::vector<size_t> haloPixels;   // mid band, in contact with the disc
  std::vector<size_t> saltPixels;   // mid band specks away from the blob
};

// Deterministic 16-bit test images:
//   blob-noise     bright disc inside a mid-intensity halo plus isolated
//                  mid-intensity salt specks on a dark background
//   spiral         one long connected curve (single component)
//   checker        alternating 65535/0, (0,0) bright
//   concave-corner L-shaped triominoes tiled over the image
ImageBuffer generate(ImageKind kind, int width, int height, uint64_t seed,
                     BlobNoiseInfo* info = nullptr);

// FNV-1a over the little-endian pixel bytes; golden values for fixtures.
uint64_t checksum(const ImageBuffer& img);

}  // namespace synth
}  // namespace pixlog
