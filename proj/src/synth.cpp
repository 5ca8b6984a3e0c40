#include "pixlog/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pixlog/rng.hpp"

namespace pixlog {
namespace synth {

ImageKind imageKindFromName(const std::string& name) {
  if (name == "blob-noise") return ImageKind::BlobNoise;
  if (name == "spiral") return ImageKind::Spiral;
  if (name == "checker") return ImageKind::Checker;
  if (name == "concave-corner") return ImageKind::ConcaveCorner;
  throw RunError("unknown image kind '" + name +
                 "' (expected blob-noise, spiral, checker, concave-corner)");
}

const char* imageKindName(ImageKind kind) {
  switch (kind) {
    case ImageKind::BlobNoise: return "blob-noise";
    case ImageKind::Spiral: return "spiral";
    case ImageKind::Checker: return "checker";
    case ImageKind::ConcaveCorner: return "concave-corner";
  }
  return "?";
}

namespace {

// Intensity bands. The bright band clears 62258 (0.95 * 65535) and the mid
// band sits in (56360, 62258], i.e. above 0.86 * 65535 but not bright.
constexpr uint16_t kBrightLo = 63000, kBrightHi = 65535;
constexpr uint16_t kMidLo = 57500, kMidHi = 61000;
constexpr uint16_t kDarkHi = 30000;

uint16_t pick(Rng& rng, uint16_t lo, uint16_t hi) {
  return uint16_t(lo + rng.below(uint64_t(hi - lo + 1)));
}

ImageBuffer blobNoise(int w, int h, uint64_t seed, BlobNoiseInfo* info) {
  ImageBuffer img(w, h, PixelKind::U16);
  auto px = img.u16Data();
  Rng rng(seed);

  const double cr = h / 2.0, cc = w / 2.0;
  const double discR = std::max(2.0, std::min(w, h) / 6.0);
  const double haloR = discR * 2.0;

  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      size_t i = img.idx(r, c);
      double d = std::hypot(r - cr, c - cc);
      if (d <= discR) {
        px[i] = pick(rng, kBrightLo, kBrightHi);
        if (info) info->discPixels.push_back(i);
      } else if (d <= haloR) {
        px[i] = pick(rng, kMidLo, kMidHi);
        if (info) info->haloPixels.push_back(i);
      } else {
        px[i] = pick(rng, 5000, kDarkHi);
      }
    }

  // Salt specks in the mid band, kept clear of the halo so region growing
  // drops them.
  int want = std::max(3, w * h / 400);
  int placed = 0;
  for (int attempt = 0; attempt < want * 20 && placed < want; ++attempt) {
    int r = int(rng.below(uint64_t(h)));
    int c = int(rng.below(uint64_t(w)));
    if (std::hypot(r - cr, c - cc) <= haloR + 4.0) continue;
    size_t i = img.idx(r, c);
    px[i] = pick(rng, kMidLo, kMidHi);
    if (info) info->saltPixels.push_back(i);
    ++placed;
  }
  return img;
}

void drawSegment(ImageBuffer& img, int r0, int c0, int r1, int c1) {
  auto px = img.u16Data();
  int dr = std::abs(r1 - r0), dc = std::abs(c1 - c0);
  int sr = r0 < r1 ? 1 : -1, sc = c0 < c1 ? 1 : -1;
  int err = (dc > dr ? dc : -dr) / 2;
  for (;;) {
    if (img.inBounds(r0, c0)) px[img.idx(r0, c0)] = 65535;
    if (r0 == r1 && c0 == c1) break;
    int e2 = err;
    if (e2 > -dr) {
      err -= dr;
      c0 += sc;
    }
    if (e2 < dc) {
      err += dc;
      r0 += sr;
    }
  }
}

ImageBuffer spiral(int w, int h, uint64_t seed) {
  ImageBuffer img(w, h, PixelKind::U16);
  Rng rng(seed);
  const double spacing = 16.0;
  const double a = spacing / (2.0 * M_PI);
  const double cr = h / 2.0, cc = w / 2.0;
  const double maxR = std::min(w, h) / 2.0 - 4.0;
  const double phase = rng.unit() * 2.0 * M_PI;

  double theta = 0.0;
  int pr = int(std::lround(cr)), pc = int(std::lround(cc));
  while (a * theta < maxR) {
    double r = a * theta;
    int qr = int(std::lround(cr + r * std::sin(theta + phase)));
    int qc = int(std::lround(cc + r * std::cos(theta + phase)));
    drawSegment(img, pr, pc, qr, qc);
    pr = qr;
    pc = qc;
    theta += 0.5 / std::max(r, 1.0);
  }
  return img;
}

ImageBuffer checker(int w, int h) {
  ImageBuffer img(w, h, PixelKind::U16);
  auto px = img.u16Data();
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) px[img.idx(r, c)] = ((r + c) % 2 == 0) ? 65535 : 0;
  return img;
}

// L-triominoes: each tile has pixels (r0, c0..c0+len-1) and (r0..r0+len-1,
// c0), with the diagonal (r0+1, c0+1) missing. Pointer jumping alone stalls
// on this shape, so it exercises reconnect.
ImageBuffer concaveCorner(int w, int h) {
  ImageBuffer img(w, h, PixelKind::U16);
  auto px = img.u16Data();
  const int period = 8, len = 5;
  for (int r0 = 0; r0 < h; r0 += period)
    for (int c0 = 0; c0 < w; c0 += period)
      for (int k = 0; k < len; ++k) {
        if (r0 + k < h) px[img.idx(r0 + k, c0)] = 65535;
        if (c0 + k < w) px[img.idx(r0, c0 + k)] = 65535;
      }
  return img;
}

}  // namespace

ImageBuffer generate(ImageKind kind, int width, int height, uint64_t seed, BlobNoiseInfo* info) {
  switch (kind) {
    case ImageKind::BlobNoise: return blobNoise(width, height, seed, info);
    case ImageKind::Spiral: return spiral(width, height, seed);
    case ImageKind::Checker: return checker(width, height);
    case ImageKind::ConcaveCorner: return concaveCorner(width, height);
  }
  throw RunError("unknown image kind");
}

uint64_t checksum(const ImageBuffer& img) {
  uint64_t hash = 0xcbf29ce484222325ull;
  auto mix = [&](uint8_t b) {
    hash ^= b;
    hash *= 0x100000001b3ull;
  };
  switch (img.kind()) {
    case PixelKind::Bool:
      for (uint8_t v : img.boolData()) mix(v);
      break;
    case PixelKind::U16:
      for (uint16_t v : img.u16Data()) {
        mix(uint8_t(v & 0xff));
        mix(uint8_t(v >> 8));
      }
      break;
    case PixelKind::LabelPair:
      for (uint32_t v : img.labelData())
        for (int s = 0; s < 32; s += 8) mix(uint8_t(v >> s));
      break;
  }
  return hash;
}

}  // namespace synth
}  // namespace pixlog
