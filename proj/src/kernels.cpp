#include "pixlog/kernels.hpp"

#include <atomic>

namespace pixlog {
namespace kernels {

namespace {

void requireBool(const ImageBuffer& a, const char* kernel) {
  if (a.kind() != PixelKind::Bool)
    throw RunError(std::string(kernel) + " expects a boolean image, got " +
                   pixelKindName(a.kind()));
}

void requireSameShape(const ImageBuffer& a, const ImageBuffer& b, const char* kernel) {
  if (!a.sameShape(b))
    throw RunError(std::string(kernel) + ": dimension mismatch (" + std::to_string(a.width()) +
                   "x" + std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                   std::to_string(b.height()) + ")");
}

}  // namespace

const char* cmpOpSymbol(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return ">.";
    case CmpOp::Ge: return ">=.";
    case CmpOp::Lt: return "<.";
    case CmpOp::Le: return "<=.";
    case CmpOp::Eq: return "=.";
  }
  return "?";
}

ImageBuffer logicalNot(const ImageBuffer& a, WorkerPool& pool) {
  requireBool(a, "!");
  ImageBuffer out(a.width(), a.height(), PixelKind::Bool);
  auto src = a.boolData();
  auto dst = out.boolData();
  pool.parallelFor(int64_t(a.pixelCount()), [&](int64_t b, int64_t e) {
    for (int64_t i = b; i < e; ++i) dst[size_t(i)] = src[size_t(i)] ? 0 : 1;
  });
  return out;
}

ImageBuffer logicalAnd(const ImageBuffer& a, const ImageBuffer& b, WorkerPool& pool) {
  requireBool(a, "&");
  requireBool(b, "&");
  requireSameShape(a, b, "&");
  ImageBuffer out(a.width(), a.height(), PixelKind::Bool);
  auto sa = a.boolData();
  auto sb = b.boolData();
  auto dst = out.boolData();
  pool.parallelFor(int64_t(a.pixelCount()), [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) dst[size_t(i)] = (sa[size_t(i)] && sb[size_t(i)]) ? 1 : 0;
  });
  return out;
}

ImageBuffer logicalOr(const ImageBuffer& a, const ImageBuffer& b, WorkerPool& pool) {
  requireBool(a, "|");
  requireBool(b, "|");
  requireSameShape(a, b, "|");
  ImageBuffer out(a.width(), a.height(), PixelKind::Bool);
  auto sa = a.boolData();
  auto sb = b.boolData();
  auto dst = out.boolData();
  pool.parallelFor(int64_t(a.pixelCount()), [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) dst[size_t(i)] = (sa[size_t(i)] || sb[size_t(i)]) ? 1 : 0;
  });
  return out;
}

ImageBuffer threshold(CmpOp op, const ImageBuffer& img, double n, WorkerPool& pool) {
  if (img.kind() != PixelKind::U16)
    throw RunError(std::string(cmpOpSymbol(op)) + " expects a numeric image, got " +
                   pixelKindName(img.kind()));
  ImageBuffer out(img.width(), img.height(), PixelKind::Bool);
  auto src = img.u16Data();
  auto dst = out.boolData();
  pool.parallelFor(int64_t(img.pixelCount()), [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      double p = double(src[size_t(i)]);
      bool r = false;
      switch (op) {
        case CmpOp::Gt: r = p > n; break;
        case CmpOp::Ge: r = p >= n; break;
        case CmpOp::Lt: r = p < n; break;
        case CmpOp::Le: r = p <= n; break;
        case CmpOp::Eq: r = p == n; break;
      }
      dst[size_t(i)] = r ? 1 : 0;
    }
  });
  return out;
}

ImageBuffer dilate(const ImageBuffer& a, WorkerPool& pool) {
  requireBool(a, "near");
  const int w = a.width(), h = a.height();
  ImageBuffer out(w, h, PixelKind::Bool);
  auto src = a.boolData();
  auto dst = out.boolData();
  pool.parallelFor(h, [&](int64_t rLo, int64_t rHi) {
    for (int r = int(rLo); r < int(rHi); ++r) {
      int r0 = r > 0 ? r - 1 : 0;
      int r1 = r < h - 1 ? r + 1 : h - 1;
      for (int c = 0; c < w; ++c) {
        int c0 = c > 0 ? c - 1 : 0;
        int c1 = c < w - 1 ? c + 1 : w - 1;
        uint8_t any = 0;
        for (int rr = r0; rr <= r1 && !any; ++rr)
          for (int cc = c0; cc <= c1; ++cc)
            if (src[size_t(rr) * w + cc]) {
              any = 1;
              break;
            }
        dst[size_t(r) * w + c] = any;
      }
    }
  });
  return out;
}

int64_t countTrue(const ImageBuffer& a, WorkerPool& pool) {
  requireBool(a, "volume");
  auto src = a.boolData();
  std::atomic<int64_t> total{0};
  pool.parallelFor(int64_t(a.pixelCount()), [&](int64_t lo, int64_t hi) {
    int64_t local = 0;
    for (int64_t i = lo; i < hi; ++i) local += src[size_t(i)] ? 1 : 0;
    total.fetch_add(local, std::memory_order_relaxed);
  });
  return total.load();
}

double arith(char op, double x, double y) {
  switch (op) {
    case '+': return x + y;
    case '-': return x - y;
    case '*': return x * y;
    case '/':
      if (y == 0.0) throw RunError("division by zero");
      return x / y;
  }
  throw RunError(std::string("unknown arithmetic operator '") + op + "'");
}

}  // namespace kernels
}  // namespace pixlog
