#pragma once

#include "pixlog/image.hpp"
#include "pixlog/worker_pool.hpp"

namespace pixlog {
namespace kernels {

// Comparison operators of the specification language.
enum class CmpOp { Gt, Ge, Lt, Le, Eq };
const char* cmpOpSymbol(CmpOp op);

// Per-pixel boolean algebra. Binary kernels require equal dimensions.
ImageBuffer logicalNot(const ImageBuffer& a, WorkerPool& pool);
ImageBuffer logicalAnd(const ImageBuffer& a, const ImageBuffer& b, WorkerPool& pool);
ImageBuffer logicalOr(const ImageBuffer& a, const ImageBuffer& b, WorkerPool& pool);

// Bool image: pixel true iff compare(pixel, n) holds, pixel read as a real.
ImageBuffer threshold(CmpOp op, const ImageBuffer& img, double n, WorkerPool& pool);

// Moore dilation: true iff any pixel of the 3x3 window centred at p (window
// clipped at the borders, centre included) is true.
ImageBuffer dilate(const ImageBuffer& a, WorkerPool& pool);

// Count of true pixels.
int64_t countTrue(const ImageBuffer& a, WorkerPool& pool);

// Real arithmetic on numbers. Division by zero is an evaluation error.
double arith(char op, double x, double y);

}  // namespace kernels
}  // namespace pixlog
