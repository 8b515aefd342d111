#pragma once

#include "kpw/grid.hpp"

namespace kpw {

// Unitary n-dimensional complex transforms (both directions scale by
// 1/sqrt(total)); forward-then-inverse is the identity and Parseval is exact.
// Plans are cached per (dims, direction) and guarded for concurrent use.
namespace fft {

std::vector<cplx> forward(const Grid& g, const std::vector<cplx>& in);
std::vector<cplx> inverse(const Grid& g, const std::vector<cplx>& in);

GridFunction forward(const GridFunction& f);
GridFunction inverse(const GridFunction& f);

} // namespace fft

} // namespace kpw
