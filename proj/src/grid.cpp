#include "kpw/grid.hpp"

#include "kpw/simd/kernels.hpp"

#include <stdexcept>

namespace kpw {

Grid::Grid(int n, double L, int N) : dim(n), length(L), points_per_axis(N) {
    if (n < 1 || n > 3) throw std::invalid_argument("grid dim must be 1, 2 or 3");
    if (!(L > 0.0)) throw std::invalid_argument("grid side_length must be positive");
    if (N < 8 || N % 2 != 0)
        throw std::invalid_argument("points_per_axis must be even and at least 8");
}

Grid make_grid(int dim, double length, int points_per_axis) {
    return Grid(dim, length, points_per_axis);
}

GridFunction::GridFunction(const Grid& g, std::vector<cplx> s) : grid(g), samples(std::move(s)) {
    if (samples.size() != grid.total_points())
        throw std::invalid_argument("sample count does not match grid");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
    GridFunction r(a.grid);
    for (std::size_t i = 0; i < r.samples.size(); ++i) r.samples[i] = a.samples[i] + b.samples[i];
    return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
    GridFunction r(a.grid);
    for (std::size_t i = 0; i < r.samples.size(); ++i) r.samples[i] = a.samples[i] - b.samples[i];
    return r;
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
    GridFunction r(a.grid);
    simd::active().cmul(r.samples.data(), a.samples.data(), b.samples.data(), r.samples.size());
    return r;
}

GridFunction operator*(cplx c, const GridFunction& a) {
    GridFunction r(a.grid);
    for (std::size_t i = 0; i < r.samples.size(); ++i) r.samples[i] = c * a.samples[i];
    return r;
}

} // namespace kpw
