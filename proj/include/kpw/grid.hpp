#pragma once

#include "kpw/common.hpp"

#include <array>
#include <cstddef>

namespace kpw {

// Uniform periodic grid on [-L/2, L/2)^n, N points per axis, N even.
// Point i per axis sits at x_i = -L/2 + i*(L/N); frequency bin i maps to
// xi = 2*pi*k/L with k = i for i < N/2 and k = i - N otherwise.
struct Grid {
    int dim = 1;
    double length = 2.0 * kPi;
    int points_per_axis = 8;

    Grid() = default;
    Grid(int n, double L, int N);

    std::size_t total_points() const {
        std::size_t t = 1;
        for (int a = 0; a < dim; ++a) t *= std::size_t(points_per_axis);
        return t;
    }
    double spacing() const { return length / points_per_axis; }
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= spacing();
        return v;
    }
    double nyquist() const { return kPi * points_per_axis / length; }

    double coord(int i) const { return -0.5 * length + i * spacing(); }
    double freq(int i) const {
        const int k = (i < points_per_axis / 2) ? i : i - points_per_axis;
        return 2.0 * kPi * k / length;
    }

    // decompose flat row-major index into per-axis indices (axis 0 slowest)
    void unflatten(std::size_t flat, int* idx) const {
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = int(flat % std::size_t(points_per_axis));
            flat /= std::size_t(points_per_axis);
        }
    }

    bool operator==(const Grid& o) const {
        return dim == o.dim && length == o.length && points_per_axis == o.points_per_axis;
    }
};

struct GridFunction {
    Grid grid;
    std::vector<cplx> samples;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), samples(g.total_points()) {}
    GridFunction(const Grid& g, std::vector<cplx> s);
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b); // pointwise
GridFunction operator*(cplx c, const GridFunction& a);

Grid make_grid(int dim, double length, int points_per_axis);

} // namespace kpw
