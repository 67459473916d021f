#pragma once

#include <complex>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace coclab {

using cplx = std::complex<double>;

// Uniform grid on [x_min, x_max) with n cells of width dx.
// Cell i covers [x_min + i*dx, x_min + (i+1)*dx); a GridFunction is the
// step function that is constant on each cell.  The origin must sit on a
// cell boundary so the split into x<0 / x>=0 is exact.
struct GridSpec {
    double x_min = 0.0;
    double x_max = 0.0;
    int n = 0;

    double dx() const { return (x_max - x_min) / static_cast<double>(n); }

    // index of the cell whose left edge is x; x must be node-aligned
    int node_index(double x) const;

    // cell index of the origin
    int origin_index() const { return node_index(0.0); }

    double node(int i) const { return x_min + i * dx(); }
    double midpoint(int i) const { return x_min + (i + 0.5) * dx(); }

    bool aligned(double x, double tol_cells = 1e-9) const;

    bool operator==(const GridSpec& o) const {
        return n == o.n && x_min == o.x_min && x_max == o.x_max;
    }
};

GridSpec build_grid(double x_min, double x_max, int n);

struct GridFunction {
    GridSpec grid;
    std::vector<cplx> values;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& g) : grid(g), values(g.n, cplx(0.0)) {}
    GridFunction(const GridSpec& g, std::vector<cplx> v);

    int size() const { return grid.n; }
    double dx() const { return grid.dx(); }

    double norm2() const;                 // dx * sum |v_i|^2
    double norm() const { return std::sqrt(norm2()); }
};

// dx * sum f_i conj(g_i); linear in f, conjugate-linear in g
cplx inner_product(const GridFunction& f, const GridFunction& g);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx c, const GridFunction& f);
GridFunction& axpy(GridFunction& y, cplx a, const GridFunction& x);  // y += a*x

// indicator of [a, b); endpoints snap to the nearest node (placement error
// at most dx/2, exact when a and b are nodes)
GridFunction indicator(const GridSpec& grid, double a, double b);

// midpoint sampling of a smooth function; inner products of sampled
// functions then agree with the continuum integrals to O(dx^2)
GridFunction sample_function(const GridSpec& grid, const std::function<cplx(double)>& f);

struct ShiftResult {
    GridFunction fn;
    double mass_lost = 0.0;  // squared norm pushed off the grid
};

// (S_t f)(x) = f(x + t) for node-aligned t, hard truncation at the edges.
// strict: throw if mass_lost exceeds tol.
ShiftResult shift(const GridFunction& f, double t, bool strict = false, double tol = 1e-12);

// zero outside [a, b); b may be +infinity
GridFunction project_interval(const GridFunction& f, double a, double b);

struct Subspace {
    std::vector<GridFunction> basis;  // orthonormal
    std::string label;
};

// checks the Gram matrix against the identity (max-entry norm)
void validate_orthonormal(const Subspace& s, double tol = 1e-10);

GridFunction project_onto(const GridFunction& f, const Subspace& s);

}  // namespace coclab
