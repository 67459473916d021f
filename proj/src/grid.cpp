#include "coclab/grid.hpp"

#include <algorithm>

namespace coclab {

int GridSpec::node_index(double x) const {
    const double pos = (x - x_min) / dx();
    const int i = static_cast<int>(std::lround(pos));
    if (std::abs(pos - i) > 1e-9 * std::max(1.0, std::abs(pos))) {
        throw std::invalid_argument("coordinate " + std::to_string(x) +
                                    " is not aligned to a grid node");
    }
    return i;
}

bool GridSpec::aligned(double x, double tol_cells) const {
    const double pos = (x - x_min) / dx();
    return std::abs(pos - std::lround(pos)) <= tol_cells * std::max(1.0, std::abs(pos));
}

GridSpec build_grid(double x_min, double x_max, int n) {
    if (!(x_max > x_min)) throw std::invalid_argument("build_grid: x_max must exceed x_min");
    if (n < 8) throw std::invalid_argument("build_grid: need at least 8 cells");
    GridSpec g{x_min, x_max, n};
    const double pos = -x_min / g.dx();
    if (std::abs(pos - std::lround(pos)) > 1e-9 * std::max(1.0, std::abs(pos)))
        throw std::invalid_argument("build_grid: origin misalignment, 0 must be a grid node");
    const long io = std::lround(pos);
    if (io < 0 || io > n)
        throw std::invalid_argument("build_grid: origin lies outside the grid");
    return g;
}

GridFunction::GridFunction(const GridSpec& g, std::vector<cplx> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n)
        throw std::invalid_argument("GridFunction: value count does not match grid");
    for (const cplx& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("GridFunction: non-finite sample");
}

double GridFunction::norm2() const {
    double s = 0.0;
    for (const cplx& z : values) s += std::norm(z);
    return dx() * s;
}

cplx inner_product(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("inner_product: grid mismatch");
    cplx s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
    return f.dx() * s;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
    GridFunction r = a;
    for (int i = 0; i < r.size(); ++i) r.values[i] += b.values[i];
    return r;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("grid mismatch");
    GridFunction r = a;
    for (int i = 0; i < r.size(); ++i) r.values[i] -= b.values[i];
    return r;
}

GridFunction operator*(cplx c, const GridFunction& f) {
    GridFunction r = f;
    for (auto& z : r.values) z *= c;
    return r;
}

GridFunction& axpy(GridFunction& y, cplx a, const GridFunction& x) {
    if (!(y.grid == x.grid)) throw std::invalid_argument("grid mismatch");
    for (int i = 0; i < y.size(); ++i) y.values[i] += a * x.values[i];
    return y;
}

GridFunction indicator(const GridSpec& grid, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("indicator: need a < b");
    if (a < grid.x_min - 0.5 * grid.dx() || b > grid.x_max + 0.5 * grid.dx())
        throw std::domain_error("indicator: interval outside grid domain");
    const int ia = static_cast<int>(std::lround((a - grid.x_min) / grid.dx()));
    const int ib = static_cast<int>(std::lround((b - grid.x_min) / grid.dx()));
    GridFunction f(grid);
    for (int i = std::max(ia, 0); i < std::min(ib, grid.n); ++i) f.values[i] = 1.0;
    return f;
}

GridFunction sample_function(const GridSpec& grid, const std::function<cplx(double)>& fn) {
    GridFunction f(grid);
    for (int i = 0; i < grid.n; ++i) f.values[i] = fn(grid.midpoint(i));
    return f;
}

ShiftResult shift(const GridFunction& f, double t, bool strict, double tol) {
    const double dx = f.dx();
    const double pos = t / dx;
    const long m = std::lround(pos);
    if (std::abs(pos - m) > 1e-9 * std::max(1.0, std::abs(pos)))
        throw std::invalid_argument("shift: t is not a whole number of cells");
    ShiftResult r{GridFunction(f.grid), 0.0};
    const int n = f.size();
    for (int i = 0; i < n; ++i) {
        const long j = i + m;  // (S_t f)(x_i) = f(x_i + t)
        if (j >= 0 && j < n) r.fn.values[i] = f.values[j];
    }
    // mass that fell off either edge
    double kept = 0.0;
    for (const cplx& z : r.fn.values) kept += std::norm(z);
    double all = 0.0;
    for (const cplx& z : f.values) all += std::norm(z);
    r.mass_lost = dx * std::max(0.0, all - kept);
    if (strict && r.mass_lost > tol)
        throw std::runtime_error("shift: truncated mass " + std::to_string(r.mass_lost) +
                                 " exceeds tolerance in strict mode");
    return r;
}

GridFunction project_interval(const GridFunction& f, double a, double b) {
    const GridSpec& g = f.grid;
    const double dx = g.dx();
    if (!(a < b)) throw std::invalid_argument("project_interval: need a < b");
    long ia = 0, ib = g.n;
    if (!std::isinf(a) && a > g.x_min) {
        if (a >= g.x_max) {
            ia = g.n;
        } else {
            const double pa = (a - g.x_min) / dx;
            ia = std::lround(pa);
            if (std::abs(pa - ia) > 1e-9 * std::max(1.0, std::abs(pa)))
                throw std::invalid_argument("project_interval: edge a is not node-aligned");
        }
    }
    if (!std::isinf(b) && b < g.x_max) {
        if (b <= g.x_min) {
            ib = 0;
        } else {
            const double pb = (b - g.x_min) / dx;
            ib = std::lround(pb);
            if (std::abs(pb - ib) > 1e-9 * std::max(1.0, std::abs(pb)))
                throw std::invalid_argument("project_interval: edge b is not node-aligned");
        }
    }
    GridFunction r(g);
    for (long i = std::max(ia, 0L); i < std::min(ib, static_cast<long>(g.n)); ++i)
        r.values[i] = f.values[i];
    return r;
}

void validate_orthonormal(const Subspace& s, double tol) {
    for (size_t k = 0; k < s.basis.size(); ++k)
        for (size_t l = 0; l <= k; ++l) {
            const cplx gkl = inner_product(s.basis[k], s.basis[l]);
            const double target = (k == l) ? 1.0 : 0.0;
            if (std::abs(gkl - target) > tol)
                throw std::runtime_error("subspace '" + s.label +
                                         "': basis is not orthonormal (Gram defect " +
                                         std::to_string(std::abs(gkl - target)) + ")");
        }
}

GridFunction project_onto(const GridFunction& f, const Subspace& s) {
    validate_orthonormal(s);
    GridFunction r(f.grid);
    for (const GridFunction& g : s.basis) axpy(r, inner_product(f, g), g);
    return r;
}

}  // namespace coclab
