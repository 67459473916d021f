#include "coclab/blaschke.hpp"

#include <algorithm>
#include <numbers>

#include "coclab/fft.hpp"

namespace coclab {

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> z) : zeros(std::move(z)) {
    for (const cplx& lk : zeros)
        if (!(lk.real() < 0.0))
            throw std::invalid_argument("BlaschkeProduct: zeros must have negative real part");
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t j = i + 1; j < zeros.size(); ++j)
            if (std::abs(zeros[i] - zeros[j]) < 1e-12)
                throw std::invalid_argument("BlaschkeProduct: repeated zeros are not supported");
}

double BlaschkeProduct::sum_abs_re() const {
    double s = 0.0;
    for (const cplx& lk : zeros) s += std::abs(lk.real());
    return s;
}

cplx BlaschkeProduct::eval(cplx lambda) const {
    cplx prod = 1.0;
    for (const cplx& lk : zeros) {
        if (std::abs(lambda - lk) < 1e-12)
            throw std::domain_error("blaschke_eval: lambda is too close to a pole");
        prod *= (lambda + std::conj(lk)) / (lambda - lk);
    }
    return prod;
}

cplx blaschke_eval(const BlaschkeProduct& b, cplx lambda) { return b.eval(lambda); }

std::vector<cplx> BlaschkeProduct::partial_fraction_residues() const {
    std::vector<cplx> res(zeros.size());
    for (size_t j = 0; j < zeros.size(); ++j) {
        cplx c = zeros[j] + std::conj(zeros[j]);  // 2 Re zero_j
        for (size_t i = 0; i < zeros.size(); ++i) {
            if (i == j) continue;
            c *= (zeros[j] + std::conj(zeros[i])) / (zeros[j] - zeros[i]);
        }
        res[j] = c;
    }
    return res;
}

namespace detail {

AllPass::AllPass(const BlaschkeProduct& b, double dx) {
    poles.reserve(b.zeros.size());
    for (const cplx& lk : b.zeros)
        poles.push_back({std::exp(lk * dx), std::exp(cplx(0.0, lk.imag() * dx))});
}

// One factor: y_i = p y_{i-1} + sigma (conj(p) x_i - x_{i-1}).
// |H(e^{iw})| = 1, so each factor is an exact lattice isometry; the zero of
// the transfer function sits at z = 1/conj(p), which annihilates geometric
// input sequences of ratio p.
void AllPass::apply(std::vector<cplx>& x) const {
    for (const Pole& pl : poles) {
        const cplx p = pl.p, s = pl.sigma, pc = std::conj(pl.p);
        cplx yprev = 0.0, xprev = 0.0;
        for (cplx& xi : x) {
            const cplx yi = p * yprev + s * (pc * xi - xprev);
            xprev = xi;
            yprev = yi;
            xi = yi;
        }
    }
}

void AllPass::apply_adjoint(std::vector<cplx>& x) const {
    // adjoint of the window compression = compression of the adjoint:
    // run the conjugate filter on the reversed signal
    std::reverse(x.begin(), x.end());
    for (const Pole& pl : poles) {
        const cplx p = std::conj(pl.p), s = std::conj(pl.sigma), pc = pl.p;
        cplx yprev = 0.0, xprev = 0.0;
        for (cplx& xi : x) {
            const cplx yi = p * yprev + s * (pc * xi - xprev);
            xprev = xi;
            yprev = yi;
            xi = yi;
        }
    }
    std::reverse(x.begin(), x.end());
}

cplx AllPass::transfer(cplx z) const {
    cplx h = 1.0;
    const cplx zi = 1.0 / z;
    for (const Pole& pl : poles) h *= pl.sigma * (std::conj(pl.p) - zi) / (1.0 - pl.p * zi);
    return h;
}

double multiplier_defect_time_domain(const AllPass& filter, const GridFunction& f) {
    const int io = f.grid.origin_index();
    const int npos = f.grid.n - io;
    const std::size_t L = next_pow2(static_cast<std::size_t>(4 * std::max(npos, 1)));
    std::vector<cplx> buf(L, cplx(0.0));
    for (int i = 0; i < npos; ++i) buf[i] = f.values[io + i];
    std::vector<cplx> out = buf;
    filter.apply(out);
    double acc = 0.0;
    for (std::size_t i = 0; i < L; ++i) acc += std::norm(out[i] - buf[i]);
    return f.grid.dx() * acc;
}

double multiplier_defect_via_transfer(const AllPass& filter, const GridFunction& f) {
    const int io = f.grid.origin_index();
    const int npos = f.grid.n - io;
    const std::size_t L = next_pow2(static_cast<std::size_t>(4 * std::max(npos, 1)));
    std::vector<cplx> buf(L, cplx(0.0));
    for (int i = 0; i < npos; ++i) buf[i] = f.values[io + i];
    fft_pow2(buf, false);
    double acc = 0.0;
    for (std::size_t j = 0; j < L; ++j) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(L);
        const cplx h = filter.transfer(std::exp(cplx(0.0, ang)));
        acc += std::norm(h - 1.0) * std::norm(buf[j]);
    }
    return f.grid.dx() * acc / static_cast<double>(L);
}

}  // namespace detail

namespace {

void require_causal_support(const GridFunction& f, const char* who) {
    const int io = f.grid.origin_index();
    double neg = 0.0;
    for (int i = 0; i < io; ++i) neg += std::norm(f.values[i]);
    neg *= f.dx();
    const double tot = f.norm2();
    if (tot > 0.0 && neg > 1e-12 * tot)
        throw std::invalid_argument(std::string(who) + ": input has mass on x < 0");
}

}  // namespace

GridFunction apply_inner_multiplier(const BlaschkeProduct& b, const GridFunction& f,
                                    MultiplierBackend backend) {
    require_causal_support(f, "apply_inner_multiplier");
    const int io = f.grid.origin_index();
    const int npos = f.grid.n - io;

    GridFunction out(f.grid);
    if (backend == MultiplierBackend::causal_convolution) {
        std::vector<cplx> x(f.values.begin() + io, f.values.end());
        detail::AllPass(b, f.dx()).apply(x);
        std::copy(x.begin(), x.end(), out.values.begin() + io);
        return out;
    }

    // boundary_fft: zero-pad, multiply the DFT by Theta(i omega), invert
    const std::size_t L = next_pow2(static_cast<std::size_t>(4 * std::max(npos, 1)));
    std::vector<cplx> buf(L, cplx(0.0));
    for (int i = 0; i < npos; ++i) buf[i] = f.values[io + i];
    fft_pow2(buf, false);
    const double dw = 2.0 * std::numbers::pi / (static_cast<double>(L) * f.dx());
    for (std::size_t j = 0; j < L; ++j) {
        const double w = (j <= L / 2) ? j * dw : (static_cast<double>(j) - static_cast<double>(L)) * dw;
        buf[j] *= b.eval(cplx(0.0, w));
    }
    fft_pow2(buf, true);
    for (int i = 0; i < npos; ++i) out.values[io + i] = buf[i];
    return out;
}

BoundarySpectrum boundary_transform(const GridFunction& f) {
    require_causal_support(f, "boundary_transform");
    const int io = f.grid.origin_index();
    const int npos = f.grid.n - io;
    const std::size_t L = next_pow2(static_cast<std::size_t>(4 * std::max(npos, 1)));
    std::vector<cplx> buf(L, cplx(0.0));
    for (int i = 0; i < npos; ++i) buf[i] = f.values[io + i];
    fft_pow2(buf, false);
    const double dx = f.dx();
    const double dw = 2.0 * std::numbers::pi / (static_cast<double>(L) * dx);
    BoundarySpectrum s;
    s.omegas.resize(L);
    s.values.resize(L);
    for (std::size_t j = 0; j < L; ++j) {
        s.omegas[j] = (j <= L / 2) ? j * dw : (static_cast<double>(j) - static_cast<double>(L)) * dw;
        s.values[j] = dx * buf[j];
    }
    return s;
}

double parseval_defect(const GridFunction& f) {
    const BoundarySpectrum s = boundary_transform(f);
    const double dx = f.dx();
    const std::size_t L = s.values.size();
    const double dw = 2.0 * std::numbers::pi / (static_cast<double>(L) * dx);
    double lhs = 0.0;
    const int io = f.grid.origin_index();
    for (int i = io; i < f.grid.n; ++i) lhs += std::norm(f.values[i]);
    lhs *= dx;
    double rhs = 0.0;
    for (const cplx& z : s.values) rhs += std::norm(z);
    rhs *= dw / (2.0 * std::numbers::pi);
    if (lhs == 0.0) return rhs == 0.0 ? 0.0 : 1.0;
    return std::abs(lhs - rhs) / lhs;
}

cplx laplace_at(const GridFunction& f, double omega) {
    require_causal_support(f, "laplace_at");
    const int io = f.grid.origin_index();
    const double dx = f.dx();
    const cplx iw(0.0, omega);
    // integral of e^{-i w x} over one cell, times the cell value
    const cplx cell = (std::abs(omega) < 1e-14)
                          ? cplx(dx)
                          : (1.0 - std::exp(-iw * dx)) / iw;
    cplx acc = 0.0;
    cplx phase = std::exp(-iw * f.grid.node(io));
    const cplx step = std::exp(-iw * dx);
    for (int i = io; i < f.grid.n; ++i) {
        acc += f.values[i] * phase;
        phase *= step;
    }
    return cell * acc;
}

BoundarySpectrum blaschke_boundary_profile(const BlaschkeProduct& b,
                                           const std::vector<double>& omegas,
                                           double unimodular_tol) {
    BoundarySpectrum s;
    s.omegas = omegas;
    s.values.reserve(omegas.size());
    for (double w : omegas) {
        const cplx v = b.eval(cplx(0.0, w));
        if (std::abs(std::abs(v) - 1.0) > unimodular_tol)
            throw std::runtime_error("blaschke_boundary_profile: |Theta(i w)| deviates from 1");
        s.values.push_back(v);
    }
    return s;
}

B3Report asymptotic_check_b3(const BlaschkeProduct& b, double lambda_probe) {
    double maxabs = 0.0;
    for (const cplx& z : b.zeros) maxabs = std::max(maxabs, std::abs(z));
    if (lambda_probe < 100.0 * maxabs)
        throw std::invalid_argument("asymptotic_check_b3: probe must be >= 100 * max|zero|");
    B3Report r;
    r.slope_estimate = lambda_probe * (b.eval(cplx(lambda_probe, 0.0)) - 1.0);
    double sre = 0.0;
    for (const cplx& z : b.zeros) sre += z.real();
    r.predicted = 2.0 * sre;
    const double scale = std::max(std::abs(r.predicted), 1e-30);
    r.rel_deviation = std::abs(r.slope_estimate - r.predicted) / scale;
    if (b.zeros.empty()) r.rel_deviation = std::abs(r.slope_estimate);
    r.pass = r.rel_deviation <= 10.0 / lambda_probe;
    return r;
}

namespace {

// adaptive Simpson with absolute tolerance
struct Simpson {
    const std::function<double(double)>& f;
    int depth_limit = 48;
    bool converged = true;

    double run(double a, double b, double tol) {
        const double m = 0.5 * (a + b);
        return rec(a, m, b, f(a), f(m), f(b), tol, simpson(a, b, f(a), f(m), f(b)), 0);
    }

    static double simpson(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double rec(double a, double m, double b, double fa, double fm, double fb, double tol,
               double whole, int depth) {
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        if (depth >= depth_limit) {
            converged = false;
            return left + right;
        }
        if (std::abs(left + right - whole) <= 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(a, lm, m, fa, flm, fm, tol / 2.0, left, depth + 1) +
               rec(m, rm, b, fm, frm, fb, tol / 2.0, right, depth + 1);
    }
};

}  // namespace

B2Report b2_identity_check(const BlaschkeProduct& b, cplx mu, double tol) {
    if (!(mu.real() < 0.0))
        throw std::invalid_argument("b2_identity_check: need Re mu < 0");
    for (const cplx& z : b.zeros)
        if (std::abs(mu - z) < 1e-12)
            throw std::invalid_argument("b2_identity_check: mu coincides with a pole");

    // (Theta ft, ft) = integral Theta(iw) |ft(iw)|^2 dw / 2pi with
    // ft(iw) = 1/(iw - mu); split off the exactly integrable part:
    // integral |ft|^2 dw = pi / |Re mu|.
    const double nrm = std::numbers::pi / std::abs(mu.real());

    double maxabs = std::abs(mu);
    for (const cplx& z : b.zeros) maxabs = std::max(maxabs, std::abs(z));
    const double Omega = std::max(2e4, 2e4 * maxabs);

    const std::function<double(double)> fre = [&](double w) {
        const cplx ft = 1.0 / (cplx(0.0, w) - mu);
        return ((b.eval(cplx(0.0, w)) - 1.0) * std::norm(ft)).real();
    };
    const std::function<double(double)> fim = [&](double w) {
        const cplx ft = 1.0 / (cplx(0.0, w) - mu);
        return ((b.eval(cplx(0.0, w)) - 1.0) * std::norm(ft)).imag();
    };

    Simpson s1{fre}, s2{fim};
    const double qtol = 1e-10 * nrm;
    const double c = mu.imag();  // split panels at the Lorentzian peak
    const double ire = s1.run(-Omega, c, qtol) + s1.run(c, Omega, qtol);
    const double iim = s2.run(-Omega, c, qtol) + s2.run(c, Omega, qtol);
    if (!s1.converged || !s2.converged)
        throw std::runtime_error("b2_identity_check: quadrature did not converge");

    // tail bound: |Theta - 1| <= 2 sum|Re zero| / w for large w
    const double tail = 2.0 * (b.sum_abs_re() + 1e-30) / Omega / Omega * 2.0;
    if (tail > 1e-7)
        throw std::runtime_error("b2_identity_check: quadrature tail estimate too large");

    B2Report r;
    r.lhs = 1.0 + cplx(ire, iim) / nrm;
    r.rhs = b.eval(-std::conj(mu));
    r.abs_error = std::abs(r.lhs - r.rhs);
    r.pass = r.abs_error <= tol;
    return r;
}

}  // namespace coclab
