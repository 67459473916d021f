#include "coclab/hs.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numbers>

namespace coclab {

RieszExponentialBasis make_riesz_basis(const GridSpec& grid, double t, int K, bool include_k0) {
    if (!(t > 0.0) || K < 1) throw std::invalid_argument("make_riesz_basis: need t > 0, K >= 1");
    RieszExponentialBasis rb;
    rb.t = t;
    rb.k_range = K;
    rb.include_k0 = include_k0;
    if (include_k0) rb.ks.push_back(0);
    for (int k = 1; k <= K; ++k) {
        rb.ks.push_back(k);
        rb.ks.push_back(-k);
    }
    for (int k : rb.ks) {
        const cplx mu = (k == 0)
                            ? cplx(-0.5, 0.0)
                            : cplx(-0.5 / std::abs(k), 2.0 * std::numbers::pi * k / t);
        rb.mu.push_back(mu);
        rb.samples.push_back(sample_function(grid, [&](double x) -> cplx {
            return (x >= 0.0 && x < t) ? std::exp(mu * x) : cplx(0.0);
        }));
    }
    // frame health: smallest singular value of the normalized Gram matrix
    const int n = static_cast<int>(rb.samples.size());
    Eigen::MatrixXcd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            G(i, j) = inner_product(rb.samples[i], rb.samples[j]) /
                      (rb.samples[i].norm() * rb.samples[j].norm());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    rb.frame_lower_bound = std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
    return rb;
}

namespace {

GridSpec refined_grid(const GridSpec& base, int basis_dim) {
    if (basis_dim < 8 || basis_dim > base.n)
        throw std::invalid_argument("hs_defect_norm: basis_dim out of range");
    const double ratio = (base.x_max - base.x_min) / base.x_max;
    const double nd = basis_dim * ratio;
    const int n = static_cast<int>(std::lround(nd));
    if (std::abs(nd - n) > 1e-9)
        throw std::invalid_argument("hs_defect_norm: basis_dim incompatible with grid aspect");
    return build_grid(base.x_min, base.x_max, n);
}

}  // namespace

HsReport hs_defect_norm(const MarkovianCocycle& w, double t, int basis_dim) {
    if (!(t > 0.0)) throw std::invalid_argument("hs_defect_norm: need t > 0");
    const GridSpec g = refined_grid(w.grid, basis_dim);
    const ModelSpace ms = orthonormalize_exponentials(w.model.blaschke, g);
    const int np = g.n - g.origin_index();
    const int m = static_cast<int>(std::lround(t / g.dx()));
    const int E = ms.ext_size();

    HsReport rep;
    rep.t = t;
    rep.basis_dim = np;
    double r1 = 0.0, r2 = 0.0;
    for (int j = 0; j < np; ++j) {
        std::vector<cplx> u(E, cplx(0.0));
        u[j] = 1.0;
        const std::vector<cplx> out = detail::cocycle_past_apply(ms, w.variant, t, m, u);
        double term = 0.0;
        for (int i = 0; i < np; ++i) term += std::norm(out[i] - u[i]);
        if (j < m) {
            r2 += term;
            rep.partial_sums_r2.push_back(r2);
        } else {
            r1 += term;
            rep.partial_sums_r1.push_back(r1);
        }
        rep.total += term;
    }
    return rep;
}

HsReport series_r1_r2(const MarkovianCocycle& w, double t, int K) {
    if (!(t > 0.0)) throw std::invalid_argument("series_r1_r2: need t > 0");
    const ModelSpace& ms = w.model;
    const GridSpec& g = w.grid;
    const int np = g.n - g.origin_index();
    const int m = static_cast<int>(std::lround(t / g.dx()));
    const double dx = g.dx();

    HsReport rep;
    rep.t = t;
    rep.basis_dim = np;

    // literal rotation-defect series over the cell basis:
    //   || (R_t Pvp S_t - Pvp) P_[t,inf) eta_j ||^2
    const int N = ms.dim();
    double r1 = 0.0;
    for (int j = 0; j < np; ++j) {
        double term = 0.0;
        if (j >= m) {
            for (int k = 0; k < N; ++k) {
                const cplx a = std::exp(cplx(0.0, ms.frequencies[k] * t)) *
                               std::conj(ms.ext_basis()[k][j - m]);
                const cplx b = std::conj(ms.ext_basis()[k][j]);
                term += dx * std::norm(a - b);
            }
        }
        r1 += term;
        rep.partial_sums_r1.push_back(r1);
    }

    // Multiplier-defect series over the Riesz exponentials.  The family is
    // sampled on an internally refined lattice so the K-th mode stays at or
    // below half Nyquist; each term is cross-checked against the transform
    // side (Parseval with the transfer function of the same filter).
    GridSpec gx = g;
    while (2.0 * std::numbers::pi * K / t > 0.5 * std::numbers::pi / gx.dx() &&
           gx.n < (1 << 20))
        gx = build_grid(gx.x_min, gx.x_max, 2 * gx.n);
    const RieszExponentialBasis rb = make_riesz_basis(gx, t, K, true);
    if (rb.frame_lower_bound < 0.1)
        throw std::runtime_error("series_r1_r2: Riesz family is ill-conditioned on this grid");
    const detail::AllPass filter(ms.blaschke, gx.dx());
    std::vector<double> term_by_absk(K + 1, 0.0);
    double r2 = 0.0;
    for (size_t idx = 0; idx < rb.samples.size(); ++idx) {
        const GridFunction& f = rb.samples[idx];
        const double tc = detail::multiplier_defect_time_domain(filter, f);
        const double tf = detail::multiplier_defect_via_transfer(filter, f);
        if (tc > 1e-14)
            rep.backend_gap = std::max(rep.backend_gap, std::abs(tc - tf) / tc);
        term_by_absk[std::abs(rb.ks[idx])] += tc;
        r2 += tc;
        rep.partial_sums_r2.push_back(r2);
    }
    rep.terms_r2 = term_by_absk;
    rep.total = r1 + r2;

    // least-squares log-log slope of the r2 terms over the upper tail
    const int lo = std::max(2, K / 4);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = lo; k <= K; ++k) {
        if (term_by_absk[k] <= 0.0) continue;
        const double X = std::log(static_cast<double>(k));
        const double Y = std::log(term_by_absk[k]);
        sx += X; sy += Y; sxx += X * X; sxy += X * Y;
        ++cnt;
    }
    rep.tail_slope = (cnt >= 2) ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
    return rep;
}

FeldmanReport feldman_check(const BlaschkeProduct& b, const GridSpec& grid,
                            const std::vector<int>& dims, const std::vector<double>& R_diag,
                            double t, CocycleVariant variant, double saturation_tol) {
    if (dims.empty()) throw std::invalid_argument("feldman_check: no dimensions given");
    const int dmax = *std::max_element(dims.begin(), dims.end());
    if (static_cast<int>(R_diag.size()) < dmax)
        throw std::invalid_argument("feldman_check: R_diag shorter than the largest dimension");
    for (double r : R_diag)
        if (!(r > 0.0)) throw std::invalid_argument("feldman_check: R_diag must be positive");

    const ModelSpace ms = orthonormalize_exponentials(b, grid);
    const int np = grid.n - grid.origin_index();
    if (dmax > np) throw std::invalid_argument("feldman_check: dimension exceeds the half grid");
    const int m = static_cast<int>(std::lround(t / grid.dx()));
    const int E = ms.ext_size();

    Eigen::MatrixXcd W(np, np);
    for (int j = 0; j < np; ++j) {
        std::vector<cplx> u(E, cplx(0.0));
        u[j] = 1.0;
        const std::vector<cplx> out = detail::cocycle_past_apply(ms, variant, t, m, u);
        for (int i = 0; i < np; ++i) W(i, j) = out[i];
    }

    FeldmanReport rep;
    rep.dims = dims;
    for (int d : dims) {
        const Eigen::MatrixXcd C = W.topLeftCorner(d, d);
        Eigen::VectorXd r(d);
        for (int j = 0; j < d; ++j) r(j) = R_diag[j];
        const Eigen::MatrixXcd R = r.asDiagonal().toDenseMatrix().cast<cplx>();
        rep.covariance_change.push_back((R - C.adjoint() * R * C).norm());
        rep.commutator_hs.push_back((C * R - R * C).norm());
    }
    const size_t nlast = rep.commutator_hs.size();
    if (nlast >= 2) {
        const double prev = rep.commutator_hs[nlast - 2], last = rep.commutator_hs[nlast - 1];
        rep.saturation_ratio = (prev == 0.0 && last == 0.0) ? 1.0 : last / std::max(prev, 1e-300);
        rep.pass = std::abs(rep.saturation_ratio - 1.0) <= saturation_tol;
    } else {
        rep.saturation_ratio = 1.0;
        rep.pass = true;
    }
    return rep;
}

}  // namespace coclab
