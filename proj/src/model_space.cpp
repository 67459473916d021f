#include "coclab/model_space.hpp"

#include <Eigen/Dense>

namespace coclab {

namespace {

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b, double dx) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return dx * s;
}

}  // namespace

std::vector<cplx> ModelSpace::ext_coefficients(const std::vector<cplx>& u) const {
    std::vector<cplx> c(gext_.size());
    for (size_t k = 0; k < gext_.size(); ++k) c[k] = dot(u, gext_[k], dx_);
    return c;
}

std::vector<cplx> ModelSpace::ext_vperp_image(const std::vector<cplx>& u,
                                              const std::vector<cplx>& phases) const {
    std::vector<cplx> out(ext_, cplx(0.0));
    for (size_t k = 0; k < gext_.size(); ++k) {
        const cplx c = phases[k] * dot(u, gext_[k], dx_);
        const std::vector<cplx>& g = gext_[k];
        for (int i = 0; i < ext_; ++i) out[i] += c * g[i];
    }
    return out;
}

ModelSpace orthonormalize_exponentials(const BlaschkeProduct& b, const GridSpec& grid) {
    ModelSpace m;
    m.blaschke = b;
    m.grid_ = grid;
    const int io = grid.origin_index();
    m.npos_ = grid.n - io;
    m.ext_ = 3 * m.npos_;
    m.dx_ = grid.dx();
    m.allpass_ = detail::AllPass(b, m.dx_);

    const int N = b.degree();
    const double x_ext = m.ext_ * m.dx_;
    for (const cplx& lk : b.zeros)
        if (std::exp(2.0 * lk.real() * x_ext) > 1e-10)
            throw std::invalid_argument(
                "orthonormalize_exponentials: exponential tail of a zero is not resolved "
                "by the grid extent");

    // raw midpoint samples of exp(zero_k x) on the extended half-line lattice
    std::vector<std::vector<cplx>> raw(N, std::vector<cplx>(m.ext_));
    for (int k = 0; k < N; ++k) {
        const cplx q = std::exp(b.zeros[k] * m.dx_);
        cplx v = std::exp(b.zeros[k] * (0.5 * m.dx_));
        for (int i = 0; i < m.ext_; ++i) {
            raw[k][i] = v;
            v *= q;
        }
    }

    if (N > 0) {
        // conditioning of the normalized exponential Gram matrix
        Eigen::MatrixXcd G(N, N);
        for (int k = 0; k < N; ++k)
            for (int l = 0; l < N; ++l)
                G(k, l) = dot(raw[k], raw[l], m.dx_) /
                          std::sqrt(dot(raw[k], raw[k], m.dx_).real() *
                                    dot(raw[l], raw[l], m.dx_).real());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
        if (!(lo > 0.0) || hi / lo > 1e12)
            throw std::runtime_error(
                "orthonormalize_exponentials: exponential system too ill-conditioned "
                "(zeros clustered beyond grid precision)");
    }

    // modified Gram-Schmidt with one reorthogonalization pass
    m.gext_.clear();
    for (int k = 0; k < N; ++k) {
        std::vector<cplx> v = raw[k];
        for (int pass = 0; pass < 2; ++pass)
            for (const std::vector<cplx>& g : m.gext_) {
                const cplx c = dot(v, g, m.dx_);
                for (int i = 0; i < m.ext_; ++i) v[i] -= c * g[i];
            }
        const double nv = std::sqrt(dot(v, v, m.dx_).real());
        for (cplx& z : v) z /= nv;
        m.gext_.push_back(std::move(v));
    }

    m.frequencies.resize(N);
    for (int k = 0; k < N; ++k) m.frequencies[k] = b.zeros[k].imag();

    // public basis: grid restriction, re-orthonormalized so its Gram is the
    // identity to rounding despite the dropped tails
    m.basis_g.clear();
    for (int k = 0; k < N; ++k) {
        GridFunction g(grid);
        for (int i = 0; i < m.npos_; ++i) g.values[io + i] = m.gext_[k][i];
        for (const GridFunction& prev : m.basis_g) axpy(g, -inner_product(g, prev), prev);
        const double ng = g.norm();
        m.basis_g.push_back(cplx(1.0 / ng) * g);
    }
    return m;
}

namespace {

void require_causal(const GridFunction& f, const char* who) {
    const int io = f.grid.origin_index();
    double neg = 0.0;
    for (int i = 0; i < io; ++i) neg += std::norm(f.values[i]);
    neg *= f.dx();
    if (f.norm2() > 0.0 && neg > 1e-12 * f.norm2())
        throw std::invalid_argument(std::string(who) + ": input has mass on x < 0");
}

}  // namespace

GridFunction model_projection(const ModelSpace& m, const GridFunction& f, ModelProjection which) {
    require_causal(f, "model_projection");
    GridFunction vperp(f.grid);
    for (const GridFunction& g : m.basis_g) axpy(vperp, inner_product(f, g), g);
    if (which == ModelProjection::onto_Vperp) return vperp;
    return f - vperp;
}

GridFunction rotation_apply(const ModelSpace& m, const GridFunction& f, double t,
                            double residual_tol) {
    require_causal(f, "rotation_apply");
    const int N = m.dim();
    if (N == 0) {
        if (f.norm() > residual_tol)
            throw std::runtime_error("rotation_apply: input is not in the (empty) model space");
        return f;
    }
    // exact coefficients against the truncated basis via the Gram system
    Eigen::MatrixXcd G(N, N);
    Eigen::VectorXcd rhs(N);
    for (int k = 0; k < N; ++k) {
        rhs(k) = inner_product(f, m.basis_g[k]);
        for (int l = 0; l < N; ++l) G(k, l) = inner_product(m.basis_g[l], m.basis_g[k]);
    }
    const Eigen::VectorXcd c = G.ldlt().solve(rhs);
    GridFunction recon(f.grid);
    for (int k = 0; k < N; ++k) axpy(recon, c(k), m.basis_g[k]);
    const double resid = (f - recon).norm();
    if (resid > residual_tol * std::max(1.0, f.norm()))
        throw std::runtime_error("rotation_apply: input is not in the model space (residual " +
                                 std::to_string(resid) + ")");
    GridFunction out(f.grid);
    for (int k = 0; k < N; ++k)
        axpy(out, c(k) * std::exp(cplx(0.0, m.frequencies[k] * t)), m.basis_g[k]);
    return out;
}

}  // namespace coclab
