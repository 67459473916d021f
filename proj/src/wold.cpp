#include "coclab/wold.hpp"

#include <Eigen/Dense>
#include <algorithm>

namespace coclab {

namespace {

int half_size(const GridSpec& g) { return g.n - g.origin_index(); }

Eigen::VectorXcd to_half(const GridFunction& f) {
    const int io = f.grid.origin_index();
    const int np = f.grid.n - io;
    Eigen::VectorXcd v(np);
    for (int i = 0; i < np; ++i) v(i) = f.values[io + i];
    return v;
}

GridFunction from_half(const GridSpec& g, const Eigen::VectorXcd& v) {
    GridFunction f(g);
    const int io = g.origin_index();
    for (int i = 0; i < v.size() && io + i < g.n; ++i) f.values[io + i] = v(i);
    return f;
}

void require_half_supported(const GridFunction& f, const char* who) {
    const int io = f.grid.origin_index();
    for (int i = 0; i < io; ++i)
        if (std::norm(f.values[i]) > 1e-24)
            throw std::invalid_argument(std::string(who) + ": input has mass on x < 0");
}

int snapped_slots(const GridSpec& g, double t) {
    return static_cast<int>(std::lround(t / g.dx()));
}

std::vector<cplx> lat_rshift(const std::vector<cplx>& u, int m) {
    std::vector<cplx> out(u.size(), cplx(0.0));
    for (size_t i = static_cast<size_t>(m); i < u.size(); ++i) out[i] = u[i - m];
    return out;
}

std::vector<cplx> lat_lshift(const std::vector<cplx>& u, int m) {
    std::vector<cplx> out(u.size(), cplx(0.0));
    for (size_t i = 0; i + m < u.size(); ++i) out[i] = u[i + m];
    return out;
}

}  // namespace

IsometrySemigroup make_shift_semigroup(const GridSpec& grid) {
    IsometrySemigroup v;
    v.provenance = IsometrySemigroup::Provenance::pure_shift;
    v.grid = grid;
    v.ext = half_size(grid);
    v.apply = [](const GridFunction& f, double t) {
        require_half_supported(f, "shift_semigroup");
        if (t < 0.0) throw std::invalid_argument("shift_semigroup: need t >= 0");
        return shift(f, -t).fn;  // right shift by t
    };
    const GridSpec g = grid;
    v.apply_ext = [g](const std::vector<cplx>& u, double t) {
        return lat_rshift(u, snapped_slots(g, t));
    };
    v.adjoint_ext = [g](const std::vector<cplx>& u, double t) {
        return lat_lshift(u, snapped_slots(g, t));
    };
    return v;
}

IsometrySemigroup make_perturbed_semigroup(const MarkovianCocycle& w) {
    IsometrySemigroup v;
    v.provenance = IsometrySemigroup::Provenance::perturbed;
    v.grid = w.grid;
    const ModelSpace ms = w.model;  // value copy keeps the semigroup self-contained
    const CocycleVariant variant = w.variant;
    v.ext = ms.ext_size();
    v.apply = [ms, variant](const GridFunction& f, double t) {
        require_half_supported(f, "perturbed_semigroup");
        if (t < 0.0) throw std::invalid_argument("perturbed_semigroup: need t >= 0");
        const GridSpec& g = f.grid;
        const int io = g.origin_index();
        const int np = g.n - io;
        const int m = snapped_slots(g, t);
        // V_t = W_{-t} T_t; the rotation phase keeps the exact t
        std::vector<cplx> u(ms.ext_size(), cplx(0.0));
        for (int i = 0; i < np; ++i)
            if (i + m < ms.ext_size()) u[i + m] = f.values[io + i];
        const std::vector<cplx> out = detail::cocycle_past_apply(ms, variant, t, m, u);
        GridFunction r(g);
        for (int i = 0; i < np; ++i) r.values[io + i] = out[i];
        return r;
    };
    v.apply_ext = [ms, variant](const std::vector<cplx>& u, double t) {
        const int m = snapped_slots(ms.grid(), t);
        return detail::cocycle_past_apply(ms, variant, t, m, lat_rshift(u, m));
    };
    v.adjoint_ext = [ms, variant](const std::vector<cplx>& u, double t) {
        const int m = snapped_slots(ms.grid(), t);
        return lat_lshift(detail::cocycle_past_apply_adjoint(ms, variant, t, m, u), m);
    };
    return v;
}

int index_estimate(const IsometrySemigroup& v, double t_step) {
    if (!(t_step > 0.0)) throw std::invalid_argument("index_estimate: need t_step > 0");
    const int m = snapped_slots(v.grid, t_step);
    if (m < 1) throw std::invalid_argument("index_estimate: t_step below grid resolution");
    const int E = v.ext;

    // D = I - V V* is the projection onto the defect space; its trace gives
    // the numerical rank and trace(D^2) must agree for a clean spectrum
    double tr = 0.0, tr2 = 0.0;
    std::vector<cplx> e(E, cplx(0.0));
    for (int j = 0; j < E; ++j) {
        std::fill(e.begin(), e.end(), cplx(0.0));
        e[j] = 1.0;
        const std::vector<cplx> col = v.apply_ext(v.adjoint_ext(e, t_step), t_step);
        double nrm2 = 0.0;
        for (int i = 0; i < E; ++i) {
            const cplx dij = ((i == j) ? cplx(1.0) : cplx(0.0)) - col[i];
            nrm2 += std::norm(dij);
        }
        tr += 1.0 - col[j].real();
        tr2 += nrm2;
    }
    if (std::abs(tr2 - tr) > 1e-2)
        throw std::runtime_error("index_estimate: defect spectrum is ambiguous near the rank "
                                 "threshold");
    const long rank = std::lround(tr);
    if (std::abs(tr - rank) > 1e-2)
        throw std::runtime_error("index_estimate: defect rank is not well separated");
    const double ratio = static_cast<double>(rank) / static_cast<double>(m);
    const long idx = std::lround(ratio);
    if (std::abs(ratio - idx) > 0.05)
        throw std::runtime_error("index_estimate: defect rank is not a multiple of the step "
                                 "width");
    return static_cast<int>(idx);
}

namespace {

// orthonormal column basis with singular-value truncation
Eigen::MatrixXcd truncated_orth(const Eigen::MatrixXcd& B, double svtol) {
    if (B.cols() == 0) return B;
    const Eigen::MatrixXcd G = B.adjoint() * B;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    std::vector<int> keep;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > svtol * svtol) keep.push_back(i);
    Eigen::MatrixXcd Q(B.rows(), static_cast<int>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k)
        Q.col(static_cast<int>(k)) =
            B * es.eigenvectors().col(keep[k]) / std::sqrt(es.eigenvalues()(keep[k]));
    for (int j = 0; j < Q.cols(); ++j) {
        for (int i = 0; i < j; ++i) Q.col(j) -= Q.col(i).dot(Q.col(j)) * Q.col(i);
        Q.col(j).normalize();
    }
    return Q;
}

}  // namespace

WoldSplit wold_split(const IsometrySemigroup& v, const ModelSpace& m, double t_probe, int depth) {
    const GridSpec& g = v.grid;
    const int np = half_size(g);
    const int io = g.origin_index();
    const int E = v.ext;

    // Iteration lattice: the operator's full extension.  Range columns that
    // straddle a nearer cut would keep re-injecting basis-tail mass above
    // the 1e-6 rank threshold; at the full extension the tails sit around
    // 1e-10 and the cascade dies immediately.
    const int L = E;
    auto step = [&](const Eigen::VectorXcd& q) {
        std::vector<cplx> buf(E, cplx(0.0));
        for (int i = 0; i < L; ++i) buf[i] = q(i);
        const std::vector<cplx> out = v.apply_ext(buf, t_probe);
        Eigen::VectorXcd r(L);
        for (int i = 0; i < L; ++i) r(i) = out[i];
        return r;
    };

    Eigen::MatrixXcd Q(L, np);
    Q.setZero();
    for (int j = 0; j < np; ++j) Q(j, j) = 1.0;

    WoldSplit split;
    split.lattice_size = L;
    for (int it = 0; it < depth; ++it) {
        Eigen::MatrixXcd B(L, Q.cols());
        for (int j = 0; j < Q.cols(); ++j) B.col(j) = step(Q.col(j));
        // while every column keeps full norm the map has acted isometrically
        // and B is still orthonormal; the rank-revealing pass is only needed
        // once columns start draining past the lattice
        const double min_col = (B.cols() > 0) ? B.colwise().norm().minCoeff() : 0.0;
        const Eigen::MatrixXcd Qnew =
            (B.cols() > 96 && min_col > 0.999999) ? B : truncated_orth(B, 1e-6);
        split.iterations = it + 1;
        if (Qnew.cols() == 0) {
            Q = Qnew;
            split.converged = true;
            break;
        }
        if (Qnew.cols() == Q.cols()) {
            // converged once the span itself is invariant, not merely the rank
            const Eigen::MatrixXcd R = Qnew - Q * (Q.adjoint() * Qnew);
            if (R.colwise().norm().maxCoeff() < 1e-7) {
                Q = Qnew;
                split.converged = true;
                break;
            }
        }
        Q = Qnew;
    }

    // public basis: grid restriction, re-orthonormalized
    split.unitary_part.label = "H1";
    {
        Eigen::MatrixXcd Qg(np, Q.cols());
        for (int j = 0; j < Q.cols(); ++j)
            for (int i = 0; i < np; ++i) Qg(i, j) = Q(i, j);
        for (int j = 0; j < Qg.cols(); ++j) {
            for (int i = 0; i < j; ++i) Qg.col(j) -= Qg.col(i).dot(Qg.col(j)) * Qg.col(i);
            Qg.col(j).normalize();
        }
        // grid functions carry the dx-weighted norm
        const double scale = 1.0 / std::sqrt(g.dx());
        for (int j = 0; j < Qg.cols(); ++j)
            split.unitary_part.basis.push_back(from_half(g, scale * Qg.col(j)));
    }
    split.ext_basis.assign(static_cast<size_t>(Q.cols()), std::vector<cplx>(L));
    for (int j = 0; j < Q.cols(); ++j)
        for (int i = 0; i < L; ++i) split.ext_basis[j][i] = Q(i, j);

    // witnesses for the completely nonunitary part: M_Theta images of
    // indicators; the overlap diagnostic pairs them with H1 on the internal
    // lattice so the dropped tails do not register as overlap
    const detail::AllPass filter(m.blaschke, g.dx());
    for (double a : {0.0, 0.5, 1.0}) {
        GridFunction f = indicator(g, a, a + 0.5);
        split.shift_part_witness.push_back(
            apply_inner_multiplier(m.blaschke, f, MultiplierBackend::causal_convolution));
        std::vector<cplx> wit(L, cplx(0.0));
        for (int i = 0; i < np; ++i) wit[i] = f.values[io + i];
        filter.apply(wit);
        double wn = 0.0;
        for (const cplx& z : wit) wn += std::norm(z);
        wn = std::sqrt(wn);
        for (int j = 0; j < Q.cols(); ++j) {
            cplx ov = 0.0;
            for (int i = 0; i < L; ++i) ov += wit[i] * std::conj(Q(i, j));
            split.max_witness_overlap =
                std::max(split.max_witness_overlap, std::abs(ov) / wn);
        }
    }

    // principal angles between H1 and the model prediction span{g_k}
    const int N = m.dim();
    if (N > 0 && Q.cols() > 0 && m.ext_size() >= L) {
        Eigen::MatrixXcd G(L, N);
        for (int k = 0; k < N; ++k) {
            for (int i = 0; i < L; ++i) G(i, k) = m.ext_basis()[k][i];
            G.col(k).normalize();
        }
        for (int j = 0; j < N; ++j) {
            for (int i = 0; i < j; ++i) G.col(j) -= G.col(i).dot(G.col(j)) * G.col(i);
            G.col(j).normalize();
        }
        const Eigen::MatrixXcd C = Q.adjoint() * G;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C);
        for (int i = 0; i < svd.singularValues().size(); ++i) {
            const double c = std::clamp(svd.singularValues()(i), 0.0, 1.0);
            split.angles.push_back(std::acos(c));
        }
    }
    return split;
}

std::vector<cplx> unitary_part_spectrum(const WoldSplit& split, const IsometrySemigroup& v,
                                        double t) {
    if (!split.converged)
        throw std::runtime_error("unitary_part_spectrum: the Wold split did not converge");
    const int k = static_cast<int>(split.ext_basis.size());
    if (k == 0) return {};
    const int L = split.lattice_size;
    if (L > v.ext)
        throw std::invalid_argument("unitary_part_spectrum: split and semigroup disagree");
    Eigen::MatrixXcd Q(L, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < L; ++i) Q(i, j) = split.ext_basis[j][i];
    Eigen::MatrixXcd C(k, k);
    std::vector<cplx> buf(v.ext, cplx(0.0));
    for (int j = 0; j < k; ++j) {
        std::fill(buf.begin(), buf.end(), cplx(0.0));
        for (int i = 0; i < L; ++i) buf[i] = split.ext_basis[j][i];
        const std::vector<cplx> out = v.apply_ext(buf, t);
        Eigen::VectorXcd col(L);
        for (int i = 0; i < L; ++i) col(i) = out[i];
        C.col(j) = Q.adjoint() * col;
    }
    const double unit_defect = (C.adjoint() * C - Eigen::MatrixXcd::Identity(k, k))
                                   .cwiseAbs()
                                   .maxCoeff();
    if (unit_defect > 1e-3)
        throw std::runtime_error("unitary_part_spectrum: compression is far from unitary "
                                 "(reduction failed)");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
    std::vector<cplx> eig(es.eigenvalues().data(), es.eigenvalues().data() + k);
    std::sort(eig.begin(), eig.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
    return eig;
}

IncrementReport noncorrelated_increments_check(const MarkovianCocycle& w,
                                               const std::vector<double>& spiral_times,
                                               double tol) {
    std::vector<double> times = spiral_times;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.size() < 3)
        throw std::invalid_argument("noncorrelated_increments_check: need at least 3 times");
    std::vector<std::vector<cplx>> incr;
    for (size_t i = 0; i + 1 < times.size(); ++i) {
        // consecutive intervals are disjoint by construction; work on the
        // half-line representation so dropped tails do not correlate
        std::vector<cplx> d = detail::perturbed_spiral_halfline(w, times[i + 1]);
        const std::vector<cplx> prev = detail::perturbed_spiral_halfline(w, times[i]);
        for (size_t k = 0; k < d.size(); ++k) d[k] -= prev[k];
        incr.push_back(std::move(d));
    }
    IncrementReport rep{0.0, tol, true};
    const double dx = w.grid.dx();
    for (size_t i = 0; i < incr.size(); ++i)
        for (size_t j = i + 1; j < incr.size(); ++j) {
            cplx ip = 0.0;
            for (size_t k = 0; k < incr[i].size(); ++k)
                ip += incr[i][k] * std::conj(incr[j][k]);
            rep.max_offdiag = std::max(rep.max_offdiag, std::abs(dx * ip));
        }
    rep.pass = rep.max_offdiag <= tol;
    return rep;
}

}  // namespace coclab
