#include "coclab/cocycle.hpp"

#include <algorithm>
#include <numbers>

namespace coclab {

std::string to_string(CocycleVariant v) {
    switch (v) {
        case CocycleVariant::literal_minus: return "literal_minus";
        case CocycleVariant::plus_corrected: return "plus_corrected";
        case CocycleVariant::shift_first: return "shift_first";
    }
    return "?";
}

CocycleVariant variant_from_string(const std::string& s) {
    if (s == "literal_minus") return CocycleVariant::literal_minus;
    if (s == "plus_corrected") return CocycleVariant::plus_corrected;
    if (s == "shift_first") return CocycleVariant::shift_first;
    throw std::invalid_argument("unknown cocycle variant '" + s + "'");
}

MarkovianCocycle::MarkovianCocycle(ModelSpace m, CocycleVariant v)
    : model(std::move(m)), variant(v), grid(model.grid()) {}

MarkovianCocycle make_cocycle(const BlaschkeProduct& b, const GridSpec& grid, CocycleVariant v) {
    return MarkovianCocycle(orthonormalize_exponentials(b, grid), v);
}

MarkovianCocycle make_cocycle_with_rotation(const BlaschkeProduct& b, const GridSpec& grid,
                                            const std::vector<double>& frequencies,
                                            CocycleVariant v) {
    ModelSpace m = orthonormalize_exponentials(b, grid);
    if (frequencies.size() != m.frequencies.size())
        throw std::invalid_argument("make_cocycle_with_rotation: one frequency per zero");
    m.frequencies = frequencies;
    return MarkovianCocycle(std::move(m), v);
}

using Vec = std::vector<cplx>;

namespace {

// left shift by m with zero fill at the top: (out)[i] = u[i+m]
Vec lshift(const Vec& u, int m) {
    const int E = static_cast<int>(u.size());
    Vec out(E, cplx(0.0));
    for (int i = 0; i + m < E; ++i) out[i] = u[i + m];
    return out;
}

// right shift by m with zero fill at the bottom, drop past the top
Vec rshift(const Vec& u, int m) {
    const int E = static_cast<int>(u.size());
    Vec out(E, cplx(0.0));
    for (int i = m; i < E; ++i) out[i] = u[i - m];
    return out;
}

void add_to(Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}
void sub_from(Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
}

std::vector<cplx> rotation_phases(const ModelSpace& m, double t) {
    std::vector<cplx> ph(m.dim());
    for (int k = 0; k < m.dim(); ++k) ph[k] = std::exp(cplx(0.0, m.frequencies[k] * t));
    return ph;
}

}  // namespace

namespace detail {

// W_{-t} restricted to the half line, acting on the extended lattice.
// plus_corrected:  (R_t Pvp + T_t Pv) S_t P_[t,inf) u  +  M P_[0,t) u
// literal_minus:   (R_t Pvp S_t - Pv) P_[t,inf) u      +  M P_[0,t) u
// shift_first:     (R_t Pvp + Pv) S_t P_[t,inf) u      +  M P_[0,t) u
std::vector<cplx> cocycle_past_apply(const ModelSpace& ms, CocycleVariant variant, double t,
                                     int m, const std::vector<cplx>& u) {
    const int E = static_cast<int>(u.size());
    Vec head(E, cplx(0.0));  // P_[0,t) u
    for (int i = 0; i < std::min(m, E); ++i) head[i] = u[i];
    Vec tail = u;  // P_[t,inf) u
    for (int i = 0; i < std::min(m, E); ++i) tail[i] = 0.0;

    ms.multiplier().apply(head);  // M P_[0,t) u

    const Vec su = lshift(tail, m);
    const std::vector<cplx> ones(ms.dim(), cplx(1.0));
    Vec out = ms.ext_vperp_image(su, rotation_phases(ms, t));  // R_t Pvp S_t part

    switch (variant) {
        case CocycleVariant::plus_corrected: {
            Vec pv = su;
            sub_from(pv, ms.ext_vperp_image(su, ones));
            add_to(out, rshift(pv, m));
            break;
        }
        case CocycleVariant::literal_minus: {
            Vec pv = tail;
            sub_from(pv, ms.ext_vperp_image(tail, ones));
            sub_from(out, pv);
            break;
        }
        case CocycleVariant::shift_first: {
            Vec pv = su;
            sub_from(pv, ms.ext_vperp_image(su, ones));
            add_to(out, pv);
            break;
        }
    }
    add_to(out, head);
    return out;
}

// adjoint, factor by factor
std::vector<cplx> cocycle_past_apply_adjoint(const ModelSpace& ms, CocycleVariant variant,
                                             double t, int m, const std::vector<cplx>& g) {
    const int E = static_cast<int>(g.size());
    Vec mstar = g;
    ms.multiplier().apply_adjoint(mstar);  // P_[0,t) M* g
    Vec out(E, cplx(0.0));
    for (int i = 0; i < std::min(m, E); ++i) out[i] = mstar[i];

    const std::vector<cplx> ones(ms.dim(), cplx(1.0));
    const Vec rot = ms.ext_vperp_image(g, rotation_phases(ms, -t));  // Pvp R_{-t} g

    switch (variant) {
        case CocycleVariant::plus_corrected: {
            Vec pv = lshift(g, m);  // T_t* g
            sub_from(pv, ms.ext_vperp_image(pv, ones));
            add_to(pv, rot);
            add_to(out, rshift(pv, m));  // (S_t P_[t,inf))* = right shift
            break;
        }
        case CocycleVariant::literal_minus: {
            Vec pv = g;
            sub_from(pv, ms.ext_vperp_image(g, ones));
            for (int i = 0; i < std::min(m, E); ++i) pv[i] = 0.0;  // P_[t,inf) Pv g
            sub_from(out, pv);
            add_to(out, rshift(rot, m));
            break;
        }
        case CocycleVariant::shift_first: {
            Vec pv = g;
            sub_from(pv, ms.ext_vperp_image(g, ones));
            add_to(pv, rot);
            add_to(out, rshift(pv, m));
            break;
        }
    }
    return out;
}

}  // namespace detail

namespace {

int aligned_slots(const GridSpec& g, double t) {
    const double pos = t / g.dx();
    const long m = std::lround(pos);
    if (std::abs(pos - m) > 1e-9 * std::max(1.0, std::abs(pos)))
        throw std::invalid_argument("cocycle_apply: t is not node-aligned");
    return static_cast<int>(m);
}

}  // namespace

ApplyResult cocycle_apply_ex(const MarkovianCocycle& w, const GridFunction& f, double t) {
    if (!(f.grid == w.grid)) throw std::invalid_argument("cocycle_apply: grid mismatch");
    const ModelSpace& ms = w.model;
    const GridSpec& g = w.grid;
    const int io = g.origin_index();
    const int npos = g.n - io;
    const int E = ms.ext_size();
    const int m = std::abs(aligned_slots(g, t));
    if (m == 0) return {f, 0.0};

    ApplyResult res{GridFunction(g), 0.0};
    if (t < 0.0) {
        // future side untouched, past side through the variant formula
        for (int i = 0; i < io; ++i) res.fn.values[i] = f.values[i];
        Vec u(E, cplx(0.0));
        for (int i = 0; i < npos; ++i) u[i] = f.values[io + i];
        const Vec out = detail::cocycle_past_apply(ms, w.variant, -t, m, u);
        for (int i = 0; i < npos; ++i) res.fn.values[io + i] = out[i];
        double beyond = 0.0;
        for (int i = npos; i < E; ++i) beyond += std::norm(out[i]);
        res.mass_lost = beyond * g.dx();
        return res;
    }

    // W_t = S_t W_{-t}^* S_{-t}
    const ShiftResult in = shift(f, -t);  // right shift by t
    res.mass_lost += in.mass_lost;
    GridFunction h(g);
    for (int i = 0; i < io; ++i) h.values[i] = in.fn.values[i];
    Vec u(E, cplx(0.0));
    for (int i = 0; i < npos; ++i) u[i] = in.fn.values[io + i];
    const Vec out = detail::cocycle_past_apply_adjoint(ms, w.variant, t, m, u);
    for (int i = 0; i < npos; ++i) h.values[io + i] = out[i];
    double beyond = 0.0;
    for (int i = npos; i < E; ++i) beyond += std::norm(out[i]);
    res.mass_lost += beyond * g.dx();
    const ShiftResult back = shift(h, t);  // left shift by t
    res.mass_lost += back.mass_lost;
    res.fn = back.fn;
    return res;
}

GridFunction cocycle_apply(const MarkovianCocycle& w, const GridFunction& f, double t) {
    return cocycle_apply_ex(w, f, t).fn;
}

namespace {

// working representation for operator compositions: the grid cells below 0
// followed by the extended half-line lattice, as one flat array
struct ExtState {
    GridSpec grid;
    int io = 0;  // cells below the origin
    int E = 0;   // extended half-line cells
    std::vector<cplx> v;

    int size() const { return io + E; }
};

ExtState embed_state(const MarkovianCocycle& w, const GridFunction& f) {
    if (!(f.grid == w.grid)) throw std::invalid_argument("cocycle state: grid mismatch");
    ExtState st;
    st.grid = w.grid;
    st.io = w.grid.origin_index();
    st.E = w.model.ext_size();
    st.v.assign(st.io + st.E, cplx(0.0));
    for (int i = 0; i < w.grid.n; ++i) st.v[i] = f.values[i];
    return st;
}

// (S_t f)(x) = f(x + t): left shift by m cells for m > 0
void state_shift(ExtState& st, int m) {
    if (m == 0) return;
    const int n = st.size();
    std::vector<cplx> out(n, cplx(0.0));
    for (int i = 0; i < n; ++i) {
        const long j = i + m;
        if (j >= 0 && j < n) out[i] = st.v[j];
    }
    st.v = std::move(out);
}

void state_cocycle(const MarkovianCocycle& w, ExtState& st, double t) {
    const int m = std::abs(aligned_slots(w.grid, t));
    if (m == 0) return;
    if (t < 0.0) {
        std::vector<cplx> u(st.v.begin() + st.io, st.v.end());
        const Vec out = detail::cocycle_past_apply(w.model, w.variant, -t, m, u);
        std::copy(out.begin(), out.end(), st.v.begin() + st.io);
        return;
    }
    state_shift(st, -m);
    std::vector<cplx> u(st.v.begin() + st.io, st.v.end());
    const Vec out = detail::cocycle_past_apply_adjoint(w.model, w.variant, t, m, u);
    std::copy(out.begin(), out.end(), st.v.begin() + st.io);
    state_shift(st, m);
}

double state_dist(const ExtState& a, const ExtState& b) {
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += std::norm(a.v[i] - b.v[i]);
    return std::sqrt(a.grid.dx() * s);
}

}  // namespace

ResidualReport verify_cocycle_identity(const MarkovianCocycle& w, double s, double t,
                                       const std::vector<GridFunction>& corpus, double tol) {
    ResidualReport rep{0.0, tol, true};
    const int mt = aligned_slots(w.grid, t);
    for (const GridFunction& f : corpus) {
        ExtState lhs = embed_state(w, f);
        state_cocycle(w, lhs, t + s);
        ExtState rhs = embed_state(w, f);
        state_shift(rhs, -mt);      // S_{-t}
        state_cocycle(w, rhs, s);   // W_s
        state_shift(rhs, mt);       // S_t
        state_cocycle(w, rhs, t);   // W_t
        rep.max_residual = std::max(rep.max_residual, state_dist(lhs, rhs) / f.norm());
    }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

double unitarity_defect(const MarkovianCocycle& w, const GridFunction& f, double t) {
    const ApplyResult r = cocycle_apply_ex(w, f, t);
    const double n2 = r.fn.norm2() + r.mass_lost;
    return std::abs(std::sqrt(n2) / f.norm() - 1.0);
}

ResidualReport verify_markov(const MarkovianCocycle& w, double t,
                             const std::vector<GridFunction>& corpus, double tol) {
    if (!(t > 0.0)) throw std::invalid_argument("verify_markov: need t > 0");
    ResidualReport rep{0.0, tol, true};
    int used = 0;
    for (const GridFunction& f : corpus) {
        // keep only members supported in (-inf, -t]
        const GridFunction inside = project_interval(f, -std::numeric_limits<double>::infinity(),
                                                     -t);
        if ((f - inside).norm2() > 1e-20 * std::max(1.0, f.norm2())) continue;
        ++used;
        const GridFunction img = cocycle_apply(w, f, t);
        rep.max_residual = std::max(rep.max_residual, (img - f).norm() / f.norm());
    }
    if (used == 0)
        throw std::invalid_argument("verify_markov: no corpus member is supported in the future "
                                    "subspace at this t");
    rep.pass = rep.max_residual <= tol;
    return rep;
}

ResidualReport verify_markov_m1(const MarkovianCocycle& w, double t,
                                const std::vector<GridFunction>& corpus, double tol) {
    if (!(t > 0.0)) throw std::invalid_argument("verify_markov_m1: need t > 0");
    ResidualReport rep{0.0, tol, true};
    int used = 0;
    for (const GridFunction& f : corpus) {
        const GridFunction inside = project_interval(f, -std::numeric_limits<double>::infinity(),
                                                     0.0);
        if ((f - inside).norm2() > 1e-20 * std::max(1.0, f.norm2())) continue;
        ++used;
        const GridFunction img = cocycle_apply(w, f, -t);
        rep.max_residual = std::max(rep.max_residual, (img - f).norm() / f.norm());
    }
    if (used == 0)
        throw std::invalid_argument("verify_markov_m1: no corpus member is future-supported");
    rep.pass = rep.max_residual <= tol;
    return rep;
}

LimitReport cocycle_limit(const MarkovianCocycle& w, const GridFunction& f,
                          const std::vector<double>& schedule, double tol) {
    const int io = f.grid.origin_index();
    for (int i = 0; i < io; ++i)
        if (std::norm(f.values[i]) > 0.0)
            throw std::invalid_argument("cocycle_limit: f must be supported on x >= 0");
    double x_support = 0.0;
    for (int i = f.grid.n - 1; i >= io; --i)
        if (std::abs(f.values[i]) > 1e-300) {
            x_support = f.grid.node(i + 1);
            break;
        }
    const GridFunction target = apply_inner_multiplier(w.model.blaschke, f,
                                                       MultiplierBackend::causal_convolution);
    LimitReport rep;
    rep.stabilized_from = x_support;
    rep.pass = true;
    for (double t : schedule) {
        const double d = (cocycle_apply(w, f, -t) - target).norm();
        rep.distances.push_back(d);
        if (t >= x_support && d > tol) rep.pass = false;
    }
    return rep;
}

GridFunction spiral(const GridSpec& grid, double t) {
    if (t == 0.0) return GridFunction(grid);
    if (t > 0.0) return indicator(grid, -t, 0.0);
    return cplx(-1.0) * indicator(grid, 0.0, -t);
}

namespace detail {

std::vector<cplx> perturbed_spiral_halfline(const MarkovianCocycle& w, double t) {
    ExtState st = embed_state(w, spiral(w.grid, t));
    if (t < 0.0) state_cocycle(w, st, t);
    return st.v;
}

}  // namespace detail

GridFunction perturbed_spiral(const MarkovianCocycle& w, double t) {
    const GridFunction xi = spiral(w.grid, t);
    if (t > 0.0) return xi;
    if (t == 0.0) return xi;
    return cocycle_apply(w, xi, t);
}

ResidualReport perturb_curve(const MarkovianCocycle& w, const std::vector<double>& times,
                             double tol) {
    ResidualReport rep{0.0, tol, true};
    auto xi2_state = [&w](double t) {
        ExtState st = embed_state(w, spiral(w.grid, t));
        if (t < 0.0) state_cocycle(w, st, t);
        return st;
    };
    for (double t : times)
        for (double s : times) {
            const double sum = t + s;
            // shifted arguments must stay on the grid
            const double reach = std::abs(t) + std::abs(s) + std::abs(sum);
            if (reach > std::min(-w.grid.x_min, w.grid.x_max)) continue;
            const ExtState lhs = xi2_state(sum);
            ExtState rhs = xi2_state(s);
            state_shift(rhs, aligned_slots(w.grid, t));  // U_t^(2) = W_t S_t
            state_cocycle(w, rhs, t);
            const ExtState head = xi2_state(t);
            for (int i = 0; i < rhs.size(); ++i) rhs.v[i] += head.v[i];
            const double scale = std::max(std::sqrt(std::abs(sum)), 1.0);
            rep.max_residual = std::max(rep.max_residual, state_dist(lhs, rhs) / scale);
        }
    rep.pass = rep.max_residual <= tol;
    return rep;
}

MarkovIsometryReport markov_isometry_check(const MarkovianCocycle& w,
                                           const std::vector<double>& times, double tol) {
    double extent = 0.0;
    for (double t : times) extent = std::max(extent, std::abs(t));
    // stabilization time for the limiting isometry: past this the operator
    // no longer changes on the spiral span
    const double dx = w.grid.dx();
    const double t_stab = std::min(std::ceil((extent + 1.0) / dx) * dx, w.grid.x_max);

    MarkovIsometryReport rep;
    rep.tol = tol;
    for (double t : times) {
        ExtState lhs = embed_state(w, spiral(w.grid, t));
        if (t < 0.0) state_cocycle(w, lhs, t);
        ExtState rhs = embed_state(w, spiral(w.grid, t));
        state_cocycle(w, rhs, -t_stab);
        const double scale = std::max(std::sqrt(std::abs(t)), 1.0);
        rep.max_residual = std::max(rep.max_residual, state_dist(lhs, rhs) / scale);
    }
    bool fixes = true;
    for (double s : {0.25, 0.5, 1.0}) {
        const GridFunction eta = indicator(w.grid, -s - 1.0, -s);
        if ((cocycle_apply(w, eta, -t_stab) - eta).norm() > 1e-12) fixes = false;
    }
    rep.fixes_future = fixes;
    rep.pass = rep.max_residual <= tol && fixes;
    return rep;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<GridFunction> make_verification_corpus(const GridSpec& grid, double lo, double hi,
                                                   std::uint64_t seed) {
    if (lo < grid.x_min + 1.0 || hi > grid.x_max - 1.0)
        throw std::invalid_argument("make_verification_corpus: window too close to grid edges");
    std::vector<GridFunction> corpus;
    auto push = [&](GridFunction f) {
        const double n = f.norm();
        if (n > 0) corpus.push_back(cplx(1.0 / n) * f);
    };

    push(indicator(grid, 0.0, std::min(1.0, hi)));
    push(indicator(grid, std::max(-1.0, lo), 0.0));
    if (lo <= -2.0) push(indicator(grid, -2.0, -1.0));
    push(indicator(grid, std::max(-0.5, lo), std::min(0.5, hi)));

    const double hpos = std::min(1.0, hi);
    auto expwin = [&](cplx lambda, double a, double b) {
        GridFunction f = sample_function(grid, [&](double x) -> cplx {
            return (x >= a && x < b) ? std::exp(lambda * x) : cplx(0.0);
        });
        push(std::move(f));
    };
    expwin(cplx(-1.0, 0.0), 0.0, hpos);
    expwin(cplx(-2.0, 0.0), 0.0, hpos);
    expwin(cplx(1.0, 0.0), std::max(-1.0, lo), 0.0);
    expwin(cplx(-1.0, 2.0), 0.0, hpos);

    // seeded smooth noise with a raised-cosine window on [lo, hi]
    std::uint64_t state = seed;
    const double len = hi - lo;
    for (int sample = 0; sample < 3; ++sample) {
        std::vector<double> ar(8), br(8);
        for (int j = 0; j < 8; ++j) {
            ar[j] = 2.0 * unit_double(state) - 1.0;
            br[j] = 2.0 * unit_double(state) - 1.0;
        }
        GridFunction f = sample_function(grid, [&](double x) -> cplx {
            if (x < lo || x >= hi) return 0.0;
            const double u = (x - lo) / len;
            const double window = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * u);
            cplx v = 0.0;
            for (int j = 0; j < 8; ++j)
                v += cplx(ar[j] * std::cos(2.0 * std::numbers::pi * (j + 1) * u),
                          br[j] * std::sin(2.0 * std::numbers::pi * (j + 1) * u));
            return window * v;
        });
        push(std::move(f));
    }
    return corpus;
}

AdjudicationReport adjudicate_variants(const GridSpec& grid, double tol) {
    const std::vector<std::pair<std::string, std::vector<cplx>>> zero_sets = {
        {"{}", {}},
        {"{-1}", {cplx(-1.0, 0.0)}},
        {"{-1,-2}", {cplx(-1.0, 0.0), cplx(-2.0, 0.0)}},
        {"{-1+i,-1-i}", {cplx(-1.0, 1.0), cplx(-1.0, -1.0)}},
    };
    const std::vector<double> sweep = {-1.0, -0.5, 0.5, 1.0};

    AdjudicationReport rep;
    std::vector<bool> ok(3, true);
    for (CocycleVariant v : {CocycleVariant::literal_minus, CocycleVariant::plus_corrected,
                             CocycleVariant::shift_first}) {
        for (const auto& [name, zeros] : zero_sets) {
            const MarkovianCocycle w = make_cocycle(BlaschkeProduct(zeros), grid, v);
            const std::vector<GridFunction> corpus = make_verification_corpus(grid);
            double cres = 0.0;
            for (double s : sweep)
                for (double t : sweep)
                    cres = std::max(cres,
                                    verify_cocycle_identity(w, s, t, corpus, tol).max_residual);
            double udef = 0.0;
            for (const GridFunction& f : corpus)
                for (double t : sweep)
                    udef = std::max(udef, unitarity_defect(w, f, t));
            const double mres =
                verify_markov_m1(w, 1.0, {indicator(grid, -1.5, -0.25)}, 1e-12).max_residual;
            rep.rows.push_back({v, name, cres, udef, mres});
            if (cres > tol || udef > tol || mres > 1e-12) ok[static_cast<int>(v)] = false;
        }
    }
    const bool plus_ok = ok[static_cast<int>(CocycleVariant::plus_corrected)];
    const bool shift_ok = ok[static_cast<int>(CocycleVariant::shift_first)];
    rep.unique_winner = plus_ok != shift_ok;
    rep.selected = plus_ok ? CocycleVariant::plus_corrected : CocycleVariant::shift_first;
    return rep;
}

}  // namespace coclab
