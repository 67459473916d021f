#include "coclab/wiener.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coclab {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
        const std::array<std::uint32_t, 4> next = {
            static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
            static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
            static_cast<std::uint32_t>(p0)};
        ctr = next;
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

double philox_normal(std::uint64_t seed, std::uint64_t path, std::uint64_t idx) {
    // one block yields four uniforms -> four normals via Box-Muller
    const std::uint64_t blk = idx / 4;
    const unsigned lane = static_cast<unsigned>(idx % 4);
    const std::array<std::uint32_t, 4> r = Philox4x32::block(
        {static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32),
         static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    auto uni = [](std::uint32_t x) {
        return (static_cast<double>(x) + 1.0) * 0x1.0p-32;  // in (0, 1]
    };
    const unsigned pair = lane / 2;
    const double u1 = uni(r[2 * pair]);
    const double u2 = uni(r[2 * pair + 1]);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return (lane % 2 == 0) ? rad * std::cos(ang) : rad * std::sin(ang);
}

int BrownianBatch::index_of(double t) const {
    const double pos = (t + horizon) / dt;
    const long j = std::lround(pos);
    if (std::abs(pos - j) > 1e-9 * std::max(1.0, std::abs(pos)))
        throw std::invalid_argument("BrownianBatch: time is not on the path lattice");
    if (j < 0 || j >= n_times())
        throw std::out_of_range("BrownianBatch: time beyond the simulated horizon");
    return static_cast<int>(j);
}

std::vector<double> BrownianBatch::path(long p) const {
    const int M = steps_per_side();
    const double sdt = std::sqrt(dt);
    // one Philox block feeds four Box-Muller normals
    std::vector<double> incr(2 * M);
    for (int blk = 0; 4 * blk < 2 * M; ++blk) {
        const std::array<std::uint32_t, 4> r = Philox4x32::block(
            {static_cast<std::uint32_t>(blk), 0u, static_cast<std::uint32_t>(p),
             static_cast<std::uint32_t>(static_cast<std::uint64_t>(p) >> 32)},
            {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
        auto uni = [](std::uint32_t x) { return (static_cast<double>(x) + 1.0) * 0x1.0p-32; };
        for (int pair = 0; pair < 2; ++pair) {
            const double rad = std::sqrt(-2.0 * std::log(uni(r[2 * pair])));
            const double ang = 2.0 * std::numbers::pi * uni(r[2 * pair + 1]);
            const int j0 = 4 * blk + 2 * pair;
            if (j0 < 2 * M) incr[j0] = rad * std::cos(ang);
            if (j0 + 1 < 2 * M) incr[j0 + 1] = rad * std::sin(ang);
        }
    }
    std::vector<double> B(n_times(), 0.0);
    // increment j lives on [t_j, t_{j+1}); B is pinned at index M (time 0)
    for (int j = M; j < 2 * M; ++j) B[j + 1] = B[j] + sdt * incr[j];
    for (int j = M - 1; j >= 0; --j) B[j] = B[j + 1] - sdt * incr[j];
    return B;
}

BrownianBatch sample_paths(double dt, double horizon, long n_paths, std::uint64_t seed) {
    if (!(dt > 0.0) || !(horizon > 0.0) || n_paths < 1)
        throw std::invalid_argument("sample_paths: need dt > 0, horizon > 0, n_paths >= 1");
    const double steps = horizon / dt;
    if (std::abs(steps - std::lround(steps)) > 1e-9)
        throw std::invalid_argument("sample_paths: horizon must be a multiple of dt");
    if (2.0 * steps > 1.0e7) throw std::invalid_argument("sample_paths: path too long");
    BrownianBatch b;
    b.dt = dt;
    b.horizon = horizon;
    b.n_paths = n_paths;
    b.seed = seed;
    return b;
}

namespace {

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

BatchStats batch_stats(const BrownianBatch& b, double s) {
    const int js = b.index_of(s);
    Kahan m1, m2;
    for (long p = 0; p < b.n_paths; ++p) {
        const std::vector<double> B = b.path(p);
        m1.add(B[js]);
        m2.add(B[js] * B[js]);
    }
    BatchStats st;
    const double n = static_cast<double>(b.n_paths);
    st.mean = m1.sum / n;
    st.variance = m2.sum / n - st.mean * st.mean;
    st.se_mean = std::sqrt(std::max(st.variance, 0.0) / n);
    return st;
}

WienerVariant wiener_variant_from_string(const std::string& s) {
    if (s == "literal_W") return WienerVariant::literal_W;
    if (s == "girsanov_unitary") return WienerVariant::girsanov_unitary;
    throw std::invalid_argument("unknown wiener variant '" + s + "'");
}

std::string to_string(WienerVariant v) {
    return v == WienerVariant::literal_W ? "literal_W" : "girsanov_unitary";
}

WienerCocycleConfig constant_drift_config(double a_value, WienerVariant v, double t) {
    WienerCocycleConfig cfg;
    cfg.a = [a_value](double) { return a_value; };
    cfg.variant = v;
    cfg.t = t;
    return cfg;
}

namespace {

// left-point sums on the path lattice; signed for s < 0
double ito_integral(const BrownianBatch& b, const std::vector<double>& B,
                    const std::function<double(double)>& a, double from, double to) {
    if (from == to) return 0.0;
    const double sign = (to >= from) ? 1.0 : -1.0;
    const int j0 = b.index_of(std::min(from, to));
    const int j1 = b.index_of(std::max(from, to));
    double acc = 0.0;
    for (int j = j0; j < j1; ++j) acc += a(b.time_at(j)) * (B[j + 1] - B[j]);
    return sign * acc;
}

double lebesgue_integral(const BrownianBatch& b, const std::function<double(double)>& a,
                         double from, double to, bool squared) {
    if (from == to) return 0.0;
    const double sign = (to >= from) ? 1.0 : -1.0;
    const int j0 = b.index_of(std::min(from, to));
    const int j1 = b.index_of(std::max(from, to));
    double acc = 0.0;
    for (int j = j0; j < j1; ++j) {
        const double av = a(b.time_at(j));
        acc += (squared ? av * av : av) * b.dt;
    }
    return sign * acc;
}

}  // namespace

std::vector<double> apply_wiener_cocycle(const BrownianBatch& b, const WienerCocycleConfig& cfg,
                                         double s) {
    if (s > cfg.t + 1e-12)
        throw std::invalid_argument("apply_wiener_cocycle: probe needs s <= t");
    std::vector<double> out(static_cast<size_t>(b.n_paths));
    for (long p = 0; p < b.n_paths; ++p) {
        const std::vector<double> B = b.path(p);
        const int js = b.index_of(s);
        const double a2 = lebesgue_integral(b, cfg.a, 0.0, cfg.t, true);
        double value;
        if (cfg.variant == WienerVariant::girsanov_unitary) {
            const double adB_t = ito_integral(b, B, cfg.a, 0.0, cfg.t);
            const double adx_s = lebesgue_integral(b, cfg.a, 0.0, s, false);
            value = std::exp(-0.5 * adB_t - 0.25 * a2) * (B[js] + adx_s);
        } else {
            const double adB_s = ito_integral(b, B, cfg.a, 0.0, s);
            const double adB_t = ito_integral(b, B, cfg.a, 0.0, cfg.t);
            value = std::exp(-0.5 * adB_s - 0.25 * a2) * (B[js] + adB_t);
        }
        out[static_cast<size_t>(p)] = value;
    }
    return out;
}

McReport mc_isometry_test(const BrownianBatch& b, const WienerCocycleConfig& cfg,
                          const std::vector<double>& probe_times, double threshold) {
    McReport rep;
    rep.threshold = threshold;
    // one sweep over the paths, all probes at once
    const size_t np = probe_times.size();
    std::vector<Kahan> M1(np), M2(np);
    for (long p = 0; p < b.n_paths; ++p) {
        const std::vector<double> B = b.path(p);
        const double a2 = lebesgue_integral(b, cfg.a, 0.0, cfg.t, true);
        const double adB_t = ito_integral(b, B, cfg.a, 0.0, cfg.t);
        for (size_t k = 0; k < np; ++k) {
            const double s = probe_times[k];
            if (s > cfg.t + 1e-12)
                throw std::invalid_argument("mc_isometry_test: probe needs s <= t");
            double v;
            if (cfg.variant == WienerVariant::girsanov_unitary) {
                v = std::exp(-0.5 * adB_t - 0.25 * a2) *
                    (B[b.index_of(s)] + lebesgue_integral(b, cfg.a, 0.0, s, false));
            } else {
                v = std::exp(-0.5 * ito_integral(b, B, cfg.a, 0.0, s) - 0.25 * a2) *
                    (B[b.index_of(s)] + adB_t);
            }
            M1[k].add(v * v);
            M2[k].add(v * v * v * v);
        }
    }
    for (size_t k = 0; k < np; ++k) {
        const double s = probe_times[k];
        Kahan& m1 = M1[k];
        Kahan& m2 = M2[k];
        const double n = static_cast<double>(b.n_paths);
        const double mean = m1.sum / n;
        const double var = std::max(m2.sum / n - mean * mean, 0.0);
        const double se = std::sqrt(var / n);
        const double target = std::abs(s);
        double z;
        if (se < 1e-300) {
            if (std::abs(mean - target) < 1e-12 * std::max(1.0, target)) {
                z = 0.0;
            } else {
                throw std::runtime_error("mc_isometry_test: degenerate variance estimate");
            }
        } else {
            z = (mean - target) / se;
        }
        rep.z_scores.push_back(z);
        rep.details.push_back(mean);
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(z));
    }
    rep.pass = rep.max_abs_z <= threshold;
    return rep;
}

McReport mc_density_martingale(const BrownianBatch& b, const WienerCocycleConfig& cfg,
                               double threshold) {
    Kahan m1, m2;
    for (long p = 0; p < b.n_paths; ++p) {
        const std::vector<double> B = b.path(p);
        const double adB = ito_integral(b, B, cfg.a, 0.0, cfg.t);
        const double a2 = lebesgue_integral(b, cfg.a, 0.0, cfg.t, true);
        const double d = std::exp(-adB - 0.5 * a2);
        m1.add(d);
        m2.add(d * d);
    }
    const double n = static_cast<double>(b.n_paths);
    const double mean = m1.sum / n;
    const double var = std::max(m2.sum / n - mean * mean, 0.0);
    const double se = std::sqrt(var / n);
    McReport rep;
    rep.threshold = threshold;
    const double z = (se < 1e-300) ? 0.0 : (mean - 1.0) / se;
    rep.z_scores.push_back(z);
    rep.details.push_back(mean);
    rep.max_abs_z = std::abs(z);
    rep.pass = rep.max_abs_z <= threshold;
    return rep;
}

namespace {

// Pathwise realization of the transformed functional: a working copy of the
// path, a validity window (frame shifts clip the edges of the simulated
// horizon) and an accumulated half-log-density.  Composition order is
// outermost operator first: (w_t G)(B) = rho_t(B)^{1/2} G(T_t B), so w_t
// touches the original path before the inner maps see it.
struct PathState {
    const BrownianBatch* batch;
    std::vector<double> B;
    int lo = 0, hi = 0;  // valid index range, inclusive
    double half_log_density = 0.0;

    double at(int j) const {
        if (j < lo || j > hi)
            throw std::out_of_range("mc_cocycle_test: probe shifted beyond the horizon");
        return B[static_cast<size_t>(j)];
    }
};

void apply_w(PathState& st, const WienerCocycleConfig& cfg, double t) {
    const BrownianBatch& b = *st.batch;
    const int j0 = b.index_of(0.0);
    const int jt = b.index_of(t);
    if (j0 < st.lo || jt > st.hi)
        throw std::out_of_range("mc_cocycle_test: density window beyond the horizon");
    // density on the current path, then the drift of the point map
    double adB = 0.0, a2 = 0.0;
    for (int j = j0; j < jt; ++j) {
        const double av = cfg.a(b.time_at(j));
        adB += av * (st.B[j + 1] - st.B[j]);
        a2 += av * av * b.dt;
    }
    st.half_log_density += -0.5 * adB - 0.25 * a2;
    double acc = 0.0;
    for (int j = j0; j <= st.hi; ++j) {
        st.B[j] += acc;  // B(r) + int_0^{min(r,t)} a dx on r >= 0
        if (j < jt) acc += cfg.a(b.time_at(j)) * b.dt;
    }
}

void apply_shift(PathState& st, double t) {
    const BrownianBatch& b = *st.batch;
    const int m = b.index_of(t) - b.index_of(0.0);
    const int n = b.n_times();
    const int nlo = std::max(0, st.lo - m), nhi = std::min(n - 1, st.hi - m);
    std::vector<double> out(n, 0.0);
    for (int j = nlo; j <= nhi; ++j) out[j] = st.B[j + m];
    const int j0 = b.index_of(0.0);
    if (j0 < nlo || j0 > nhi)
        throw std::out_of_range("mc_cocycle_test: pin time beyond the horizon");
    const double pin = out[j0];
    for (int j = nlo; j <= nhi; ++j) out[j] -= pin;
    st.B = std::move(out);
    st.lo = nlo;
    st.hi = nhi;
}

}  // namespace

McReport mc_cocycle_test(const BrownianBatch& b, const WienerCocycleConfig& cfg, double s,
                         double t, const std::vector<double>& probe_times, double threshold) {
    if (cfg.variant != WienerVariant::girsanov_unitary)
        throw std::invalid_argument("mc_cocycle_test: composed maps are defined for the "
                                    "unitary variant only");
    McReport rep;
    rep.threshold = threshold;
    for (double r : probe_times) {
        if (r > std::min(0.0, t + s) + 1e-12)
            throw std::invalid_argument("mc_cocycle_test: probes must satisfy r <= 0");
        Kahan md, m2;
        double max_abs = 0.0;
        for (long p = 0; p < b.n_paths; ++p) {
            const std::vector<double> base = b.path(p);
            const int last = b.n_times() - 1;

            PathState lhs{&b, base, 0, last, 0.0};
            apply_w(lhs, cfg, t + s);
            const double vl = std::exp(lhs.half_log_density) * lhs.at(b.index_of(r));

            // w_{t+s} vs w_t . alpha_t . w_s . alpha_{-t}, outermost first
            PathState rhs{&b, base, 0, last, 0.0};
            apply_w(rhs, cfg, t);
            apply_shift(rhs, t);
            apply_w(rhs, cfg, s);
            apply_shift(rhs, -t);
            const double vr = std::exp(rhs.half_log_density) * rhs.at(b.index_of(r));

            const double d = vl - vr;
            md.add(d);
            m2.add(d * d);
            max_abs = std::max(max_abs, std::abs(vl));
        }
        const double n = static_cast<double>(b.n_paths);
        const double mean = md.sum / n;
        const double var = std::max(m2.sum / n - mean * mean, 0.0);
        const double se = std::sqrt(var / n);
        const double z = (se < 1e-14 * std::max(1.0, max_abs)) ? 0.0 : mean / se;
        rep.z_scores.push_back(z);
        rep.details.push_back(mean);
        rep.max_abs_z = std::max(rep.max_abs_z, std::abs(z));
    }
    rep.pass = rep.max_abs_z <= threshold;
    return rep;
}

}  // namespace coclab
