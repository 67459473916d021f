#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace coclab {

// Philox4x32-10 counter-based generator; random access by (counter, key)
// makes every draw reproducible bit for bit across platforms.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);
};

// standard normal draw number `idx` of stream (`seed`, `path`)
double philox_normal(std::uint64_t seed, std::uint64_t path, std::uint64_t idx);

// Brownian paths on [-horizon, horizon], pinned B(0) = 0, increments of
// variance dt drawn lazily from the counter-based stream.
struct BrownianBatch {
    double dt = 0.0;
    double horizon = 0.0;
    long n_paths = 0;
    std::uint64_t seed = 0;

    int steps_per_side() const { return static_cast<int>(std::lround(horizon / dt)); }
    int n_times() const { return 2 * steps_per_side() + 1; }  // indices 0..2M, time 0 at M

    double time_at(int j) const { return -horizon + j * dt; }
    int index_of(double t) const;

    // path values B(t_j), j = 0..2M, for one path
    std::vector<double> path(long p) const;
};

BrownianBatch sample_paths(double dt, double horizon, long n_paths, std::uint64_t seed);

struct BatchStats {
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
};

// moments of B(s) over the batch (compensated summation)
BatchStats batch_stats(const BrownianBatch& b, double s);

enum class WienerVariant { literal_W, girsanov_unitary };

WienerVariant wiener_variant_from_string(const std::string& s);
std::string to_string(WienerVariant v);

// drift function a(x); constant in the shipped configurations
struct WienerCocycleConfig {
    std::function<double(double)> a = [](double) { return 0.0; };
    WienerVariant variant = WienerVariant::girsanov_unitary;
    double t = 0.0;
};

WienerCocycleConfig constant_drift_config(double a_value, WienerVariant v, double t);

// w_t applied to the probe B(s), s <= t, evaluated per path.
//   girsanov_unitary: exp(-1/2 int_0^t a dB - 1/4 int_0^t a^2 dx) (B(s) + int_0^s a dx)
//   literal_W:        exp(-1/2 int_0^s a dB - 1/4 int_0^t a^2 dx) (B(s) + int_0^t a dB)
// Stochastic integrals are left-point sums on the path lattice.
std::vector<double> apply_wiener_cocycle(const BrownianBatch& b, const WienerCocycleConfig& cfg,
                                         double s);

struct McReport {
    std::vector<double> z_scores;
    double max_abs_z = 0.0;
    double threshold = 3.0;
    bool pass = false;
    std::vector<double> details;  // per-probe sample means
};

// E |w_t(B(s))|^2 against the analytic E |B(s)|^2 = |s|, in MC standard
// errors, for each probe time
McReport mc_isometry_test(const BrownianBatch& b, const WienerCocycleConfig& cfg,
                          const std::vector<double>& probe_times, double threshold = 3.0);

// sample mean of the squared density factor exp(-int a dB - 1/2 int a^2 dx)
// against 1 (martingale property)
McReport mc_density_martingale(const BrownianBatch& b, const WienerCocycleConfig& cfg,
                               double threshold = 3.0);

// per-path comparison of w_{t+s}(B(r)) with the composed map
// w_t . shift_t . w_s . shift_{-t} applied to the same probe
McReport mc_cocycle_test(const BrownianBatch& b, const WienerCocycleConfig& cfg, double s,
                         double t, const std::vector<double>& probe_times,
                         double threshold = 3.0);

}  // namespace coclab
