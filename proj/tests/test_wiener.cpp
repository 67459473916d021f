#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coclab/wiener.hpp"

using namespace coclab;

TEST_CASE("philox known answers") {
    // reference vectors for the 10-round 4x32 configuration
    const auto r0 = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(r0[0] == 0x6627e8d5u);
    CHECK(r0[1] == 0xe169c58du);
    CHECK(r0[2] == 0xbc57ac4cu);
    CHECK(r0[3] == 0x9b00dbd8u);
    const auto r1 = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                      {0xffffffffu, 0xffffffffu});
    CHECK(r1[0] == 0x408f276du);
    CHECK(r1[1] == 0x41c83b0eu);
    CHECK(r1[2] == 0xa20bc7c6u);
    CHECK(r1[3] == 0x6d5451fdu);
}

TEST_CASE("paths are reproducible and pinned at zero") {
    const BrownianBatch a = sample_paths(0x1.0p-8, 1.0, 4, 77);
    const BrownianBatch b = sample_paths(0x1.0p-8, 1.0, 4, 77);
    for (long p = 0; p < 4; ++p) {
        const auto pa = a.path(p), pb = b.path(p);
        CHECK(pa == pb);  // bit-identical
        CHECK(pa[a.index_of(0.0)] == 0.0);
    }
    const BrownianBatch c = sample_paths(0x1.0p-8, 1.0, 4, 78);
    CHECK(a.path(0) != c.path(0));

    CHECK_THROWS_AS(sample_paths(0.1, 1.05, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_paths(1e-9, 100.0, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(a.index_of(2.0), std::out_of_range);
}

TEST_CASE("path increments agree with the stream primitive") {
    const BrownianBatch b = sample_paths(0x1.0p-8, 1.0, 3, 123);
    const int M = b.steps_per_side();
    const double sdt = std::sqrt(b.dt);
    for (long p = 0; p < b.n_paths; ++p) {
        const std::vector<double> B = b.path(p);
        for (int j : {0, 1, M - 1, M, M + 1, 2 * M - 1}) {
            const double incr = B[j + 1] - B[j];
            const double draw = sdt * philox_normal(b.seed, static_cast<std::uint64_t>(p),
                                                    static_cast<std::uint64_t>(j));
            CHECK(std::abs(incr - draw) < 1e-15);  // cumulative-sum rounding only
        }
    }
}

TEST_CASE("batch moments of B(s)") {
    const BrownianBatch b = sample_paths(0x1.0p-8, 1.5, 20000, 20206);
    for (double s : {1.0, -1.0}) {
        const BatchStats st = batch_stats(b, s);
        CHECK(std::abs(st.mean) <= 4.0 / std::sqrt(20000.0));
        CHECK(st.variance == doctest::Approx(1.0).epsilon(0.10));
    }
}

TEST_CASE("zero drift collapses the transformation exactly") {
    const BrownianBatch b = sample_paths(0x1.0p-8, 1.0, 64, 5);
    for (WienerVariant v : {WienerVariant::girsanov_unitary, WienerVariant::literal_W}) {
        const WienerCocycleConfig cfg = constant_drift_config(0.0, v, 1.0);
        const std::vector<double> wv = apply_wiener_cocycle(b, cfg, 0.5);
        for (long p = 0; p < b.n_paths; ++p)
            CHECK(wv[static_cast<size_t>(p)] == b.path(p)[b.index_of(0.5)]);
    }
}

TEST_CASE("future increments are untouched by definition") {
    // w_t(B(t+s) - B(t)) = B(t+s) - B(t): the transformation acts as the
    // identity on increments after t, so the drifted point map must leave
    // them literally unchanged
    const BrownianBatch b = sample_paths(0x1.0p-8, 2.0, 16, 9);
    const double t = 0.5, s = 0.75;
    for (long p = 0; p < b.n_paths; ++p) {
        const std::vector<double> B = b.path(p);
        // add the Girsanov drift of w_t: it is constant past t, so the
        // increment over [t, t+s] is untouched
        const double drift_ts = std::min(t + s, t);  // a == 1
        const double drift_t = std::min(t, t);
        const double incr_before = B[b.index_of(t + s)] - B[b.index_of(t)];
        const double incr_after =
            (B[b.index_of(t + s)] + drift_ts) - (B[b.index_of(t)] + drift_t);
        CHECK(std::abs(incr_after - incr_before) < 1e-12);
    }
}

TEST_CASE("isometry statistics for the unitary variant") {
    const BrownianBatch b = sample_paths(0x1.0p-8, 1.5, 20000, 20206);
    const WienerCocycleConfig cfg = constant_drift_config(1.0, WienerVariant::girsanov_unitary,
                                                          1.0);
    const McReport iso = mc_isometry_test(b, cfg, {0.5, 1.0});
    CHECK(iso.max_abs_z <= 3.0);
    CHECK(iso.details[0] == doctest::Approx(0.5).epsilon(0.1));
    CHECK(iso.details[1] == doctest::Approx(1.0).epsilon(0.1));
    CHECK(iso.pass);

    const McReport mart = mc_density_martingale(b, cfg);
    CHECK(mart.max_abs_z <= 3.0);
    CHECK(mart.details[0] == doctest::Approx(1.0).epsilon(0.05));

    CHECK_THROWS_AS(mc_isometry_test(b, cfg, {1.25}), std::invalid_argument);
}

TEST_CASE("the printed variant is a recorded reconciliation datum") {
    // for a == 1, t = 1: E|w_t(B(1/2))|^2 = e^{-1/2} e^{1/4}(4 s + 4 s^2 + t - s)
    // at s = 1/2, far from the unitary target 1/2
    const BrownianBatch b = sample_paths(0x1.0p-8, 1.5, 20000, 20206);
    const WienerCocycleConfig lit = constant_drift_config(1.0, WienerVariant::literal_W, 1.0);
    const McReport iso = mc_isometry_test(b, lit, {0.5}, 1e9);
    const double analytic = std::exp(-0.5) * std::exp(0.25) * (2.0 + 1.0 + 0.5);
    CHECK(iso.details[0] == doctest::Approx(analytic).epsilon(0.05));
    CHECK(std::abs(iso.details[0] - 0.5) > 1.0);  // clearly not isometric
}

TEST_CASE("multiplicative cocycle law holds path by path") {
    const BrownianBatch b = sample_paths(0x1.0p-8, 2.0, 2000, 31);
    const WienerCocycleConfig cfg = constant_drift_config(1.0, WienerVariant::girsanov_unitary,
                                                          1.0);
    const McReport coc = mc_cocycle_test(b, cfg, 0.5, 0.5, {-0.5, -1.0});
    CHECK(coc.max_abs_z == 0.0);  // exact equality, not merely statistical
    CHECK(coc.pass);

    // probes shifted beyond the simulated horizon are rejected
    const BrownianBatch tight = sample_paths(0x1.0p-8, 1.0, 8, 31);
    CHECK_THROWS_AS(mc_cocycle_test(tight, cfg, 0.5, 0.5, {-0.75}), std::out_of_range);
    CHECK_THROWS_AS(mc_cocycle_test(b, constant_drift_config(1.0, WienerVariant::literal_W, 1.0),
                                    0.5, 0.5, {-0.5}),
                    std::invalid_argument);
}
