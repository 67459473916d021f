#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coclab/model_space.hpp"

using namespace coclab;

namespace {
const GridSpec kGrid = build_grid(-8.0, 8.0, 1024);
}

TEST_CASE("single zero gives the normalized exponential") {
    const ModelSpace m = orthonormalize_exponentials(BlaschkeProduct({cplx(-1.0, 0.0)}), kGrid);
    REQUIRE(m.dim() == 1);
    CHECK(std::abs(inner_product(m.basis_g[0], m.basis_g[0]) - 1.0) < 1e-12);
    const GridFunction expect = sample_function(kGrid, [](double x) -> cplx {
        return x >= 0.0 ? std::sqrt(2.0) * std::exp(-x) : 0.0;
    });
    CHECK((m.basis_g[0] - expect).norm() < 1e-3);
    CHECK(m.frequencies[0] == 0.0);
}

TEST_CASE("two zeros follow the hand Gram-Schmidt") {
    const ModelSpace m =
        orthonormalize_exponentials(BlaschkeProduct({cplx(-1.0, 0.0), cplx(-2.0, 0.0)}), kGrid);
    REQUIRE(m.dim() == 2);
    // g2 = 6 e^{-2x} - 4 e^{-x}
    const GridFunction expect = sample_function(kGrid, [](double x) -> cplx {
        return x >= 0.0 ? 6.0 * std::exp(-2.0 * x) - 4.0 * std::exp(-x) : 0.0;
    });
    CHECK((m.basis_g[1] - expect).norm() < 2e-3);

    // Gram close to the identity
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            const cplx gkl = inner_product(m.basis_g[k], m.basis_g[l]);
            CHECK(std::abs(gkl - (k == l ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("degenerate inputs") {
    CHECK(orthonormalize_exponentials(BlaschkeProduct{}, kGrid).dim() == 0);
    // clustered zeros exceed the conditioning budget
    CHECK_THROWS_AS(orthonormalize_exponentials(
                        BlaschkeProduct({cplx(-1.0, 0.0), cplx(-1.0, 1e-7)}), kGrid),
                    std::runtime_error);
    // tails not resolved by the grid extent
    CHECK_THROWS_AS(orthonormalize_exponentials(BlaschkeProduct({cplx(-0.1, 0.0)}), kGrid),
                    std::invalid_argument);
}

TEST_CASE("model space is orthogonal to the multiplier range") {
    const ModelSpace m =
        orthonormalize_exponentials(BlaschkeProduct({cplx(-1.0, 0.0), cplx(-2.0, 1.0)}), kGrid);
    std::vector<GridFunction> corpus;
    corpus.push_back(indicator(kGrid, 0.0, 1.0));
    corpus.push_back(sample_function(kGrid, [](double x) -> cplx {
        return (x >= 0.0 && x < 1.0) ? std::exp(-x) * (1.0 + 0.3 * std::sin(5 * x)) : 0.0;
    }));
    const detail::AllPass filter(m.blaschke, kGrid.dx());
    for (const GridFunction& f : corpus) {
        // on the half-line lattice the range orthogonality is essentially exact
        const int io = kGrid.origin_index();
        std::vector<cplx> buf(m.ext_size(), cplx(0.0));
        for (int i = 0; i < m.pos_size(); ++i) buf[i] = f.values[io + i];
        filter.apply(buf);
        for (int k = 0; k < m.dim(); ++k) {
            cplx ip = 0.0;
            for (int i = 0; i < m.ext_size(); ++i)
                ip += buf[i] * std::conj(m.ext_basis()[k][i]);
            CHECK(std::abs(kGrid.dx() * ip) < 1e-8 * f.norm());
        }
        // the window view pairs the dropped tails, a few 1e-6 at this extent
        const GridFunction mf = apply_inner_multiplier(m.blaschke, f);
        for (const GridFunction& gk : m.basis_g)
            CHECK(std::abs(inner_product(mf, gk)) < 5e-6 * f.norm());
        // projections complement each other exactly
        const GridFunction pv = model_projection(m, mf, ModelProjection::onto_V);
        const GridFunction pvp = model_projection(m, mf, ModelProjection::onto_Vperp);
        CHECK((pv + pvp - mf).norm() == 0.0);
        CHECK(pvp.norm() < 5e-6 * f.norm());
    }
}

TEST_CASE("projection of an exponential onto its own span") {
    const ModelSpace m = orthonormalize_exponentials(BlaschkeProduct({cplx(-1.0, 0.0)}), kGrid);
    const GridFunction f = sample_function(kGrid, [](double x) -> cplx {
        return x >= 0.0 ? std::exp(-x) : 0.0;
    });
    const GridFunction pvp = model_projection(m, f, ModelProjection::onto_Vperp);
    CHECK((pvp - f).norm() < 1e-6 * f.norm());
    CHECK(model_projection(m, f, ModelProjection::onto_V).norm() < 1e-6 * f.norm());

    // empty model space: everything is in V
    const ModelSpace m0 = orthonormalize_exponentials(BlaschkeProduct{}, kGrid);
    CHECK((model_projection(m0, f, ModelProjection::onto_V) - f).norm() == 0.0);
}

TEST_CASE("rotation semigroup on the model space") {
    const ModelSpace m =
        orthonormalize_exponentials(BlaschkeProduct({cplx(-1.0, 1.0), cplx(-2.0, 0.0)}), kGrid);
    REQUIRE(m.frequencies[0] == 1.0);

    // R_pi g_1 = -g_1 for frequency 1
    const GridFunction rot = rotation_apply(m, m.basis_g[0], std::numbers::pi);
    CHECK((rot + m.basis_g[0]).norm() < 1e-10);

    // frequency 0 direction is fixed
    CHECK((rotation_apply(m, m.basis_g[1], 0.7) - m.basis_g[1]).norm() < 1e-10);

    // unitary group law on a combination
    GridFunction f = m.basis_g[0];
    axpy(f, cplx(0.3, 0.4), m.basis_g[1]);
    CHECK(rotation_apply(m, f, 0.7).norm() == doctest::Approx(f.norm()).epsilon(1e-12));
    const GridFunction ab = rotation_apply(m, rotation_apply(m, f, 0.3), 0.4);
    const GridFunction once = rotation_apply(m, f, 0.7);
    CHECK((ab - once).norm() < 1e-12);
    // both signs allowed
    const GridFunction back = rotation_apply(m, rotation_apply(m, f, 0.7), -0.7);
    CHECK((back - f).norm() < 1e-12);

    CHECK_THROWS_AS(rotation_apply(m, indicator(kGrid, 0.0, 1.0), 0.5), std::runtime_error);
}

TEST_CASE("multiplier range is invariant under right shifts") {
    const ModelSpace m =
        orthonormalize_exponentials(BlaschkeProduct({cplx(-1.0, 0.0), cplx(-2.0, 1.0)}), kGrid);
    const GridFunction f = indicator(kGrid, 0.0, 1.0);
    const GridFunction mf = apply_inner_multiplier(m.blaschke, f);
    for (double t : {0.25, 1.0}) {
        const GridFunction shifted = shift(mf, -t).fn;  // right shift
        const GridFunction leak = model_projection(m, shifted, ModelProjection::onto_Vperp);
        CHECK(leak.norm() < 5e-6 * f.norm());
    }
}
