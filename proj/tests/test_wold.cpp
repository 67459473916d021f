#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "coclab/wold.hpp"

using namespace coclab;

namespace {
const GridSpec kGrid = build_grid(-8.0, 8.0, 512);
}

TEST_CASE("defect-rank index of the pure right shift") {
    const IsometrySemigroup v = make_shift_semigroup(kGrid);
    CHECK(index_estimate(v, kGrid.dx()) == 1);
    CHECK(index_estimate(v, 16.0 * kGrid.dx()) == 1);
    CHECK_THROWS_AS(index_estimate(v, 0.0), std::invalid_argument);
}

TEST_CASE("defect-rank index of the perturbed semigroup") {
    const MarkovianCocycle w = make_cocycle(BlaschkeProduct({cplx(-1.0, 0.0)}), kGrid);
    const IsometrySemigroup v = make_perturbed_semigroup(w);
    CHECK(index_estimate(v, 16.0 * kGrid.dx()) == 1);
}

TEST_CASE("pure shift is completely nonunitary") {
    const IsometrySemigroup v = make_shift_semigroup(kGrid);
    const ModelSpace m = orthonormalize_exponentials(BlaschkeProduct{}, kGrid);
    const WoldSplit split = wold_split(v, m);
    CHECK(split.converged);
    CHECK(split.unitary_part.basis.empty());
    CHECK(unitary_part_spectrum(split, v, 1.0).empty());
}

TEST_CASE("unitary part of the perturbed semigroup is the model space") {
    const MarkovianCocycle w =
        make_cocycle(BlaschkeProduct({cplx(-1.0, 0.0), cplx(-2.0, 0.0)}), kGrid);
    const IsometrySemigroup v = make_perturbed_semigroup(w);
    const WoldSplit split = wold_split(v, w.model);
    CHECK(split.converged);
    CHECK(split.unitary_part.basis.size() == 2);
    REQUIRE(split.angles.size() == 2);
    for (double a : split.angles) CHECK(a < 1e-4);

    // H1 is orthogonal to the shift-part witnesses on the half line; the
    // window view adds truncated-tail overlap at the few-1e-6 scale
    CHECK(split.max_witness_overlap < 1e-6);
    for (const GridFunction& h : split.unitary_part.basis)
        for (const GridFunction& wit : split.shift_part_witness)
            CHECK(std::abs(inner_product(h, wit)) < 5e-6 * wit.norm());

    // H1 reduces the semigroup
    for (const GridFunction& h : split.unitary_part.basis) {
        const GridFunction vh = v.apply(h, 1.0);
        GridFunction proj(kGrid);
        for (const GridFunction& q : split.unitary_part.basis)
            axpy(proj, inner_product(vh, q), q);
        CHECK((vh - proj).norm() < 1e-5);
    }
}

TEST_CASE("spectrum of the compressed unitary part") {
    const MarkovianCocycle w = make_cocycle_with_rotation(
        BlaschkeProduct({cplx(-1.0, 0.0), cplx(-2.0, 0.0)}), kGrid, {0.0, 1.0});
    const IsometrySemigroup v = make_perturbed_semigroup(w);
    const WoldSplit split = wold_split(v, w.model);
    REQUIRE(split.converged);

    // frequencies {0,1} at t = pi give {1, -1}; pi is not node-aligned and
    // the rotation channel handles it exactly
    const std::vector<cplx> eig = unitary_part_spectrum(split, v, std::numbers::pi);
    REQUIRE(eig.size() == 2);
    for (const cplx& e : eig) CHECK(std::abs(std::abs(e) - 1.0) < 1e-6);
    const double to_plus = std::min(std::abs(eig[0] - cplx(1, 0)), std::abs(eig[1] - cplx(1, 0)));
    const double to_minus =
        std::min(std::abs(eig[0] - cplx(-1, 0)), std::abs(eig[1] - cplx(-1, 0)));
    CHECK(to_plus < 1e-4);
    CHECK(to_minus < 1e-4);

    const std::vector<cplx> eig1 = unitary_part_spectrum(split, v, 1.0);
    bool has_one = false;
    for (const cplx& e : eig1)
        if (std::abs(e - cplx(1.0, 0.0)) < 1e-4) has_one = true;
    CHECK(has_one);

    WoldSplit unconverged = split;
    unconverged.converged = false;
    CHECK_THROWS_AS(unitary_part_spectrum(unconverged, v, 1.0), std::runtime_error);
}

TEST_CASE("perturbed spiral has orthogonal increments") {
    const MarkovianCocycle w0 = make_cocycle(BlaschkeProduct{}, kGrid);
    const IncrementReport r0 =
        noncorrelated_increments_check(w0, {-2.0, -1.0, 0.0, 1.0, 2.0});
    CHECK(r0.max_offdiag == 0.0);

    const MarkovianCocycle w = make_cocycle(BlaschkeProduct({cplx(-1.0, 0.0)}), kGrid);
    const IncrementReport r = noncorrelated_increments_check(w, {-2.0, -1.0, 0.0, 1.0});
    CHECK(r.max_offdiag <= 1e-6);
    CHECK(r.pass);

    CHECK_THROWS_AS(noncorrelated_increments_check(w, {0.0, 1.0}), std::invalid_argument);
}
