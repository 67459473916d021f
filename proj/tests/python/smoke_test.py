"""Smoke tests for the python bindings: a quick pass over each subsystem."""

import math
import sys

import cocycle_lab as cl


def approx(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    grid = cl.build_grid(-8.0, 8.0, 1024)
    assert grid.n == 1024 and approx(grid.dx, 1.0 / 64)

    chi = cl.indicator(grid, 0.0, 1.0)
    assert approx(chi.norm2(), 1.0, 1e-12)

    shifted, lost = cl.shift(chi, -1.0)
    assert lost == 0.0
    assert approx((shifted - cl.indicator(grid, 1.0, 2.0)).norm(), 0.0, 1e-14)

    b = cl.BlaschkeProduct([-1.0 + 0.0j])
    assert approx(cl.blaschke_eval(b, 0.5 + 0.0j).real, -1.0 / 3, 1e-14)

    mchi = cl.apply_inner_multiplier(b, chi)
    assert approx(mchi.norm(), chi.norm(), 1e-6)

    model = cl.orthonormalize_exponentials(b, grid)
    assert model.dim() == 1 and model.frequencies == [0.0]
    leak = cl.model_projection(model, mchi, cl.ModelProjection.onto_Vperp)
    assert leak.norm() < 1e-6

    w = cl.make_cocycle(b, grid)
    corpus = cl.make_verification_corpus(grid)
    assert len(corpus) >= 8
    rep = cl.verify_cocycle_identity(w, 0.5, 0.5, corpus)
    assert rep["pass"], rep
    m1 = cl.verify_markov_m1(w, 1.0, [cl.indicator(grid, -2.0, -1.0)])
    assert m1["max_residual"] == 0.0

    # identity cocycle collapses completely
    w0 = cl.make_cocycle(cl.BlaschkeProduct([]), grid)
    f = corpus[0]
    assert approx((cl.cocycle_apply(w0, f, -1.0) - f).norm(), 0.0, 1e-14)

    batch = cl.sample_paths(2.0 ** -8, 1.0, 512, 7)
    path = batch.path(0)
    assert path == batch.path(0)  # reproducible
    cfg = cl.constant_drift_config(1.0, cl.WienerVariant.girsanov_unitary, 1.0)
    iso = cl.mc_isometry_test(batch, cfg, [0.5])
    assert abs(iso["max_abs_z"]) <= 4.0  # small batch, loose bound

    b3 = cl.asymptotic_check_b3(b, 1e3)
    assert b3["pass"] and approx(b3["predicted"], -2.0, 1e-12)

    hs = cl.hs_defect_norm(w, 1.0, 64)
    assert hs["total"] > 0 and hs["basis_dim"] == 64

    vshift = cl.make_shift_semigroup(grid)
    assert cl.index_estimate(vshift, 16 * grid.dx) == 1

    mart = cl.mc_density_martingale(batch, cfg)
    assert abs(mart["z"]) <= 4.0

    try:
        cl.parse_config_text('{"zerros": []}')
    except Exception as e:
        assert "zerros" in str(e)
    else:
        raise AssertionError("strict parsing accepted an unknown key")

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
