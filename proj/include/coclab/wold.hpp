#pragma once

#include <functional>

#include "coclab/cocycle.hpp"

namespace coclab {

// Semigroup of isometries on the half line x >= 0, either the plain right
// shift or the cocycle-perturbed family W_{-t} T_t.
struct IsometrySemigroup {
    enum class Provenance { pure_shift, perturbed };
    Provenance provenance = Provenance::pure_shift;
    GridSpec grid;
    std::function<GridFunction(const GridFunction&, double)> apply;

    // action on the internal half-line lattice (length ext), used by the
    // dense analyses so that window truncation does not contaminate ranks
    int ext = 0;
    std::function<std::vector<cplx>(const std::vector<cplx>&, double)> apply_ext;
    std::function<std::vector<cplx>(const std::vector<cplx>&, double)> adjoint_ext;
};

IsometrySemigroup make_shift_semigroup(const GridSpec& grid);
IsometrySemigroup make_perturbed_semigroup(const MarkovianCocycle& w);

// Defect-rank index: rank(I - V_t V_t^*) divided by the number of cells in
// [0, t_step).  Throws when the defect spectrum is ambiguous near the rank
// threshold.
int index_estimate(const IsometrySemigroup& v, double t_step);

struct WoldSplit {
    Subspace unitary_part;                    // basis of H1, restricted to the grid
    std::vector<GridFunction> shift_part_witness;  // images spanning H2 approximately
    std::vector<double> angles;               // principal angles of H1 vs span{g_k}
    bool converged = false;
    int iterations = 0;
    int lattice_size = 0;                      // internal iteration lattice
    std::vector<std::vector<cplx>> ext_basis;  // H1 on that lattice
    // max |<h, M_Theta chi>| / ||M_Theta chi|| on the half-line lattice,
    // where window truncation cannot masquerade as an overlap
    double max_witness_overlap = 0.0;
};

// H1 as the intersection of the iterated ranges of V_{t_probe}, by repeated
// application with singular-value truncation at 1e-6
WoldSplit wold_split(const IsometrySemigroup& v, const ModelSpace& m, double t_probe = 2.0,
                     int depth = 18);

// eigenvalues of the compression of V_t to H1; t need not be node-aligned
// (the rotation factor is exact in t, only the residual shift channel snaps
// to the nearest cell)
std::vector<cplx> unitary_part_spectrum(const WoldSplit& split, const IsometrySemigroup& v,
                                        double t);

struct IncrementReport {
    double max_offdiag = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// orthogonality of the perturbed-spiral increments over disjoint intervals
IncrementReport noncorrelated_increments_check(const MarkovianCocycle& w,
                                               const std::vector<double>& spiral_times,
                                               double tol = 1e-6);

}  // namespace coclab
