#pragma once

#include "coclab/cocycle.hpp"

namespace coclab {

// Exponential Riesz family on [0, t]: f_k = exp(mu_k x) with
// mu_k = -1/(2|k|) + i 2 pi k / t for k != 0.  The formula is undefined at
// k = 0; mu_0 = -1/2 keeps the family complete and can be dropped with
// include_k0 = false.
struct RieszExponentialBasis {
    double t = 0.0;
    int k_range = 0;
    bool include_k0 = true;
    std::vector<int> ks;               // 0 (optional), 1, -1, 2, -2, ...
    std::vector<cplx> mu;              // matching ks
    std::vector<GridFunction> samples;
    double frame_lower_bound = 0.0;    // smallest singular value of the
                                       // normalized cross-Gram matrix
};

RieszExponentialBasis make_riesz_basis(const GridSpec& grid, double t, int K,
                                       bool include_k0 = true);

struct HsReport {
    double t = 0.0;
    int basis_dim = 0;
    std::vector<double> partial_sums_r1;
    std::vector<double> partial_sums_r2;
    std::vector<double> terms_r2;       // per-|k| for the series study
    double tail_slope = 0.0;            // log-log slope of the r2 terms
    double backend_gap = 0.0;           // max relative causal-vs-fft term gap
    double total = 0.0;
};

// Squared Hilbert-Schmidt norm of W_{-t} - I on the half line, summed over
// the cell basis at resolution basis_dim (cells covering [0, x_max]); the
// refinement study re-runs the construction at the derived resolution.
// r1/r2 are the contributions of the shifted-rotation part (input support
// [t, inf)) and the multiplier part (input support [0, t)); they add up to
// the total exactly.
HsReport hs_defect_norm(const MarkovianCocycle& w, double t, int basis_dim);

// The two series of the innerness argument: the literal rotation-defect
// series over the cell basis and the multiplier-defect series over the
// Riesz exponentials, with the fitted decay slope of the latter.
HsReport series_r1_r2(const MarkovianCocycle& w, double t, int K);

struct FeldmanReport {
    std::vector<int> dims;
    std::vector<double> covariance_change;  // ||R - W* R W||_HS per block
    std::vector<double> commutator_hs;      // ||W R - R W||_HS per block
    double saturation_ratio = 0.0;          // last/previous commutator value
    bool pass = false;
};

// Finite-dimensional Gaussian-equivalence diagnostics: W_{-t} assembled
// densely on the half line, diagonal covariance r_j on the cell basis,
// norms reported on the leading d x d blocks for each d in dims.
FeldmanReport feldman_check(const BlaschkeProduct& b, const GridSpec& grid,
                            const std::vector<int>& dims, const std::vector<double>& R_diag,
                            double t = 1.0,
                            CocycleVariant variant = CocycleVariant::plus_corrected,
                            double saturation_tol = 0.10);

}  // namespace coclab
