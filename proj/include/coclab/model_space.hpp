#pragma once

#include <vector>

#include "coclab/blaschke.hpp"
#include "coclab/grid.hpp"

namespace coclab {

// The orthocomplement of V = M_Theta H_{0]}, spanned by the successive
// orthogonalization of the exponentials exp(zero_k x), together with the
// rotation semigroup R_t g_k = exp(i Im(zero_k) t) g_k.
//
// All half-line operators work on an internal lattice that extends past
// x_max so that exponential tails are resolved below 1e-10; the public
// basis_g are the restrictions to the grid.
class ModelSpace {
public:
    BlaschkeProduct blaschke;
    std::vector<GridFunction> basis_g;   // orthonormal on the grid to ~1e-8
    std::vector<double> frequencies;     // Im(zero_k), in zero order

    ModelSpace() = default;

    const GridSpec& grid() const { return grid_; }
    int dim() const { return static_cast<int>(basis_g.size()); }

    // --- internal half-line machinery (extended lattice, x >= 0) ---
    int ext_size() const { return ext_; }
    int pos_size() const { return npos_; }
    double step() const { return dx_; }
    const detail::AllPass& multiplier() const { return allpass_; }
    const std::vector<std::vector<cplx>>& ext_basis() const { return gext_; }

    // coefficients <u, g_k> on the extended lattice
    std::vector<cplx> ext_coefficients(const std::vector<cplx>& u) const;
    // u -> sum_k phase_k <u, g_k> g_k
    std::vector<cplx> ext_vperp_image(const std::vector<cplx>& u,
                                      const std::vector<cplx>& phases) const;

    friend ModelSpace orthonormalize_exponentials(const BlaschkeProduct& b, const GridSpec& grid);

private:
    GridSpec grid_;
    int npos_ = 0;
    int ext_ = 0;
    double dx_ = 0.0;
    std::vector<std::vector<cplx>> gext_;
    detail::AllPass allpass_;
};

// modified Gram-Schmidt (one reorthogonalization pass) of the sampled
// exponentials, in the order of the zeros
ModelSpace orthonormalize_exponentials(const BlaschkeProduct& b, const GridSpec& grid);

enum class ModelProjection { onto_Vperp, onto_V };

// P_Vperp f = sum_k <f, g_k> g_k and P_V = I - P_Vperp on H_{0]}
GridFunction model_projection(const ModelSpace& m, const GridFunction& f, ModelProjection which);

// unitary rotation on span{g_k}: multiplies the k-th coefficient by
// exp(i frequencies_k t); both signs of t allowed
GridFunction rotation_apply(const ModelSpace& m, const GridFunction& f_in_vperp, double t,
                            double residual_tol = 1e-8);

}  // namespace coclab
