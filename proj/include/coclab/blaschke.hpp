#pragma once

#include <vector>

#include "coclab/grid.hpp"

namespace coclab {

// Finite Blaschke product on the right half-plane,
//   Theta(lambda) = prod_k (lambda + conj(zero_k)) / (lambda - zero_k),
// all zeros with negative real part and pairwise distinct.
struct BlaschkeProduct {
    std::vector<cplx> zeros;

    BlaschkeProduct() = default;
    explicit BlaschkeProduct(std::vector<cplx> z);

    int degree() const { return static_cast<int>(zeros.size()); }
    double sum_abs_re() const;

    cplx eval(cplx lambda) const;

    // residues c_j of Theta(lambda) = 1 + sum_j c_j / (lambda - zero_j)
    std::vector<cplx> partial_fraction_residues() const;
};

cplx blaschke_eval(const BlaschkeProduct& b, cplx lambda);

enum class MultiplierBackend { causal_convolution, boundary_fft };

// Isometric image M_Theta f for f supported on x >= 0.
// causal_convolution runs the per-pole causal recursion (exact isometry on
// the lattice); boundary_fft multiplies the discrete boundary values by
// Theta(i omega) and inverts, kept as an independent cross-check.
GridFunction apply_inner_multiplier(const BlaschkeProduct& b, const GridFunction& f,
                                    MultiplierBackend backend = MultiplierBackend::causal_convolution);

struct BoundarySpectrum {
    std::vector<double> omegas;
    std::vector<cplx> values;
};

// Discrete boundary values of the Laplace transform of f (supported on
// x >= 0), evaluated on the DFT frequency lattice of a zero-padded copy.
// Parseval holds exactly for this pairing: dx sum|f|^2 = (dw/2pi) sum|F|^2.
BoundarySpectrum boundary_transform(const GridFunction& f);

// relative Parseval defect of boundary_transform (rounding-level)
double parseval_defect(const GridFunction& f);

// Laplace transform of the step interpolant of f at lambda = i*omega,
// exact for indicator data
cplx laplace_at(const GridFunction& f, double omega);

// Theta on the imaginary axis at the given frequencies; checks |.| = 1
BoundarySpectrum blaschke_boundary_profile(const BlaschkeProduct& b,
                                           const std::vector<double>& omegas,
                                           double unimodular_tol = 1e-10);

struct B3Report {
    cplx slope_estimate;  // lambda * (Theta(lambda) - 1)
    double predicted;     // 2 * sum Re zero_k
    double rel_deviation;
    bool pass;
};

// far-field check of Theta(lambda) = 1 + (2 sum Re zero_k)/lambda + o(1/lambda)
B3Report asymptotic_check_b3(const BlaschkeProduct& b, double lambda_probe);

struct B2Report {
    cplx lhs;  // (Theta ftilde, ftilde) / ||ftilde||^2 by quadrature
    cplx rhs;  // Theta(-conj(mu))
    double abs_error;
    bool pass;
};

// boundary-pairing identity for ftilde(lambda) = 1/(lambda - mu), Re mu < 0
B2Report b2_identity_check(const BlaschkeProduct& b, cplx mu, double tol = 1e-6);

namespace detail {

// Matched discrete all-pass realization of M_Theta on a causal lattice with
// step dx.  Pole p_k = exp(zero_k dx) so the filter kills sampled
// exponentials exp(zero_k x) exactly; the per-factor phase sigma_k cancels
// the leading discretization phase so the boundary response matches
// Theta(i omega) to O(dx^2).
struct AllPass {
    struct Pole {
        cplx p;      // exp(zero * dx)
        cplx sigma;  // exp(i Im(zero) dx)
    };
    std::vector<Pole> poles;

    AllPass() = default;
    AllPass(const BlaschkeProduct& b, double dx);

    void apply(std::vector<cplx>& x) const;          // y = M x
    void apply_adjoint(std::vector<cplx>& x) const;  // y = M* x
    cplx transfer(cplx z) const;                     // product of the factor responses
};

// ||(M - I) f||^2 over a zero-padded copy of the half line, evaluated in the
// time domain and on the transform side (Parseval against the transfer
// function of the same lattice filter); the two agree to rounding
double multiplier_defect_time_domain(const AllPass& filter, const GridFunction& f);
double multiplier_defect_via_transfer(const AllPass& filter, const GridFunction& f);

}  // namespace detail

}  // namespace coclab
