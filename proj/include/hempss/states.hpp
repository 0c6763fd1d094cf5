#pragma once

#include <complex>

#include "hempss/canonical.hpp"
#include "hempss/quadrature.hpp"

namespace hempss {

using cd = std::complex<double>;

// A point in the joint-heterodyne complex plane.
struct HeterodynePoint {
    cd z;
};

// Parameters of the entangled-plane wavefunction
//
//   psi(z) = norm * exp(-a*|z|^2 + Gamma1*z + Gamma2*conj(z)
//                       - (wB1*z^{n+1} + wB2*conj(z)^{n+1}) / (n+1))
//
// where n = order.  `norm` is a positive real scale factor, equal to 1 until
// normalize() has been applied.
struct WaveParams {
    cd a;
    cd wB1;
    cd wB2;
    cd Gamma1;
    cd Gamma2;
    double norm = 1.0;
    int order = 2;
    cd beta1;
    cd beta2;
};

// Cubic-phase description of the order-2 state: a real cubicity Xi and the
// complex gate strength Delta.
struct CubicPhaseParams {
    double Xi = 0.0;
    cd Delta;
};

// Build the wavefunction parameters for the joint eigenstate with eigenvalues
// (beta1, beta2).  Requires params that pass validate(); throws
// std::domain_error otherwise, and std::domain_error with a singular-
// transformation message if a denominator |mu' - nu''| or |mu'' - nu'| falls
// below 1e-12.
WaveParams wave_params(const CanonicalParams& params, cd beta1, cd beta2);

// Evaluate psi at one heterodyne point.  Throws std::range_error if the real
// part of the exponent exceeds 700 (exp overflow guard).
cd eval_entangled_wavefunction(const WaveParams& w, const HeterodynePoint& pt);

// Return a copy of `w` whose norm makes (2/pi) * Int |psi|^2 d^2z = 1.
// The quadrature box is sized automatically from the Gaussian decay unless
// q.half_extent > 0.  Throws convergence_error if doubling the grid still
// changes the integral by more than q.convergence_rel_tol relative.
WaveParams normalize(const WaveParams& w, const QuadratureConfig& q);

// Evaluate the two-mode coordinate wavefunction psi(x1, x2) as the 1-D
// Fourier-type integral over the imaginary heterodyne direction:
//
//   psi(x1, x2) = (1/pi) * Int dz2 exp(i*(x2-x1)*z2) * psi(z1 = (x1+x2)/2, z2)
//
// Throws convergence_error if grid doubling does not stabilize the value to
// 1e-8 absolute.
cd eval_coordinate_wavefunction(const WaveParams& w, const CanonicalParams& params,
                                double x1, double x2, const QuadratureConfig& q);

// Closed-form coordinate wavefunction for order 2 when delta1 - theta1 =
// pi/2 (mod 2pi, tolerance 1e-9); throws std::domain_error otherwise.
cd eval_cubic_closed_form(const CanonicalParams& params, cd beta1, cd beta2,
                          double x1, double x2);

// Complex-valued cubicity expression; its imaginary part vanishes for
// canonical parameter sets.  Requires order 2 and validate() to pass.
cd xi_expression(const CanonicalParams& params);

// Real cubicity Xi.  Requires order 2 and validate() to pass; throws
// std::domain_error otherwise.
double xi(const CanonicalParams& params);

// Cubic-gate strength Delta as the quotient form
//   sqrt(2)*|gamma|*exp(i*(delta1-theta1)) / (3*(mu - nu*exp(-i*(theta1+theta2)))).
// Requires order 2 and validate() to pass.
cd delta(const CanonicalParams& params);

// Closed-form Delta = (sqrt(2)*|gamma|/3) * exp(-sigma*r) * exp(i*(delta1-theta1))
// with sigma = +1 on the DeltaZero_ThetaPi branch and sigma = -1 on the
// DeltaPi_ThetaZero branch; throws std::domain_error off both branches.
cd delta_closed_form(const CanonicalParams& params);

// Both cubic-phase numbers at once.
CubicPhaseParams cubic_phase_params(const CanonicalParams& params);

// Overlap <n1, n2 | z> between a two-mode Fock state and the heterodyne
// eigenstate at pt, for phase rotations (theta1, theta2).  Evaluated in
// log scale so large n stay finite.  Requires n1, n2 >= 0.
cd overlap_fock_z(int n1, int n2, const HeterodynePoint& pt, double theta1, double theta2);

}  // namespace hempss
