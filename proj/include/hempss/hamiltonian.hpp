#pragma once

#include <complex>

#include "hempss/canonical.hpp"
#include "hempss/fock.hpp"

namespace hempss {

// Coefficients of the normal-ordered quadratic-plus-quartic Hamiltonian
// H = b1^dag b1 + b2^dag b2 expanded over bare-mode monomials:
//
//   H = A0
//     + B0 (n1 + n2)
//     + C0 (a1+^2 a1^2 + a2+^2 a2^2 + 4 a1+ a1 a2+ a2)
//     + [ D1  a1+ a2+  + D2  a1+^2 a2 + D2p a1 a2+^2
//       + D3  a1+^3    + D3p a2+^3    + D4  a1+^2 a2+^2
//       + D5 (a1+^2 a1 a2+ + a1+ a2+^2 a2) + h.c. ]
//
// The factor 4 on the cross-Kerr monomial comes from normal-ordering the
// |gamma|^2 Z^2 Z+^2 piece; the matrix identity is pinned by tests.
struct HamiltonianCoefficients {
    double A0 = 0.0;
    double B0 = 0.0;
    double C0 = 0.0;
    std::complex<double> D1, D2, D2p, D3, D3p, D4, D5;
};

struct TransformedModes {
    FockOperator b1;
    FockOperator b2;
};

// Truncated matrices of the transformed annihilation operators. Requires the
// parameter set to validate as canonical and 2*order + 2 <= min per-mode
// cutoff (so at least one fully faithful shell survives truncation).
TransformedModes build_transformed_modes(const CanonicalParams& p, const FockCutoff& cutoff,
                                         double tol = 1e-9);

// Coefficients valid for any canonical phase choice (nonlinearity order 2
// only; equal moduli |chi| = |gamma| required).
HamiltonianCoefficients generic_coefficients(const CanonicalParams& p);

// Simplified closed forms valid on branch DeltaZero_ThetaPi only.
HamiltonianCoefficients specialized_coefficients(const CanonicalParams& p);

// Assemble the dense-grade sparse matrix of H from coefficients. Hermitian
// by construction. Requires per-mode cutoffs >= 4.
FockOperator build_fock_hamiltonian(const HamiltonianCoefficients& c, const FockCutoff& cutoff);

}  // namespace hempss
