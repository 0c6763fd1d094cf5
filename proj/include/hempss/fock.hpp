#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <utility>

#include "hempss/pnd_grid.hpp"

namespace hempss {

using cd = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<cd>;

// Error thrown when an iterative numerical routine fails to reach its
// tolerance; carries the best available residual estimate.
struct convergence_error : std::runtime_error {
    double residual_estimate;
    explicit convergence_error(const std::string& what, double residual)
        : std::runtime_error(what + " (residual estimate " + std::to_string(residual) + ")"),
          residual_estimate(residual) {}
};

// Two-mode Fock truncation. Mode i keeps occupations 0..ni_max inclusive.
// Flat index convention (fixed, relied on by serialization):
//   flat(n1, n2) = n1 * (n2_max + 1) + n2.
struct FockCutoff {
    int n1_max = 0;
    int n2_max = 0;

    FockCutoff() = default;
    FockCutoff(int n1, int n2) : n1_max(n1), n2_max(n2) {
        if (n1 < 1 || n2 < 1)
            throw std::invalid_argument("FockCutoff: per-mode cutoffs must be >= 1");
    }

    int dim() const { return (n1_max + 1) * (n2_max + 1); }
    int flat(int n1, int n2) const { return n1 * (n2_max + 1) + n2; }
    int n1_of(int flat_index) const { return flat_index / (n2_max + 1); }
    int n2_of(int flat_index) const { return flat_index % (n2_max + 1); }

    bool operator==(const FockCutoff& o) const {
        return n1_max == o.n1_max && n2_max == o.n2_max;
    }
    bool operator!=(const FockCutoff& o) const { return !(*this == o); }
};

// A linear operator on the truncated two-mode space, stored sparse.
// Ladder-operator monomials and the transformed-mode products built here
// stay far below a few percent fill at the cutoffs in use.
struct FockOperator {
    SparseOp mat;
    FockCutoff cutoff;
};

// A (usually normalized) state vector on the truncated space.
struct FockState {
    Eigen::VectorXcd amps;
    FockCutoff cutoff;

    double norm() const { return amps.norm(); }
};

// Annihilation operators (a1, a2) for the two modes at the given truncation.
std::pair<FockOperator, FockOperator> make_mode_operators(const FockCutoff& cutoff);

FockOperator identity_op(const FockCutoff& cutoff);
FockOperator vacuum_projector_free(const FockCutoff& cutoff);  // |00><00|

FockState vacuum_state(const FockCutoff& cutoff);
FockState basis_state(const FockCutoff& cutoff, int n1, int n2);

FockOperator adjoint(const FockOperator& a);
FockOperator compose(const FockOperator& a, const FockOperator& b);      // a * b
FockOperator commutator(const FockOperator& a, const FockOperator& b);   // [a, b]
FockOperator add(const FockOperator& a, const FockOperator& b);
FockOperator subtract(const FockOperator& a, const FockOperator& b);
FockOperator scale(const cd& c, const FockOperator& a);

// Operator arithmetic sugar used heavily by the Hamiltonian assembly.
inline FockOperator operator*(const FockOperator& a, const FockOperator& b) { return compose(a, b); }
inline FockOperator operator+(const FockOperator& a, const FockOperator& b) { return add(a, b); }
inline FockOperator operator-(const FockOperator& a, const FockOperator& b) { return subtract(a, b); }
inline FockOperator operator*(const cd& c, const FockOperator& a) { return scale(c, a); }
inline FockOperator operator*(double c, const FockOperator& a) { return scale(cd(c, 0.0), a); }

FockState apply(const FockOperator& a, const FockState& v);

// Induced infinity norm (max absolute row sum).
double inf_norm(const FockOperator& a);
// Largest absolute entry.
double max_abs_entry(const FockOperator& a);

// Restriction P A P to the subspace n1 + n2 <= band (entries outside zeroed).
FockOperator project_total_quanta(const FockOperator& a, int band);
FockState project_state_total_quanta(const FockState& v, int band);

// y = exp(A) v via scaling-and-squaring-free segmented Taylor iteration:
// the exponent is split into ceil(||A||_inf) unit segments and each segment
// summed until two consecutive terms drop below tol (relative). Throws
// convergence_error if a segment fails to converge within the term budget.
FockState exp_apply(const FockOperator& a, const FockState& v, double tol);

// Photon-number distribution |<n1,n2|v>|^2 collapsed to the square grid
// n <= min(n1_max, n2_max). Requires | ||v|| - 1 | <= 1e-6.
PNDGrid pnd_of_state(const FockState& v);

}  // namespace hempss
