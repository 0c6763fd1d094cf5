#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "hempss/hamiltonian.hpp"

namespace hempss {

// A classical laser pump line: angular frequency, wavevector, amplitude.
struct Pump {
    double omega = 0.0;
    std::array<double, 3> wavevector{0.0, 0.0, 0.0};
    std::complex<double> amplitude{1.0, 0.0};
};

// One classical pump factor inside an interaction monomial; conjugated
// factors sit on the creation side of the frequency balance.
struct PumpFactor {
    int index = 0;
    bool conjugated = false;
};

// An interaction monomial a1+^j a2+^s a1^l a2^m times its pump factors,
// surviving the rotating-wave average at the given susceptibility order.
// Invariant: j + s + l + m + #pumps == order + 1.
struct ProcessTerm {
    int j = 0, s = 0, l = 0, m = 0;
    int susceptibility_order = 0;
    std::vector<PumpFactor> pumps;
    std::string kappa_label;        // symbolic coupling tag k^{js}_{lm}
    double energy_residual = 0.0;   // |frequency balance| actually achieved
};

// An s-vs-(order+1-s) frequency-conservation partition shape.
struct FrequencyRelation {
    std::vector<int> lhs_indices;
    std::vector<int> rhs_indices;
    int order = 0;
};

// Distinct partition shapes of order+1 frequencies up to conjugation
// symmetry: 1, 2, 2, 3 shapes for orders 2..5. Throws std::out_of_range
// outside that range.
std::vector<FrequencyRelation> splitting_conditions(int order);

// All monomials with per-mode exponents <= max_mode_exponent and exactly one
// pump pair (or, at order 3 when include_kerr is set, the zero-pump Kerr
// diagonals) whose frequency balance vanishes within tol. tol <= 0 selects
// the default 1e-9 * (largest frequency involved). Hermitian-conjugate pairs
// are deduplicated to the pump-absorbing representative (fewest conjugated
// pump factors). Output is sorted lexicographically in (j, s, l, m), then by
// pump indices and flags.
//
// Throws std::domain_error when omega1, omega2 admit an integer relation
// q1*omega1 = q2*omega2 with q <= 6 (enumeration would be ambiguous), and
// std::invalid_argument for non-positive frequencies or bad bounds.
std::vector<ProcessTerm> enumerate_terms(int order, double omega1, double omega2,
                                         const std::vector<Pump>& pumps, int max_mode_exponent,
                                         double tol, bool include_kerr = true);

// Euclidean norm of the wavevector mismatch between the creation and
// annihilation sides of the term. The caller declares the process matched
// when the residual is below its tolerance. Throws std::invalid_argument if
// the term references a pump index outside the list.
double check_phase_matching(const ProcessTerm& t, const std::array<double, 3>& k1,
                            const std::array<double, 3>& k2, const std::vector<Pump>& pumps,
                            double tol);

// One designed pump pair: the two pump indices, their required frequency sum,
// and the splitting fraction that distributes the sum between them.
struct PumpPairConstraint {
    int first_index = 0;
    int second_index = 0;
    double sum = 0.0;
    double fraction = 0.5;
};

struct PumpDesign {
    std::vector<Pump> pumps;
    std::vector<PumpPairConstraint> constraints;
};

// Twelve-pump design: six pair sums
//   {w1+w2, 2(w1+w2), 3 w1, 3 w2, 2 w1 - w2, 2 w2 - w1},
// each split by one fraction in (0,1) (default 1/2; pass one fraction per
// pair to override). Requires incommensurate positive frequencies and
// 2 w1 > w2, 2 w2 > w1 (all sums positive); throws std::domain_error
// otherwise.
PumpDesign pump_design_four_photon(double omega1, double omega2,
                                   const std::vector<double>& fractions = {});

// Eight-pump reduced design: four pair sums {3 w1, 3 w2, 2 w1 - w2,
// 2 w2 - w1}; same preconditions and fraction semantics.
PumpDesign pump_design_hempss(double omega1, double omega2,
                              const std::vector<double>& fractions = {});

// One monomial that must be driven, with the complex product (coupling times
// pump amplitudes) required to reproduce the target coefficient.
struct CouplingRequirement {
    int j = 0, s = 0, l = 0, m = 0;
    std::complex<double> required_product{0.0, 0.0};
    std::string kappa_label;
};

struct CouplingAssignment {
    std::vector<CouplingRequirement> requirements;
    // required(2,0,2,0) / required(1,1,1,1) when both Kerr diagonals are
    // driven; 0 otherwise. Reported, not asserted.
    double kerr_ratio = 0.0;
    bool kerr_relation_within_tol = false;
};

// Maps every nonzero target coefficient onto the matching monomial among the
// enumerated terms and reports the required complex product per term. The
// couplings themselves stay symbolic. Throws std::runtime_error listing the
// missing (j,s,l,m) when a needed monomial is not covered.
CouplingAssignment match_couplings(const HamiltonianCoefficients& target,
                                   const std::vector<ProcessTerm>& terms,
                                   double ratio_tol = 0.05);

}  // namespace hempss
