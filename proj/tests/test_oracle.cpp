#include <cmath>
#include <complex>

#include "doctest.h"
#include "hempss/canonical.hpp"
#include "hempss/fock.hpp"
#include "hempss/hamiltonian.hpp"
#include "hempss/oracle.hpp"
#include "hempss/states.hpp"
#include "hempss/statistics.hpp"

namespace {

using hempss::cd;
constexpr double kPi = 3.14159265358979323846;

// Reference parameter set used across the cross-validation tests: quadratic
// nonlinearity, opposite nonlinear phases, unit displacements.
hempss::CanonicalParams reference_params() {
    return hempss::make_canonical_params(0.8, 0.0, 0.1, 0.1, kPi, 0.0, 0.0, 0.0, 2);
}

}  // namespace

TEST_CASE("joint eigenstate of the linear problem is the two-mode squeezed vacuum") {
    const auto p = hempss::make_canonical_params(0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const auto o = hempss::joint_eigenstate(p, 0.0, 0.0, hempss::FockCutoff(24, 24));
    CHECK(o.route == hempss::OracleRoute::JointEigen);
    CHECK(o.residual1 < 1e-8);
    CHECK(o.residual2 < 1e-8);
    CHECK(std::abs(o.state.norm() - 1.0) < 1e-12);

    const double lambda = std::tanh(0.8) * std::tanh(0.8);
    const auto g = hempss::pnd_of_state(o.state);
    for (int n = 0; n <= 8; ++n) {
        CHECK(std::abs(g.at(n, n) - (1.0 - lambda) * std::pow(lambda, n)) < 1e-9);
    }
    double off_diag = 0.0;
    for (int n1 = 0; n1 <= g.n_max; ++n1)
        for (int n2 = 0; n2 <= g.n_max; ++n2)
            if (n1 != n2) off_diag = std::max(off_diag, g.at(n1, n2));
    CHECK(off_diag < 1e-9);

    // Phase convention: the dominant amplitude is real positive.
    const int vac = o.state.cutoff.flat(0, 0);
    CHECK(o.state.amps[vac].real() > 0.0);
    CHECK(std::abs(o.state.amps[vac].imag()) < 1e-14);
}

TEST_CASE("joint eigenstate handles displaced linear eigen-relations") {
    // Displacement breaks the exact telescoping of the squeezed vacuum, so
    // the truncation leaks at the boundary like tanh(r)^cutoff; the residual
    // tracks that scale rather than machine precision.
    const auto p = hempss::make_canonical_params(0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const auto o20 = hempss::joint_eigenstate(p, 1.0, 1.0, hempss::FockCutoff(20, 20), 1e-2);
    const auto o28 = hempss::joint_eigenstate(p, 1.0, 1.0, hempss::FockCutoff(28, 28), 1e-2);
    CHECK(o28.residual1 < 2e-4);
    CHECK(o28.residual2 < 2e-4);
    CHECK(o28.residual1 < 0.2 * o20.residual1);
}

TEST_CASE("eigen-residuals shrink as the truncation grows on the reference set") {
    const auto p = reference_params();
    const auto o24 = hempss::joint_eigenstate(p, 1.0, 1.0, hempss::FockCutoff(24, 24), 1e-2);
    const auto o32 = hempss::joint_eigenstate(p, 1.0, 1.0, hempss::FockCutoff(32, 32), 1e-2);
    const auto o40 = hempss::joint_eigenstate(p, 1.0, 1.0, hempss::FockCutoff(40, 40), 1e-2);
    const double r24 = std::max(o24.residual1, o24.residual2);
    const double r32 = std::max(o32.residual1, o32.residual2);
    const double r40 = std::max(o40.residual1, o40.residual2);
    CHECK(r32 < 1.1 * r24);
    CHECK(r40 < 1.1 * r32);
    CHECK(r40 < 1e-5);  // measured boundary-leak scale at this truncation
}

TEST_CASE("construction route reduces to the squeezed vacuum when the cubic term vanishes") {
    const auto p = hempss::make_canonical_params(0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const auto o = hempss::unitary_construction(p, 0.0, 0.0, hempss::FockCutoff(26, 26));
    CHECK(o.route == hempss::OracleRoute::UnitaryConstruction);
    CHECK(o.fidelity_vs_other_route > 1.0 - 1e-7);
    CHECK(o.residual1 < 3e-4);  // boundary reflection of the truncated squeeze
    CHECK(o.residual2 < 3e-4);
    const double lambda = std::tanh(0.8) * std::tanh(0.8);
    const auto g = hempss::pnd_of_state(o.state);
    for (int n = 0; n <= 6; ++n) {
        CHECK(std::abs(g.at(n, n) - (1.0 - lambda) * std::pow(lambda, n)) < 1e-8);
    }
}

TEST_CASE("construction exponent equals the collective-mode cubic operator") {
    const auto p = reference_params();
    const hempss::FockCutoff cutoff(12, 12);
    const auto e_rotated = hempss::cubic_construction_exponent(p, cutoff);

    auto [a1, a2] = hempss::make_mode_operators(cutoff);
    const auto z = (1.0 / std::sqrt(2.0)) *
                   (std::exp(cd(0.0, -p.theta2)) * a2 + std::exp(cd(0.0, p.theta1)) * hempss::adjoint(a1));
    const auto z3 = z * z * z;
    const cd d = hempss::delta(p);
    const auto e_direct = (-d) * z3 + std::conj(d) * hempss::adjoint(z3);

    CHECK(hempss::inf_norm(e_rotated - e_direct) < 1e-10);
    // Anti-Hermitian: exponentiates to a norm-preserving map.
    CHECK(hempss::inf_norm(e_rotated + hempss::adjoint(e_rotated)) < 1e-12);
}

TEST_CASE("the two routes produce the same state on the reference set") {
    const auto p = reference_params();
    const hempss::FockCutoff cutoff(40, 40);
    const auto u = hempss::unitary_construction(p, 1.0, 1.0, cutoff, 1e-4);
    CHECK(u.fidelity_vs_other_route > 1.0 - 1e-6);
    CHECK(u.residual1 < 1e-4);
    CHECK(u.residual2 < 1e-4);

    const auto e = hempss::joint_eigenstate(p, 1.0, 1.0, cutoff, 1e-4);
    const double component_diff = (u.state.amps - e.state.amps).cwiseAbs().maxCoeff();
    CHECK(component_diff < 1e-5);
}

TEST_CASE("squeeze-sign and rotation conventions hold on both canonical branches") {
    const auto pz = hempss::params_from_branch(hempss::CanonicalBranch::DeltaZero_ThetaPi, 0.5,
                                               0.3, 0.08, 1.0, 0.7, 2);
    const auto uz = hempss::unitary_construction(pz, cd(0.4, 0.0), cd(0.0, 0.2),
                                                 hempss::FockCutoff(24, 24), 1e-3);
    CHECK(uz.fidelity_vs_other_route > 1.0 - 1e-6);

    const auto pp = hempss::params_from_branch(hempss::CanonicalBranch::DeltaPi_ThetaZero, 0.5,
                                               0.3, 0.08, 1.0, 0.7, 2);
    const auto up = hempss::unitary_construction(pp, cd(0.4, 0.0), cd(0.0, 0.2),
                                                 hempss::FockCutoff(24, 24), 1e-3);
    CHECK(up.fidelity_vs_other_route > 1.0 - 1e-6);
}

TEST_CASE("oracle error paths reject bad inputs and inadequate truncations") {
    // Non-canonical phases.
    const auto bad = hempss::make_canonical_params(0.8, 0.0, 0.1, 0.1, 0.3, 0.5, 0.0, 0.0, 2);
    CHECK_THROWS_AS(hempss::joint_eigenstate(bad, 0.0, 0.0, hempss::FockCutoff(10, 10)),
                    std::domain_error);

    // Cubic-order nonlinearity has no quadratic construction form.
    const auto cubic = hempss::make_canonical_params(0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 3);
    CHECK_THROWS_AS(hempss::unitary_construction(cubic, 0.0, 0.0, hempss::FockCutoff(12, 12)),
                    std::invalid_argument);
    CHECK_THROWS_AS(hempss::cubic_construction_exponent(cubic, hempss::FockCutoff(12, 12)),
                    std::invalid_argument);

    // Strong squeezing plus displacement at a tiny truncation: residual
    // stays macroscopic. (Without displacement the squeezed vacuum telescopes
    // to an exact null vector of the truncated operators.)
    const auto strong = hempss::make_canonical_params(1.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    CHECK_THROWS_AS(hempss::joint_eigenstate(strong, 1.0, 1.0, hempss::FockCutoff(8, 8)),
                    hempss::convergence_error);

    // A coherent drive far beyond the truncation has no well-separated
    // least-squares minimizer.
    const auto vac = hempss::make_canonical_params(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    CHECK_THROWS_AS(hempss::joint_eigenstate(vac, 4.0, 4.0, hempss::FockCutoff(6, 6), 1e6),
                    hempss::non_unique_state_error);
}

TEST_CASE("quadrature and oracle photon-number distributions cross-validate") {
    const auto p = hempss::make_canonical_params(0.8, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const auto o = hempss::joint_eigenstate(p, 0.0, 0.0, hempss::FockCutoff(24, 24));

    // Identical inputs: zero by construction.
    CHECK(hempss::compare_pnd(o, hempss::pnd_of_state(o.state)) == 0.0);

    // Independent quadrature route.
    const auto w = hempss::normalize(hempss::wave_params(p, 0.0, 0.0), {});
    const auto g = hempss::pnd(w, p, 12, {});
    CHECK(hempss::compare_pnd(o, g) < 1e-8);
}
