#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "hempss/canonical.hpp"
#include "hempss/fock.hpp"
#include "hempss/states.hpp"

using namespace hempss;

namespace {

constexpr double kPi = 3.14159265358979323846;

cd ipow_local(cd z, int n) {
    cd out(1.0, 0.0);
    for (int k = 0; k < n; ++k) out *= z;
    return out;
}

// Cubic-gate-free closed form of the coordinate wavefunction (Xi = 0 limit),
// evaluated directly from the Gaussian integral.
cd gaussian_coordinate_reference(const WaveParams& w, double x1, double x2) {
    const double u = 0.5 * (x1 + x2);
    const cd t = cd(x2 - x1, 0.0) + (w.Gamma1 - w.Gamma2);
    const cd exponent = -t * t / (4.0 * w.a) - w.a * u * u + (w.Gamma1 + w.Gamma2) * u;
    return (w.norm / std::sqrt(kPi)) / std::sqrt(w.a) * std::exp(exponent);
}

// Brute-force heterodyne eigenstate in the Fock truncation, built by applying
// the exponential of the defining creation-operator combination to vacuum.
FockState heterodyne_state_oracle(const FockCutoff& cutoff, cd z, double theta1, double theta2) {
    const auto [a1, a2] = make_mode_operators(cutoff);
    const FockOperator a1d = adjoint(a1);
    const FockOperator a2d = adjoint(a2);
    const double root2 = std::sqrt(2.0);
    const cd c1 = root2 * std::conj(z) * std::polar(1.0, theta1);
    const cd c2 = root2 * z * std::polar(1.0, theta2);
    const cd c12 = -std::polar(1.0, theta1 + theta2);
    const FockOperator generator = c1 * a1d + c2 * a2d + c12 * (a1d * a2d);
    FockState state = exp_apply(generator, vacuum_state(cutoff), 1e-15);
    state.amps *= std::exp(-std::norm(z));
    return state;
}

std::vector<CanonicalParams> branch_draws(int count, int order, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CanonicalParams> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const CanonicalBranch branch = (i % 2 == 0) ? CanonicalBranch::DeltaZero_ThetaPi
                                                    : CanonicalBranch::DeltaPi_ThetaZero;
        const double r = 2.0 * unit(rng);
        const double g = 0.5 * unit(rng);
        const double phi = 2.0 * kPi * unit(rng);
        const double delta1 = 2.0 * kPi * unit(rng);
        const double theta1 = 2.0 * kPi * unit(rng);
        out.push_back(params_from_branch(branch, r, phi, g, delta1, theta1, order));
    }
    return out;
}

}  // namespace

TEST_CASE("wave parameters reduce to squeezed-vacuum values without the cubic term") {
    // Pure squeezing, reference phases zero.
    const CanonicalParams p = make_canonical_params(0.8, 0.0, 0.0, 0.0, kPi, 0.0, 0.0, 0.0, 2);
    const cd beta1(0.4, -0.2), beta2(0.3, 0.1);
    const WaveParams w = wave_params(p, beta1, beta2);

    const double expected_a = std::exp(1.6);
    CHECK(std::abs(w.a - cd(expected_a, 0.0)) < 1e-12 * expected_a);
    CHECK(std::abs(w.a.real() - 4.9530324) < 1e-6);
    CHECK(std::abs(w.wB1) == 0.0);
    CHECK(std::abs(w.wB2) == 0.0);

    const double d = std::cosh(0.8) - std::sinh(0.8);  // exp(-0.8)
    CHECK(std::abs(w.Gamma1 - std::sqrt(2.0) * beta1 / d) < 1e-12);
    CHECK(std::abs(w.Gamma2 - std::sqrt(2.0) * beta2 / d) < 1e-12);
    CHECK(w.norm == 1.0);
    CHECK(w.order == 2);

    // No squeezing at all: unit decay and bare drives.
    const CanonicalParams p0 = make_canonical_params(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const WaveParams w0 = wave_params(p0, beta1, beta2);
    CHECK(std::abs(w0.a - cd(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(w0.Gamma1 - std::sqrt(2.0) * beta1) < 1e-15);
    CHECK(std::abs(w0.Gamma2 - std::sqrt(2.0) * beta2) < 1e-15);
}

TEST_CASE("wave parameters on completion branches have real positive decay") {
    for (const CanonicalParams& p : branch_draws(40, 2, 20240816u)) {
        const WaveParams w = wave_params(p, cd(0.3, 0.1), cd(-0.2, 0.4));
        CHECK(w.a.real() > 0.0);
        CHECK(std::abs(w.a.imag()) < 1e-12);

        // The decay coefficient from the second mode's eigen-equation must
        // agree with the first's.
        const cd mu(std::cosh(p.r), 0.0);
        const cd nu = std::sinh(p.r) * std::polar(1.0, p.phi);
        const cd mu2 = std::polar(1.0, p.theta2) * mu;
        const cd nu1 = std::polar(1.0, -p.theta1) * nu;
        const cd a_other = (mu2 + nu1) / (mu2 - nu1);
        CHECK(std::abs(w.a - a_other) < 1e-12 * (1.0 + std::abs(w.a)));

        // Antisymmetric pairing of the cubic weights keeps the cubic term
        // purely imaginary along the real axis structure.
        CHECK(std::abs(w.wB2 + std::conj(w.wB1)) < 1e-12 * (1.0 + std::abs(w.wB1)));
    }
}

TEST_CASE("wave parameters reject invalid inputs") {
    // Off-manifold parameters fail validation.
    const CanonicalParams bad =
        make_canonical_params(0.7, 0.0, 0.3, 0.3, 0.4, 1.9, 0.2, 1.1, 2);
    CHECK_FALSE(validate(bad).pass);
    CHECK_THROWS_AS((void)wave_params(bad, cd(0, 0), cd(0, 0)), std::domain_error);

    // Extreme squeezing collapses |mu' - nu''| to zero: singular transformation.
    const CanonicalParams extreme =
        make_canonical_params(40.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    CHECK_THROWS_WITH_AS((void)wave_params(extreme, cd(0, 0), cd(0, 0)),
                         doctest::Contains("singular"), std::domain_error);
}

TEST_CASE("cubic exponent term is purely imaginary across the sampling box") {
    for (int order : {2, 3}) {
        for (const CanonicalParams& p : branch_draws(6, order, 77u + order)) {
            const WaveParams w = wave_params(p, cd(0.2, -0.3), cd(0.5, 0.1));
            const int pw = w.order + 1;
            for (int i = 0; i <= 40; ++i) {
                for (int j = 0; j <= 40; ++j) {
                    const cd z(-4.0 + 0.2 * i, -4.0 + 0.2 * j);
                    const cd b = (w.wB1 * ipow_local(z, pw) +
                                  w.wB2 * ipow_local(std::conj(z), pw)) / double(pw);
                    const double bound = 1e-12 * (1.0 + std::pow(std::abs(z), pw));
                    CHECK(std::abs(b.real()) < bound);
                }
            }
        }
    }
}

TEST_CASE("entangled wavefunction evaluation matches its exponent definition") {
    const CanonicalParams p =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.8, 0.3, 0.1, 0.7, 0.1, 2);
    const WaveParams w = wave_params(p, cd(0.4, 0.2), cd(-0.3, 0.5));

    CHECK(std::abs(eval_entangled_wavefunction(w, {cd(0.0, 0.0)}) - cd(w.norm, 0.0)) < 1e-15);

    const cd z(0.7, -1.1);
    const cd manual = w.norm * std::exp(-w.a * std::norm(z) + w.Gamma1 * z +
                                        w.Gamma2 * std::conj(z) -
                                        (w.wB1 * ipow_local(z, 3) +
                                         w.wB2 * ipow_local(std::conj(z), 3)) / 3.0);
    CHECK(std::abs(eval_entangled_wavefunction(w, {z}) - manual) < 1e-14 * std::abs(manual));

    // Order three wiring uses fourth powers.
    const CanonicalParams p3 =
        params_from_branch(CanonicalBranch::DeltaPi_ThetaZero, 0.5, 0.2, 0.05, 1.1, 0.4, 3);
    const WaveParams w3 = wave_params(p3, cd(0.0, 0.3), cd(0.1, 0.0));
    const cd z3(0.9, 0.4);
    const cd manual3 = std::exp(-w3.a * std::norm(z3) + w3.Gamma1 * z3 +
                                w3.Gamma2 * std::conj(z3) -
                                (w3.wB1 * ipow_local(z3, 4) +
                                 w3.wB2 * ipow_local(std::conj(z3), 4)) / 4.0);
    CHECK(std::abs(eval_entangled_wavefunction(w3, {z3}) - manual3) < 1e-14 * std::abs(manual3));
}

TEST_CASE("squared modulus keeps the reduced Gaussian form on the branches") {
    for (const CanonicalParams& p : branch_draws(8, 2, 31415u)) {
        const WaveParams w = wave_params(p, cd(0.5, -0.1), cd(0.2, 0.3));
        const cd drive = w.Gamma1 + std::conj(w.Gamma2);
        for (int i = 0; i < 9; ++i) {
            const cd z(-2.0 + 0.5 * i, 1.3 - 0.3 * i);
            const double lhs = std::norm(eval_entangled_wavefunction(w, {z}));
            const double rhs = w.norm * w.norm *
                               std::exp(-2.0 * w.a.real() * std::norm(z) +
                                        2.0 * (drive * z).real());
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("entangled wavefunction evaluation guards exponent overflow") {
    const CanonicalParams p = make_canonical_params(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const WaveParams w = wave_params(p, cd(600.0, 0.0), cd(0.0, 0.0));
    CHECK_THROWS_AS((void)eval_entangled_wavefunction(w, {cd(2.0, 0.0)}), std::range_error);
}

TEST_CASE("normalization fixes the squared-mass integral to one") {
    QuadratureConfig q;

    // Squeezing only: the closed-form norm is sqrt(a) = exp(r).
    const CanonicalParams p = make_canonical_params(0.8, 0.0, 0.0, 0.0, kPi, 0.0, 0.0, 0.0, 2);
    const WaveParams w = normalize(wave_params(p, cd(0, 0), cd(0, 0)), q);
    CHECK(std::abs(w.norm - std::exp(0.8)) < 1e-10 * std::exp(0.8));
    CHECK(std::abs(w.norm - 2.2255409) < 1e-6);

    // No squeezing: norm stays 1.
    const CanonicalParams p0 = make_canonical_params(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const WaveParams w0 = normalize(wave_params(p0, cd(0, 0), cd(0, 0)), q);
    CHECK(std::abs(w0.norm - 1.0) < 1e-10);

    // Canonical branch draws with drive: compare against the Gaussian
    // closed form sqrt(a) * exp(-|Gamma1 + conj(Gamma2)|^2 / (4a)).
    for (const CanonicalParams& pc : branch_draws(6, 2, 99u)) {
        const WaveParams raw = wave_params(pc, cd(0.4, 0.3), cd(-0.5, 0.2));
        const WaveParams nn = normalize(raw, q);
        const double a = raw.a.real();
        const double drive = std::abs(raw.Gamma1 + std::conj(raw.Gamma2));
        const double expected = std::sqrt(a) * std::exp(-drive * drive / (4.0 * a));
        CHECK(std::abs(nn.norm - expected) < 1e-9 * expected);

        // Idempotent.
        const WaveParams again = normalize(nn, q);
        CHECK(std::abs(again.norm - nn.norm) < 1e-10 * nn.norm);
    }
}

TEST_CASE("normalization reports unconverged quadrature") {
    QuadratureConfig q;
    q.rule = QuadratureRule::Trapezoid;
    q.points_per_axis = 32;

    const CanonicalParams p = make_canonical_params(0.8, 0.0, 0.1, 0.1, kPi, 0.0, 0.0, 0.0, 2);
    REQUIRE(validate(p).pass);
    const WaveParams w = wave_params(p, cd(3.0, 0.0), cd(3.0, 0.0));
    CHECK_THROWS_AS((void)normalize(w, q), convergence_error);
}

TEST_CASE("coordinate wavefunction reproduces the vacuum Gaussian product") {
    QuadratureConfig q;
    const CanonicalParams p = make_canonical_params(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const WaveParams w = normalize(wave_params(p, cd(0, 0), cd(0, 0)), q);

    for (double x1 : {-1.5, -0.4, 0.0, 0.8}) {
        for (double x2 : {-0.9, 0.3, 1.2}) {
            const cd got = eval_coordinate_wavefunction(w, p, x1, x2, q);
            const double expected =
                std::exp(-0.5 * (x1 * x1 + x2 * x2)) / std::sqrt(kPi);
            CHECK(std::abs(got - cd(expected, 0.0)) < 1e-8);
        }
    }
}

TEST_CASE("coordinate wavefunction agrees with the Gaussian closed form") {
    QuadratureConfig q;
    // Branch parameters without the cubic term but with squeezing and drive.
    const CanonicalParams p =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.8, 0.0, 0.0, kPi / 2.0, 0.0, 2);
    const WaveParams w = wave_params(p, cd(0.4, 0.0), cd(0.2, 0.3));
    for (double x1 : {-1.0, 0.0, 1.3}) {
        for (double x2 : {-0.7, 0.5}) {
            const cd got = eval_coordinate_wavefunction(w, p, x1, x2, q);
            const cd expected = gaussian_coordinate_reference(w, x1, x2);
            CHECK(std::abs(got - expected) < 1e-8 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("coordinate wavefunction is exchange symmetric for symmetric parameters") {
    QuadratureConfig q;
    // Equal drives and mirrored phases: psi(x1, x2) = psi(x2, x1).
    const CanonicalParams p =
        make_canonical_params(0.8, kPi, 0.1, 0.1, kPi / 2.0, kPi / 2.0, kPi, kPi, 2);
    REQUIRE(validate(p).pass);
    const cd beta(0.5, 0.2);
    const WaveParams w = wave_params(p, beta, beta);
    for (auto [x1, x2] : std::vector<std::pair<double, double>>{
             {0.3, -0.9}, {1.1, 0.2}, {-1.4, 0.6}}) {
        const cd fwd = eval_coordinate_wavefunction(w, p, x1, x2, q);
        const cd rev = eval_coordinate_wavefunction(w, p, x2, x1, q);
        CHECK(std::abs(fwd - rev) < 1e-8);
    }
}

TEST_CASE("coordinate wavefunction reports unresolved oscillation") {
    QuadratureConfig q;
    q.points_per_axis = 32;
    const CanonicalParams p = make_canonical_params(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2);
    const WaveParams w = wave_params(p, cd(0, 0), cd(0, 0));
    CHECK_THROWS_AS((void)eval_coordinate_wavefunction(w, p, -40.0, 40.0, q),
                    convergence_error);
}

TEST_CASE("closed-form cubic wavefunction matches the numeric transform") {
    // Quarter-turn phase offset on the DeltaZero_ThetaPi branch.
    const CanonicalParams p =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.8, 0.0, 0.1, kPi / 2.0, 0.0, 2);
    const cd beta1(0.5, 0.0), beta2(0.3, -0.2);
    QuadratureConfig q;
    const WaveParams w = wave_params(p, beta1, beta2);

    for (auto [x1, x2] : std::vector<std::pair<double, double>>{
             {0.0, 0.0}, {0.5, -0.3}, {1.0, 1.0}, {-1.2, 0.8}, {2.0, -1.0}, {-2.0, -2.0}}) {
        const cd closed = eval_cubic_closed_form(p, beta1, beta2, x1, x2);
        const cd numeric = eval_coordinate_wavefunction(w, p, x1, x2, q);
        CHECK(std::abs(closed - numeric) < 1e-5 * std::max(1e-3, std::abs(closed)));
    }
}

TEST_CASE("closed-form cubic wavefunction enforces its phase precondition") {
    const cd b(0.1, 0.0);
    // Wrong relative phase delta1 - theta1.
    const CanonicalParams wrong_phase =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.8, 0.0, 0.1, 0.3, 0.0, 2);
    CHECK_THROWS_AS((void)eval_cubic_closed_form(wrong_phase, b, b, 0.0, 0.0),
                    std::domain_error);
    // Wrong nonlinearity order.
    const CanonicalParams wrong_order =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.8, 0.0, 0.1, kPi / 2.0, 0.0, 3);
    CHECK_THROWS_AS((void)eval_cubic_closed_form(wrong_order, b, b, 0.0, 0.0),
                    std::domain_error);
}

TEST_CASE("cubicity takes its closed branch values") {
    // No squeezing: Xi = (2 sqrt(2) / 3) |gamma|.
    const CanonicalParams flat =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.0, 0.0, 0.3, 0.2, 0.15, 2);
    CHECK(std::abs(xi(flat) - 2.0 * std::sqrt(2.0) * 0.3 / 3.0) < 1e-12);
    CHECK(std::abs(xi(flat) - 0.2828427) < 1e-6);

    // Squeezed case on the same branch: exponential suppression by exp(-r).
    const CanonicalParams sq =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.8, 0.0, 0.1, 0.2, 0.15, 2);
    CHECK(std::abs(xi(sq) - 2.0 * std::sqrt(2.0) * 0.1 * std::exp(-0.8) / 3.0) < 1e-12);
    CHECK(std::abs(xi(sq) - 0.0423641) < 1e-6);

    // The opposite branch enhances instead.
    const CanonicalParams en =
        params_from_branch(CanonicalBranch::DeltaPi_ThetaZero, 0.8, 0.0, 0.1, 0.2, 0.15, 2);
    CHECK(std::abs(xi(en) - 2.0 * std::sqrt(2.0) * 0.1 * std::exp(0.8) / 3.0) < 1e-12);

    // The defining expression stays real across canonical draws.
    for (const CanonicalParams& p : branch_draws(100, 2, 5150u)) {
        CHECK(std::abs(xi_expression(p).imag()) < 1e-14);
    }

    const CanonicalParams bad =
        make_canonical_params(0.7, 0.0, 0.3, 0.3, 0.4, 1.9, 0.2, 1.1, 2);
    CHECK_THROWS_AS((void)xi(bad), std::domain_error);
}

TEST_CASE("gate strength quotient agrees with its branch closed form") {
    for (const CanonicalParams& p : branch_draws(40, 2, 8888u)) {
        const cd quotient = delta(p);
        const cd closed = delta_closed_form(p);
        CHECK(std::abs(quotient - closed) < 1e-12 * (1.0 + std::abs(quotient)));
    }

    // Quarter-turn phase: purely imaginary strength, suppressed by exp(-r).
    const CanonicalParams qp =
        params_from_branch(CanonicalBranch::DeltaZero_ThetaPi, 0.8, 0.0, 0.1, kPi / 2.0, 0.0, 2);
    const cd d = delta(qp);
    const double expected = std::sqrt(2.0) * std::exp(-0.8) * 0.1 / 3.0;
    CHECK(std::abs(d.real()) < 1e-15);
    CHECK(std::abs(d.imag() - expected) < 1e-12);
    CHECK(std::abs(d.imag() - 0.0211794) < 5e-6);

    // No squeezing and aligned phases: real strength sqrt(2)|gamma|/3.
    const CanonicalParams flat =
        params_from_branch(CanonicalBranch::DeltaPi_ThetaZero, 0.0, 0.0, 0.3, 0.2, 0.2, 2);
    CHECK(std::abs(delta(flat) - cd(std::sqrt(2.0) * 0.3 / 3.0, 0.0)) < 1e-12);
    CHECK(std::abs(delta(flat).real() - 0.1414214) < 1e-6);

    // Off both branches the closed form refuses.
    const CanonicalParams off =
        make_canonical_params(0.4, 0.0, 0.0, 0.0, 1.0, 0.7, 0.3, 0.4, 2);
    REQUIRE(validate(off).pass);
    CHECK_THROWS_AS((void)delta_closed_form(off), std::domain_error);

    const CubicPhaseParams cp = cubic_phase_params(qp);
    CHECK(cp.Xi == xi(qp));
    CHECK(cp.Delta == delta(qp));
}

TEST_CASE("fock-heterodyne overlaps take their closed values") {
    CHECK(std::abs(overlap_fock_z(0, 0, {cd(0.6, -0.3)}, 0.0, 0.0) -
                   cd(std::exp(-0.45), 0.0)) < 1e-14);

    const cd o10 = overlap_fock_z(1, 0, {cd(1.0, 0.0)}, 0.0, 0.0);
    CHECK(std::abs(o10 - cd(std::sqrt(2.0) * std::exp(-1.0), 0.0)) < 1e-14);
    CHECK(std::abs(o10.real() - 0.5202601) < 1e-6);

    const cd o11 = overlap_fock_z(1, 1, {cd(1.0, 0.0)}, 0.0, 0.0);
    CHECK(std::abs(o11 - cd(std::exp(-1.0), 0.0)) < 1e-14);
    CHECK(std::abs(o11.real() - 0.3678794) < 1e-6);

    // Phase rotations act as pure phases.
    const cd z(0.8, 0.5);
    const cd base = overlap_fock_z(3, 1, {z}, 0.0, 0.0);
    const cd rotated = overlap_fock_z(3, 1, {z}, 0.3, -0.7);
    CHECK(std::abs(rotated - base * std::polar(1.0, 3 * 0.3 + 1 * (-0.7))) < 1e-14);

    // At the origin only diagonal-free components survive.
    CHECK(overlap_fock_z(2, 0, {cd(0.0, 0.0)}, 0.1, 0.2) == cd(0.0, 0.0));
    CHECK(std::abs(overlap_fock_z(2, 2, {cd(0.0, 0.0)}, 0.0, 0.0) - cd(1.0, 0.0)) < 1e-14);

    CHECK_THROWS_AS((void)overlap_fock_z(-1, 0, {cd(0, 0)}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("fock-heterodyne overlaps match the exponential-series oracle") {
    const cd z(0.7, 0.4);
    const double theta1 = 0.3, theta2 = -0.5;
    const FockCutoff cutoff(40, 40);
    const FockState oracle = heterodyne_state_oracle(cutoff, z, theta1, theta2);

    double sum_mine = 0.0, sum_oracle = 0.0;
    for (int n1 = 0; n1 <= 30; ++n1) {
        for (int n2 = 0; n2 <= 30; ++n2) {
            const cd mine = overlap_fock_z(n1, n2, {z}, theta1, theta2);
            const cd ref = oracle.amps[cutoff.flat(n1, n2)];
            CHECK(std::abs(mine - ref) < 1e-10);
            sum_mine += std::norm(mine);
            sum_oracle += std::norm(ref);
        }
    }
    CHECK(std::abs(sum_mine - sum_oracle) < 1e-8);
}
