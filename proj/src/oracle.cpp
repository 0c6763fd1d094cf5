#include "hempss/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hempss/hamiltonian.hpp"
#include "hempss/states.hpp"

namespace hempss {

namespace {

constexpr int kPowerIterations = 40;
constexpr double kSeparationFactor = 10.0;
constexpr double kExpTol = 1e-14;
constexpr double kFidelityFloor = 0.999;

void require_validated(const CanonicalParams& p, const char* who) {
    if (!validate(p).pass)
        throw std::domain_error(std::string(who) + ": parameter set is not canonical");
}

// Fix the global phase so the largest-|amplitude| entry (lowest flat index on
// ties) is real positive.
void fix_phase(Eigen::VectorXcd& v) {
    int best = 0;
    double best_mag = std::abs(v[0]);
    for (int i = 1; i < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag > 0.0) v *= std::conj(v[best]) / best_mag;
}

struct EigenPair {
    Eigen::VectorXcd ground;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

// Smallest two eigenvalues of the Hermitian PSD normal matrix via inverse
// power iteration, second vector deflated against the first. Deterministic
// start vectors for reproducibility. A tiny positive diagonal shift keeps the
// factorization's smallest pivot above the solver's rank-detection threshold
// (a rank-deficient solve would annihilate the near-null component we are
// after); a uniform shift leaves the eigenvectors unchanged.
EigenPair smallest_pair(Eigen::MatrixXcd K) {
    const int d = int(K.rows());
    K = 0.5 * (K + K.adjoint().eval());  // enforce exact Hermiticity

    const double eps = 1e-12 * (1.0 + K.trace().real() / d);
    const Eigen::MatrixXcd shifted = K + eps * Eigen::MatrixXcd::Identity(d, d);
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(shifted);
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(d, cd(1.0 / std::sqrt(double(d)), 0.0));
    for (int it = 0; it < kPowerIterations; ++it) {
        Eigen::VectorXcd next = ldlt.solve(v);
        const double n = next.norm();
        if (!std::isfinite(n) || n == 0.0)
            throw std::runtime_error("joint_eigenstate: inverse power iteration degenerated");
        v = next / n;
    }

    EigenPair out;
    out.ground = v;
    out.lambda1 = std::max(0.0, (v.adjoint() * K * v)(0, 0).real());

    Eigen::VectorXcd w(d);
    for (int i = 0; i < d; ++i) w[i] = cd((i % 2 == 0) ? 1.0 : -1.0, 0.0);
    w /= w.norm();
    for (int it = 0; it < kPowerIterations; ++it) {
        w -= v * (v.adjoint() * w)(0, 0);
        Eigen::VectorXcd next = ldlt.solve(w);
        next -= v * (v.adjoint() * next)(0, 0);
        const double n = next.norm();
        if (!std::isfinite(n) || n == 0.0)
            throw std::runtime_error("joint_eigenstate: deflated iteration degenerated");
        w = next / n;
    }
    out.lambda2 = std::max(0.0, (w.adjoint() * K * w)(0, 0).real());
    return out;
}

}  // namespace

OracleResult joint_eigenstate(const CanonicalParams& p, cd beta1, cd beta2,
                              const FockCutoff& cutoff, double residual_threshold) {
    require_validated(p, "joint_eigenstate");
    const TransformedModes modes = build_transformed_modes(p, cutoff);
    const FockOperator id = identity_op(cutoff);
    const FockOperator m1 = modes.b1 - beta1 * id;
    const FockOperator m2 = modes.b2 - beta2 * id;
    const FockOperator k_op = adjoint(m1) * m1 + adjoint(m2) * m2;

    const EigenPair pair = smallest_pair(Eigen::MatrixXcd(k_op.mat));

    FockState psi{pair.ground, cutoff};
    psi.amps /= psi.amps.norm();
    const double r1 = apply(m1, psi).norm();
    const double r2 = apply(m2, psi).norm();
    if (std::max(r1, r2) > residual_threshold) {
        throw convergence_error(
            "joint_eigenstate: eigen-equation residual exceeds the threshold; the truncation "
            "is too small for this parameter set",
            std::max(r1, r2));
    }
    const double sigma_ratio =
        std::sqrt(pair.lambda2 / std::max(pair.lambda1, 1e-300));
    if (sigma_ratio < kSeparationFactor) {
        throw non_unique_state_error(
            "joint_eigenstate: smallest singular value is not well separated (ratio " +
            std::to_string(sigma_ratio) + " < 10); the state is not unique at this truncation");
    }

    fix_phase(psi.amps);
    OracleResult out;
    out.state = std::move(psi);
    out.residual1 = r1;
    out.residual2 = r2;
    out.route = OracleRoute::JointEigen;
    out.fidelity_vs_other_route = 1.0;
    return out;
}

FockOperator cubic_construction_exponent(const CanonicalParams& p, const FockCutoff& cutoff) {
    if (p.nonlinearity_order != 2)
        throw std::invalid_argument(
            "cubic_construction_exponent: only the quadratic nonlinearity is supported");
    const cd d = delta(p);
    auto [a1, a2] = make_mode_operators(cutoff);
    const FockOperator at1d = std::exp(cd(0.0, p.theta1)) * adjoint(a1);  // rotated a1+
    const FockOperator at2 = std::exp(cd(0.0, -p.theta2)) * a2;          // rotated a2
    const FockOperator binomial = at1d * at1d * at1d + 3.0 * (at1d * at1d * at2) +
                                  3.0 * (at1d * (at2 * at2)) + at2 * at2 * at2;
    const FockOperator x = (-d / (2.0 * std::sqrt(2.0))) * binomial;
    return x - adjoint(x);
}

OracleResult unitary_construction(const CanonicalParams& p, cd beta1, cd beta2,
                                  const FockCutoff& cutoff, double residual_threshold) {
    if (p.nonlinearity_order != 2)
        throw std::invalid_argument(
            "unitary_construction: only the quadratic nonlinearity is supported");
    require_validated(p, "unitary_construction");

    const double mu = std::cosh(p.r);
    const cd nu = std::sinh(p.r) * std::exp(cd(0.0, p.phi));
    auto [a1, a2] = make_mode_operators(cutoff);

    // Two-mode squeeze of the vacuum.
    const cd zeta = -p.r * std::exp(cd(0.0, p.phi));
    const FockOperator squeeze = zeta * (adjoint(a1) * adjoint(a2)) - std::conj(zeta) * (a1 * a2);
    FockState psi = exp_apply(squeeze, vacuum_state(cutoff), kExpTol);

    // Displacements moving the joint eigenvalues to (beta1, beta2).
    const cd alpha1 = mu * beta1 - nu * std::conj(beta2);
    const cd alpha2 = mu * beta2 - nu * std::conj(beta1);
    const FockOperator displace = alpha1 * adjoint(a1) - std::conj(alpha1) * a1 +
                                  alpha2 * adjoint(a2) - std::conj(alpha2) * a2;
    psi = exp_apply(displace, psi, kExpTol);

    // Cubic compensation in the collective rotated mode.
    psi = exp_apply(cubic_construction_exponent(p, cutoff), psi, kExpTol);
    psi.amps /= psi.amps.norm();

    const TransformedModes modes = build_transformed_modes(p, cutoff);
    const FockOperator id = identity_op(cutoff);
    const double r1 = apply(modes.b1 - beta1 * id, psi).norm();
    const double r2 = apply(modes.b2 - beta2 * id, psi).norm();

    const OracleResult eigen = joint_eigenstate(p, beta1, beta2, cutoff, residual_threshold);
    const double fidelity = std::abs((eigen.state.amps.adjoint() * psi.amps)(0, 0));
    if (fidelity < kFidelityFloor) {
        throw convention_mismatch_error(
            "unitary_construction: fidelity " + std::to_string(fidelity) +
            " against the eigenproblem route is below 0.999; sign/phase convention mismatch");
    }

    fix_phase(psi.amps);
    OracleResult out;
    out.state = std::move(psi);
    out.residual1 = r1;
    out.residual2 = r2;
    out.route = OracleRoute::UnitaryConstruction;
    out.fidelity_vs_other_route = fidelity;
    return out;
}

double compare_pnd(const OracleResult& o, const PNDGrid& g) {
    const PNDGrid og = pnd_of_state(o.state);
    const int n = std::min(og.n_max, g.n_max);
    double diff = 0.0;
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n2 <= n; ++n2)
            diff = std::max(diff, std::abs(og.at(n1, n2) - g.at(n1, n2)));
    return diff;
}

}  // namespace hempss
