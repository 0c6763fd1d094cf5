#include "hempss/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace hempss {

namespace {

using std::complex;

complex<double> polar1(double angle) { return {std::cos(angle), std::sin(angle)}; }

void require_order_two(const CanonicalParams& p, const char* who) {
    if (p.nonlinearity_order != 2)
        throw std::domain_error(std::string(who) +
                                ": closed-form coefficients exist for nonlinearity order 2 only");
}

void require_equal_moduli(const CanonicalParams& p, const char* who) {
    if (std::abs(p.chi_mod - p.gamma_mod) > 1e-12 * std::max(1.0, p.gamma_mod))
        throw std::domain_error(std::string(who) + ": requires equal moduli |chi| = |gamma|");
}

}  // namespace

TransformedModes build_transformed_modes(const CanonicalParams& p, const FockCutoff& cutoff,
                                         double tol) {
    const ValidationReport rep = validate(p, tol);
    if (!rep.pass)
        throw std::domain_error(
            "build_transformed_modes: parameters are not canonical (constraint residual " +
            std::to_string(rep.constraint_residual) + ", imaginary residual " +
            std::to_string(rep.imaginary_residual) + ")");
    const int n = p.nonlinearity_order;
    const int min_cut = std::min(cutoff.n1_max, cutoff.n2_max);
    if (2 * n + 2 > min_cut)
        throw std::invalid_argument(
            "build_transformed_modes: cutoff too small for nonlinearity order (need 2*order+2 <= "
            "min per-mode cutoff)");

    auto [a1, a2] = make_mode_operators(cutoff);
    const auto [mu, nu] = linear_coeffs(p);
    const complex<double> gamma = p.gamma_mod * polar1(p.delta1);
    const complex<double> chi = p.chi_mod * polar1(p.delta2);

    // Z = (e^{-i theta2} a2 + e^{i theta1} a1^dag) / sqrt(2)
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    FockOperator z = inv_sqrt2 * (polar1(-p.theta2) * a2 + polar1(p.theta1) * adjoint(a1));
    FockOperator zn = z;
    for (int k = 1; k < n; ++k) zn = zn * z;
    FockOperator zdn = adjoint(zn);

    TransformedModes m{
        mu * a1 + nu * adjoint(a2) + gamma * zn,
        mu * a2 + nu * adjoint(a1) + chi * zdn,
    };
    return m;
}

HamiltonianCoefficients generic_coefficients(const CanonicalParams& p) {
    require_order_two(p, "generic_coefficients");
    require_equal_moduli(p, "generic_coefficients");
    const auto [mu, nu] = linear_coeffs(p);
    const double g = p.gamma_mod;
    const double g2 = g * g;
    const double t1 = p.theta1, t2 = p.theta2, d1 = p.delta1, d2 = p.delta2;

    HamiltonianCoefficients c;
    c.A0 = g2 + 2.0 * std::norm(nu);
    c.B0 = std::norm(mu) + std::norm(nu) + 2.0 * g2;
    c.C0 = 0.5 * g2;
    c.D1 = 2.0 * std::conj(mu) * nu + 2.0 * g2 * polar1(t1 + t2);
    c.D2 = g * polar1(t1) *
           (0.5 * polar1(t1 - d2) * mu + polar1(-(t2 + d2)) * nu + polar1(-(t2 - d1)) * std::conj(mu) +
            0.5 * polar1(t1 + d1) * std::conj(nu));
    c.D2p = g * polar1(t2) *
            (0.5 * polar1(t2 - d1) * mu + polar1(-(t1 + d1)) * nu + polar1(-(t1 - d2)) * std::conj(mu) +
             0.5 * polar1(t2 + d2) * std::conj(nu));
    c.D3 = 0.5 * g * polar1(2.0 * t1) * (polar1(d1) * std::conj(mu) + polar1(-d2) * nu);
    c.D3p = 0.5 * g * polar1(2.0 * t2) * (polar1(d2) * std::conj(mu) + polar1(-d1) * nu);
    c.D4 = 0.5 * g2 * polar1(2.0 * (t1 + t2));
    c.D5 = g2 * polar1(t1 + t2);
    return c;
}

HamiltonianCoefficients specialized_coefficients(const CanonicalParams& p) {
    require_order_two(p, "specialized_coefficients");
    require_equal_moduli(p, "specialized_coefficients");
    const auto branch = detect_branch(p);
    if (!branch || *branch != CanonicalBranch::DeltaZero_ThetaPi)
        throw std::domain_error(
            "specialized_coefficients: simplified forms hold on the branch with "
            "delta1+delta2-phi = 0 and theta1+theta2-phi = pi only");
    const double g = p.gamma_mod;
    const double g2 = g * g;
    const double er = std::exp(p.r);
    const double t1 = p.theta1, t2 = p.theta2, d1 = p.delta1, d2 = p.delta2;

    HamiltonianCoefficients c;
    c.A0 = g2 + 2.0 * std::pow(std::sinh(p.r), 2);
    c.B0 = std::pow(std::cosh(p.r), 2) + std::pow(std::sinh(p.r), 2) + 2.0 * g2;
    c.C0 = 0.5 * g2;
    c.D1 = polar1(p.phi) * (std::sinh(2.0 * p.r) - 2.0 * g2);
    c.D2 = -0.5 * g * er * polar1(2.0 * t1 - d2);
    c.D2p = -0.5 * g * er * polar1(2.0 * t2 - d1);
    c.D3 = 0.5 * g * er * polar1(2.0 * t1 + d1);
    c.D3p = 0.5 * g * er * polar1(2.0 * t2 + d2);
    c.D4 = 0.5 * g2 * polar1(2.0 * p.phi);
    c.D5 = -g2 * polar1(p.phi);
    return c;
}

FockOperator build_fock_hamiltonian(const HamiltonianCoefficients& c, const FockCutoff& cutoff) {
    if (std::min(cutoff.n1_max, cutoff.n2_max) < 4)
        throw std::invalid_argument("build_fock_hamiltonian: per-mode cutoffs must be >= 4");

    auto [a1, a2] = make_mode_operators(cutoff);
    FockOperator a1d = adjoint(a1);
    FockOperator a2d = adjoint(a2);
    FockOperator n1 = a1d * a1;
    FockOperator n2 = a2d * a2;
    FockOperator id = identity_op(cutoff);

    FockOperator diag = cd(c.A0, 0.0) * id + cd(c.B0, 0.0) * (n1 + n2) +
                        cd(c.C0, 0.0) * (a1d * a1d * a1 * a1 + a2d * a2d * a2 * a2 +
                                         4.0 * (n1 * n2));

    FockOperator bracket = c.D1 * (a1d * a2d) + c.D2 * (a1d * a1d * a2) +
                           c.D2p * (a1 * a2d * a2d) + c.D3 * (a1d * a1d * a1d) +
                           c.D3p * (a2d * a2d * a2d) + c.D4 * (a1d * a1d * a2d * a2d) +
                           c.D5 * (a1d * a1d * a1 * a2d + a1d * a2d * a2d * a2);

    return diag + bracket + adjoint(bracket);
}

}  // namespace hempss
